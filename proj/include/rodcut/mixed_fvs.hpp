#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rodcut/mixed_graph.hpp"

namespace rodcut {

/// The search ran out of its node budget. Never an approximate answer.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  std::uint64_t node_budget = 10'000'000;
  unsigned threads = 1;
};

/// A feedback vertex set (sorted), or nullopt for "no solution within k".
struct FvsResult {
  std::optional<std::vector<Vertex>> solution;
  bool found() const noexcept { return solution.has_value(); }
};

/// Reference solver: tries every vertex subset by increasing size, subsets of
/// one size in lexicographic order, and returns the first one that leaves
/// the graph acyclic.
inline FvsResult fvs_brute_force(const MixedGraph& g, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const std::size_t n = g.vertex_count();
  for (std::size_t size = 0; size <= static_cast<std::size_t>(k) && size <= n; ++size) {
    std::vector<Vertex> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<Vertex>(i);
    while (true) {
      if (is_acyclic(remove_vertices(g, pick))) return {pick};
      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

namespace detail {

/// Mutable working copy used by the branching search. Links are never erased,
/// only marked dead, so copying a node is a flat vector copy.
class FvsWork {
 public:
  struct Link {
    Vertex a, b;  // arcs go a -> b
    bool directed;
    bool alive;
  };

  FvsWork(const MixedGraph& g, const std::vector<char>& keep, const std::vector<Vertex>& removed)
      : alive_(g.vertex_count(), 1), keep_(keep), incident_(g.vertex_count()) {
    for (auto [a, b] : g.edges()) add_link(a, b, false);
    for (auto [a, b] : g.arcs()) add_link(a, b, true);
    for (Vertex v : removed) remove(v);
  }

  std::size_t size() const noexcept { return alive_.size(); }
  bool alive(Vertex v) const { return alive_[v]; }
  bool keep(Vertex v) const { return keep_[v]; }
  void set_keep(Vertex v) { keep_[v] = 1; }
  const std::vector<Link>& links() const noexcept { return links_; }

  void remove(Vertex v) {
    if (!alive_[v]) return;
    alive_[v] = 0;
    for (auto id : incident_[v]) links_[id].alive = false;
    incident_[v].clear();
  }

  /// Applies the reduction rules to a fixpoint. Returns false if they prove
  /// that no solution within `budget` exists.
  bool reduce(int& budget) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Vertex v = 0; v < alive_.size(); ++v) {
        if (!alive_[v]) continue;
        compact(v);
        const auto& inc = incident_[v];

        bool loop = false, has_in = false, has_out = false;
        for (auto id : inc) {
          const Link& l = links_[id];
          if (l.a == l.b) loop = true;
          if (!l.directed) has_in = has_out = true;
          else if (l.a == v) has_out = true;
          else has_in = true;
        }
        if (loop) {
          if (keep_[v]) return false;
          remove(v);
          --budget;
          changed = true;
          continue;
        }
        if (inc.size() <= 1 || !has_in || !has_out) {
          remove(v);
          changed = true;
          continue;
        }
        if (inc.size() == 2 && bypass(v)) changed = true;
      }
    }
    return budget >= 0;
  }

  /// Shortest cycle as a vertex list, or empty if acyclic. Skips vertices
  /// flagged in `ignore`.
  std::vector<Vertex> shortest_cycle(const std::vector<char>* ignore = nullptr) const {
    auto usable = [&](Vertex v) { return alive_[v] && !(ignore && (*ignore)[v]); };
    std::vector<Vertex> best;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (std::size_t id = 0; id < links_.size(); ++id) {
      const Link& l = links_[id];
      if (!l.alive || !usable(l.a) || !usable(l.b)) continue;
      if (l.a == l.b) return {l.a};
      if (best_len <= 2) continue;
      // Close the link a -> b with a path b -> a; for edges one orientation
      // suffices since the path may be reversed.
      auto path = path_avoiding(l.b, l.a, id, best_len - 1, usable);
      if (path.empty()) continue;
      best_len = path.size();
      best = std::move(path);
      best.insert(best.begin(), l.a);
      best.pop_back();
    }
    return best;
  }

 private:
  void add_link(Vertex a, Vertex b, bool directed) {
    const auto id = static_cast<std::uint32_t>(links_.size());
    links_.push_back({a, b, directed, true});
    incident_[a].push_back(id);
    if (a != b) incident_[b].push_back(id);
  }

  void compact(Vertex v) {
    auto& inc = incident_[v];
    std::erase_if(inc, [&](std::uint32_t id) { return !links_[id].alive; });
  }

  /// Replaces a degree-2 vertex by one connection joining its neighbours,
  /// when every cycle through it maps to a cycle through that connection.
  bool bypass(Vertex v) {
    const Link l1 = links_[incident_[v][0]];
    const Link l2 = links_[incident_[v][1]];
    const Vertex n1 = l1.a == v ? l1.b : l1.a;
    const Vertex n2 = l2.a == v ? l2.b : l2.a;
    // A deletable v may only be dropped if a deletable neighbour can take
    // its place in any solution.
    if (!keep_[v] && keep_[n1] && keep_[n2]) return false;

    Vertex from, to;
    bool directed;
    if (!l1.directed && !l2.directed) {
      from = n1, to = n2, directed = false;
    } else if (l1.directed && l2.directed) {
      // one in, one out (otherwise reduce() already removed v)
      from = l1.b == v ? l1.a : l2.a;
      to = l1.a == v ? l1.b : l2.b;
      directed = true;
    } else {
      const Link& arc = l1.directed ? l1 : l2;
      const Vertex other = l1.directed ? n2 : n1;
      if (arc.a == v) from = other, to = arc.b;
      else from = arc.a, to = other;
      directed = true;
    }
    remove(v);
    add_link(from, to, directed);
    return true;
  }

  template <class Usable>
  std::vector<Vertex> path_avoiding(Vertex from, Vertex to, std::size_t banned, std::size_t max_len,
                                    Usable usable) const {
    // BFS over traversals; returns the vertex sequence from..to, or empty.
    std::vector<Vertex> parent(alive_.size(), std::numeric_limits<Vertex>::max());
    std::vector<std::size_t> depth(alive_.size(), 0);
    std::queue<Vertex> frontier;
    parent[from] = from;
    frontier.push(from);
    while (!frontier.empty()) {
      const Vertex x = frontier.front();
      frontier.pop();
      if (x == to) break;
      if (depth[x] + 1 >= max_len) continue;
      for (auto id : incident_[x]) {
        if (id == banned) continue;
        const Link& l = links_[id];
        if (!l.alive) continue;
        Vertex y;
        if (l.a == x) y = l.b;
        else if (!l.directed) y = l.a;
        else continue;
        if (!usable(y) || parent[y] != std::numeric_limits<Vertex>::max()) continue;
        parent[y] = x;
        depth[y] = depth[x] + 1;
        frontier.push(y);
      }
    }
    if (parent[to] == std::numeric_limits<Vertex>::max()) return {};
    std::vector<Vertex> path;
    for (Vertex x = to; x != from; x = parent[x]) path.push_back(x);
    path.push_back(from);
    return {path.rbegin(), path.rend()};
  }

  std::vector<Link> links_;
  std::vector<char> alive_;
  std::vector<char> keep_;
  std::vector<std::vector<std::uint32_t>> incident_;
};

class FvsSearch {
 public:
  explicit FvsSearch(const SolverOptions& options) : options_(options) {}

  /// Is there a set of at most k deletable vertices hitting every cycle of
  /// g - removed? Vertices flagged in `keep` may not be deleted.
  bool decide(const MixedGraph& g, int k, const std::vector<char>& keep, const std::vector<Vertex>& removed) {
    return search(FvsWork(g, keep, removed), k, 0);
  }

 private:
  void tick() {
    if (++nodes_ > options_.node_budget)
      throw ResourceLimit("node budget of " + std::to_string(options_.node_budget) + " exhausted");
  }

  /// Vertex-disjoint cycles found greedily; each needs its own deletion.
  static int packing_bound(const FvsWork& w, int limit) {
    std::vector<char> used(w.size(), 0);
    int count = 0;
    while (count <= limit) {
      auto cycle = w.shortest_cycle(&used);
      if (cycle.empty()) break;
      ++count;
      for (Vertex v : cycle) used[v] = 1;
    }
    return count;
  }

  bool search(FvsWork w, int k, int depth) {
    tick();
    if (!w.reduce(k)) return false;
    auto cycle = w.shortest_cycle();
    if (cycle.empty()) return true;
    if (k == 0) return false;
    if (packing_bound(w, k) > k) return false;

    // Branch i: cycle[0..i) stay, cycle[i] is deleted.
    std::vector<FvsWork> children;
    for (Vertex v : cycle) {
      if (!w.keep(v)) {
        FvsWork child = w;
        child.remove(v);
        children.push_back(std::move(child));
      }
      w.set_keep(v);
    }

    if (depth == 0 && options_.threads > 1 && children.size() > 1) {
      std::atomic<bool> found{false};
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i; !found && (i = next++) < children.size();)
          if (search(children[i], k - 1, depth + 1)) found = true;
      };
      std::vector<std::future<void>> pool;
      const unsigned n = std::min<unsigned>(options_.threads, static_cast<unsigned>(children.size()));
      for (unsigned t = 0; t < n; ++t) pool.push_back(std::async(std::launch::async, worker));
      for (auto& f : pool) f.get();
      return found;
    }
    for (auto& child : children)
      if (search(std::move(child), k - 1, depth + 1)) return true;
    return false;
  }

  SolverOptions options_;
  std::atomic<std::uint64_t> nodes_{0};
};

inline std::vector<Vertex> lexicographic_least(const MixedGraph& g, int size, FvsSearch& search) {
  std::vector<char> keep(g.vertex_count(), 0);
  std::vector<Vertex> chosen;
  for (Vertex v = 0; v < g.vertex_count() && static_cast<int>(chosen.size()) < size; ++v) {
    chosen.push_back(v);
    if (!search.decide(g, size - static_cast<int>(chosen.size()), keep, chosen)) {
      chosen.pop_back();
      keep[v] = 1;
    }
  }
  return chosen;
}

}  // namespace detail

/// Exact decision: a feedback vertex set of size at most k, or nullopt if
/// none exists. The set returned is the lexicographically least among those
/// of minimum size.
inline FvsResult fvs_decide(const MixedGraph& g, int k, const SolverOptions& options = {}) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  detail::FvsSearch search(options);
  const std::vector<char> keep(g.vertex_count(), 0);
  if (!search.decide(g, k, keep, {})) return {};
  int size = 0;
  while (!search.decide(g, size, keep, {})) ++size;
  return {detail::lexicographic_least(g, size, search)};
}

/// Minimum feedback vertex set, lexicographically least among the minimum ones.
inline std::vector<Vertex> fvs_minimum(const MixedGraph& g, const SolverOptions& options = {}) {
  detail::FvsSearch search(options);
  const std::vector<char> keep(g.vertex_count(), 0);
  int size = 0;
  while (!search.decide(g, size, keep, {})) ++size;
  return detail::lexicographic_least(g, size, search);
}

}  // namespace rodcut
