#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rodcut {

/// Dense vertex index. Public names (segment, rank) live in CrossingIndex.
using Vertex = std::uint32_t;

/// Graph with undirected edges and directed arcs, both stored as multisets
/// (repeated entries are parallel instances). Self-loops are allowed.
class MixedGraph {
 public:
  using Pair = std::pair<Vertex, Vertex>;

  MixedGraph() = default;
  explicit MixedGraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Pair>& edges() const noexcept { return edges_; }
  const std::vector<Pair>& arcs() const noexcept { return arcs_; }
  std::size_t connection_count() const noexcept { return edges_.size() + arcs_.size(); }

  Vertex add_vertex() { return static_cast<Vertex>(vertex_count_++); }

  void add_edge(Vertex u, Vertex v) {
    check(u), check(v);
    edges_.emplace_back(u, v);
  }

  /// Arc from tail to head.
  void add_arc(Vertex tail, Vertex head) {
    check(tail), check(head);
    arcs_.emplace_back(tail, head);
  }

  /// Number of edge and arc instances touching v; a self-loop counts once.
  std::size_t total_degree(Vertex v) const {
    std::size_t d = 0;
    for (auto [a, b] : edges_) d += (a == v || b == v);
    for (auto [a, b] : arcs_) d += (a == v || b == v);
    return d;
  }

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

 private:
  void check(Vertex v) const {
    if (v >= vertex_count_) throw std::out_of_range("vertex " + std::to_string(v) + " not in graph");
  }

  std::size_t vertex_count_ = 0;
  std::vector<Pair> edges_;
  std::vector<Pair> arcs_;
};

/// G - U. Vertex numbering is kept; removed vertices stay as isolated
/// vertices, which cannot lie on any cycle.
inline MixedGraph remove_vertices(const MixedGraph& g, std::span<const Vertex> removed) {
  std::vector<char> gone(g.vertex_count(), 0);
  for (Vertex v : removed) {
    if (v >= g.vertex_count()) throw std::out_of_range("vertex " + std::to_string(v) + " not in graph");
    gone[v] = 1;
  }
  MixedGraph out(g.vertex_count());
  for (auto [a, b] : g.edges())
    if (!gone[a] && !gone[b]) out.add_edge(a, b);
  for (auto [a, b] : g.arcs())
    if (!gone[a] && !gone[b]) out.add_arc(a, b);
  return out;
}

struct Connection {
  enum class Kind : std::uint8_t { edge, arc };
  Kind kind;
  std::size_t index;
  friend bool operator==(const Connection&, const Connection&) = default;
};

/// Closed walk vertices[0] -> vertices[1] -> ... -> vertices[0], where
/// via[i] joins vertices[i] to vertices[(i + 1) % size].
struct MixedCycle {
  std::vector<Vertex> vertices;
  std::vector<Connection> via;
};

/// True iff `c` is a cycle of `g`: distinct vertices, distinct connection
/// instances, arcs traversed tail to head.
inline bool is_valid_cycle(const MixedGraph& g, const MixedCycle& c) {
  const std::size_t len = c.vertices.size();
  if (len == 0 || c.via.size() != len) return false;
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex v : c.vertices) {
    if (v >= g.vertex_count() || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (c.via[i] == c.via[j]) return false;
    const Vertex from = c.vertices[i], to = c.vertices[(i + 1) % len];
    const Connection& k = c.via[i];
    if (k.kind == Connection::Kind::edge) {
      if (k.index >= g.edges().size()) return false;
      auto [a, b] = g.edges()[k.index];
      if (!((a == from && b == to) || (a == to && b == from))) return false;
    } else {
      if (k.index >= g.arcs().size()) return false;
      if (g.arcs()[k.index] != MixedGraph::Pair{from, to}) return false;
    }
  }
  return true;
}

namespace detail {

struct Step {
  Vertex to;
  Connection via;
};

/// Outgoing traversals per vertex: edges both ways (edge order), then arcs forward.
inline std::vector<std::vector<Step>> traversals(const MixedGraph& g) {
  std::vector<std::vector<Step>> out(g.vertex_count());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [a, b] = g.edges()[i];
    out[a].push_back({b, {Connection::Kind::edge, i}});
    if (a != b) out[b].push_back({a, {Connection::Kind::edge, i}});
  }
  for (std::size_t i = 0; i < g.arcs().size(); ++i) {
    auto [a, b] = g.arcs()[i];
    out[a].push_back({b, {Connection::Kind::arc, i}});
  }
  return out;
}

/// BFS path from `from` to `to` that avoids connection `banned`; returns the
/// steps taken, or nullopt.
inline std::optional<std::vector<Step>> shortest_path(const std::vector<std::vector<Step>>& adj, Vertex from,
                                                      Vertex to, std::optional<Connection> banned = {}) {
  std::vector<std::optional<Step>> parent(adj.size());
  std::vector<Vertex> came_from(adj.size());
  std::vector<char> seen(adj.size(), 0);
  std::queue<Vertex> frontier;
  seen[from] = 1;
  frontier.push(from);
  while (!frontier.empty()) {
    const Vertex x = frontier.front();
    frontier.pop();
    if (x == to) break;
    for (const Step& s : adj[x]) {
      if (banned && s.via == *banned) continue;
      if (seen[s.to]) continue;
      seen[s.to] = 1;
      parent[s.to] = s;
      came_from[s.to] = x;
      frontier.push(s.to);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<Step> path;
  for (Vertex x = to; x != from; x = came_from[x]) path.push_back(*parent[x]);
  return std::vector<Step>(path.rbegin(), path.rend());
}

}  // namespace detail

/// A witness cycle, or nullopt iff g is acyclic.
///
/// Self-loops are checked first, then cycles of the undirected part (with
/// multiplicity), then for each arc (u, v) whether u is reachable from v when
/// edges may be walked either way and arcs only forward.
inline std::optional<MixedCycle> find_mixed_cycle(const MixedGraph& g) {
  using Kind = Connection::Kind;
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    if (g.edges()[i].first == g.edges()[i].second) return MixedCycle{{g.edges()[i].first}, {{Kind::edge, i}}};
  for (std::size_t i = 0; i < g.arcs().size(); ++i)
    if (g.arcs()[i].first == g.arcs()[i].second) return MixedCycle{{g.arcs()[i].first}, {{Kind::arc, i}}};

  // Undirected part: grow a forest edge by edge; the first edge closing a
  // loop yields the cycle through the forest path.
  std::vector<Vertex> root(g.vertex_count());
  std::iota(root.begin(), root.end(), Vertex{0});
  auto find = [&](Vertex v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  MixedGraph forest(g.vertex_count());
  std::vector<std::size_t> forest_origin;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [a, b] = g.edges()[i];
    if (find(a) != find(b)) {
      root[find(a)] = find(b);
      forest.add_edge(a, b);
      forest_origin.push_back(i);
      continue;
    }
    auto path = detail::shortest_path(detail::traversals(forest), b, a);
    MixedCycle c{{a, b}, {{Kind::edge, i}}};
    for (std::size_t k = 0; k < path->size(); ++k) {
      if (k + 1 < path->size()) c.vertices.push_back((*path)[k].to);
      c.via.push_back({Kind::edge, forest_origin[(*path)[k].via.index]});
    }
    return c;
  }

  const auto adj = detail::traversals(g);
  for (std::size_t i = 0; i < g.arcs().size(); ++i) {
    auto [u, v] = g.arcs()[i];
    auto path = detail::shortest_path(adj, v, u);
    if (!path) continue;
    MixedCycle c{{u, v}, {{Kind::arc, i}}};
    for (std::size_t k = 0; k < path->size(); ++k) {
      if (k + 1 < path->size()) c.vertices.push_back((*path)[k].to);
      c.via.push_back((*path)[k].via);
    }
    return c;
  }
  return std::nullopt;
}

inline bool is_acyclic(const MixedGraph& g) { return !find_mixed_cycle(g).has_value(); }

}  // namespace rodcut
