#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rodcut/depth_graph.hpp"
#include "rodcut/geometry.hpp"

namespace rodcut {

/// A cut of segment `segment_id` at its rank-th crossing. `point` and `z`
/// are derived from the crossing table.
struct Cut {
  SegmentId segment_id;
  std::size_t rank = 0;
  Point2 point;
  Rational z;

  VertexId vertex() const { return {segment_id, rank}; }
  friend bool operator==(const Cut&, const Cut&) = default;
};

/// Cuts sorted by (segment id, rank), without duplicates.
class CutSet {
 public:
  CutSet() = default;
  explicit CutSet(std::vector<Cut> cuts) : cuts_(std::move(cuts)) {
    std::sort(cuts_.begin(), cuts_.end(), [](const Cut& l, const Cut& r) { return l.vertex() < r.vertex(); });
    for (std::size_t i = 1; i < cuts_.size(); ++i)
      if (cuts_[i].vertex() == cuts_[i - 1].vertex())
        throw std::invalid_argument("duplicate cut " + to_string(cuts_[i].vertex()));
  }

  std::size_t size() const noexcept { return cuts_.size(); }
  bool empty() const noexcept { return cuts_.empty(); }
  auto begin() const noexcept { return cuts_.begin(); }
  auto end() const noexcept { return cuts_.end(); }
  const Cut& operator[](std::size_t i) const { return cuts_[i]; }

  friend bool operator==(const CutSet&, const CutSet&) = default;

 private:
  std::vector<Cut> cuts_;
};

/// Piece of a cut segment: parameters [t_lo, t_hi] of its parent.
struct SubSegment {
  SegmentId parent_id;
  Rational t_lo, t_hi;
  friend bool operator==(const SubSegment&, const SubSegment&) = default;
};

inline Cut make_cut(const VertexId& v, const CrossingIndex& index) {
  const CutPoint at = vertex_to_cut_point(v, index);
  return {v.segment_id, v.rank, at.point, at.z};
}

inline CutSet fvs_to_cuts(std::span<const Vertex> fvs, const CrossingIndex& index) {
  std::vector<Cut> cuts;
  cuts.reserve(fvs.size());
  for (Vertex v : fvs) {
    if (v >= index.vertex_count()) throw std::out_of_range("unknown vertex " + std::to_string(v));
    cuts.push_back(make_cut(index.name(v), index));
  }
  return CutSet(std::move(cuts));
}

/// Cuts already sitting at crossings map one-to-one onto vertices.
inline std::vector<Vertex> cuts_to_fvs(const CutSet& cuts, const CrossingIndex& index) {
  std::vector<Vertex> out;
  for (const Cut& c : cuts) out.push_back(index.vertex(c.vertex()));
  std::sort(out.begin(), out.end());
  return out;
}

/// A cut given only as a point in space on a named segment.
struct RawCut {
  SegmentId segment_id;
  Point3 point;
};

/// Parameter of `point` along `s`; throws if the point is not on the segment.
inline Rational parameter_of(const Segment3& s, const Point3& point) {
  const Rational dx = s.q().x - s.p().x, dy = s.q().y - s.p().y, dz = s.q().z - s.p().z;
  const Rational t = ((point.x - s.p().x) * dx + (point.y - s.p().y) * dy) / (dx * dx + dy * dy);
  const Point3 back{s.p().x + t * dx, s.p().y + t * dy, s.p().z + t * dz};
  if (t < 0 || t > 1 || back != point) throw std::invalid_argument("cut point is not on segment " + s.id());
  return t;
}

/// Maps arbitrary cut points to vertices. A cut off any crossing slides
/// towards q to the next crossing; with no crossing ahead it is dropped.
inline std::vector<Vertex> cuts_to_fvs(std::span<const RawCut> cuts, std::span<const Segment3> segments,
                                       const CrossingIndex& index) {
  std::vector<Vertex> out;
  for (const RawCut& cut : cuts) {
    auto s = std::find_if(segments.begin(), segments.end(), [&](const Segment3& x) { return x.id() == cut.segment_id; });
    if (s == segments.end()) throw std::invalid_argument("cut names unknown segment " + cut.segment_id);
    const Rational t = parameter_of(*s, cut.point);
    const auto along = index.crossings_on(cut.segment_id);
    for (std::size_t r = 0; r < along.size(); ++r) {
      const Vertex v = index.vertex({cut.segment_id, r + 1});
      if (index.param(v) >= t) {
        out.push_back(v);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline const Rational& cut_param(const Cut& c, const CrossingIndex& index) {
  if (c.rank == 0 || c.rank > index.crossings_on(c.segment_id).size())
    throw std::out_of_range("cut rank " + std::to_string(c.rank) + " out of range on segment " + c.segment_id);
  return index.param(index.vertex(c.vertex()));
}

}  // namespace detail

/// Pieces of every segment (in segment id order) after cutting.
inline std::vector<SubSegment> apply_cuts(const CrossingIndex& index, const CutSet& cuts) {
  std::vector<SubSegment> out;
  for (const SegmentId& id : index.segment_ids()) {
    Rational lo = 0;
    for (const Cut& c : cuts) {
      if (c.segment_id != id) continue;
      const Rational& t = detail::cut_param(c, index);
      out.push_back({id, lo, t});
      lo = t;
    }
    out.push_back({id, lo, 1});
  }
  for (const Cut& c : cuts)
    if (!std::binary_search(index.segment_ids().begin(), index.segment_ids().end(), c.segment_id))
      throw std::out_of_range("cut names unknown segment " + c.segment_id);
  return out;
}

struct AcyclicReport {
  bool acyclic = true;
  /// Number of crossings still constraining a pair of pieces.
  std::size_t constraints = 0;
  /// On failure: pieces p0 ≻ p1 ≻ ... ≻ p0 (closing piece not repeated).
  std::vector<SubSegment> witness;
};

/// Depth relation among the pieces: a crossing constrains two pieces only if
/// it lies strictly inside both. Reports whether that relation is acyclic.
inline AcyclicReport verify_acyclic(const CrossingIndex& index, const CutSet& cuts) {
  const std::vector<SubSegment> pieces = apply_cuts(index, cuts);
  auto piece_at = [&](const SegmentId& id, const Rational& t) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (pieces[i].parent_id == id && pieces[i].t_lo < t && t < pieces[i].t_hi) return i;
    return std::nullopt;
  };

  std::vector<std::vector<std::size_t>> down(pieces.size());
  std::size_t constraints = 0;
  for (const Crossing& c : index.crossings()) {
    auto pa = piece_at(c.seg_a, c.param_a);
    auto pb = piece_at(c.seg_b, c.param_b);
    if (!pa || !pb) continue;
    ++constraints;
    if (c.upper == c.seg_a)
      down[*pa].push_back(*pb);
    else
      down[*pb].push_back(*pa);
  }
  for (auto& d : down) std::sort(d.begin(), d.end());

  // Iterative DFS with colours; a grey successor closes a cycle.
  enum : std::uint8_t { white, grey, black };
  std::vector<std::uint8_t> colour(pieces.size(), white);
  std::vector<std::size_t> parent(pieces.size());
  for (std::size_t root = 0; root < pieces.size(); ++root) {
    if (colour[root] != white) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = grey;
    while (!stack.empty()) {
      auto& [x, next] = stack.back();
      if (next == down[x].size()) {
        colour[x] = black;
        stack.pop_back();
        continue;
      }
      const std::size_t y = down[x][next++];
      if (colour[y] == grey) {
        std::vector<std::size_t> loop{y};
        for (std::size_t z = x; z != y; z = parent[z]) loop.push_back(z);
        std::reverse(loop.begin() + 1, loop.end());
        std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
        AcyclicReport report{false, constraints, {}};
        for (auto i : loop) report.witness.push_back(pieces[i]);
        return report;
      }
      if (colour[y] == white) {
        colour[y] = grey;
        parent[y] = x;
        stack.emplace_back(y, 0);
      }
    }
  }
  return {true, constraints, {}};
}

/// Every crossing cut on both of its segments.
inline CutSet cut_everything(const CrossingIndex& index) {
  std::vector<Cut> cuts;
  for (Vertex v = 0; v < index.vertex_count(); ++v) cuts.push_back(make_cut(index.name(v), index));
  return CutSet(std::move(cuts));
}

/// Reference solver: tries sets of crossing-cuts by increasing size (each
/// crossing offers a cut on either of its segments) and returns the first
/// set that verify_acyclic accepts.
inline std::optional<CutSet> min_cuts_brute_force(const CrossingIndex& index, int k_max,
                                                  std::size_t max_candidates = 20) {
  std::vector<VertexId> candidates;
  for (const SegmentId& id : index.segment_ids())
    for (std::size_t r = 1; r <= index.crossings_on(id).size(); ++r) candidates.push_back({id, r});
  if (candidates.size() > max_candidates)
    throw std::length_error(std::to_string(candidates.size()) + " candidate cuts exceed the limit of " +
                            std::to_string(max_candidates));

  const std::size_t n = candidates.size();
  for (std::size_t size = 0; size <= n && static_cast<int>(size) <= k_max; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<Cut> cuts;
      for (auto i : pick) cuts.push_back(make_cut(candidates[i], index));
      CutSet set(std::move(cuts));
      if (verify_acyclic(index, set).acyclic) return set;
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace rodcut
