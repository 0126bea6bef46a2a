#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rodcut/geometry.hpp"
#include "rodcut/mixed_graph.hpp"

namespace rodcut {

/// Public name of a vertex: the rank-th crossing (1-based, by increasing
/// parameter) along segment `segment_id`.
struct VertexId {
  SegmentId segment_id;
  std::size_t rank = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

inline std::string to_string(const VertexId& v) { return v.segment_id + "_" + std::to_string(v.rank); }

enum class Side : std::uint8_t { a, b };

/// Crossing table plus the two-way mapping between crossings and vertices.
/// Dense vertex order is (segment id, rank), which is also the lexicographic
/// order used for tie-breaking.
class CrossingIndex {
 public:
  CrossingIndex() = default;

  CrossingIndex(std::vector<SegmentId> segment_ids, std::vector<Crossing> crossings)
      : segment_ids_(std::move(segment_ids)), crossings_(std::move(crossings)) {
    std::sort(segment_ids_.begin(), segment_ids_.end());
    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      along_[crossings_[i].seg_a].push_back(i);
      along_[crossings_[i].seg_b].push_back(i);
    }
    crossing_vertices_.resize(crossings_.size());
    for (const SegmentId& id : segment_ids_) {
      auto it = along_.find(id);
      if (it == along_.end()) continue;
      auto& list = it->second;
      std::sort(list.begin(), list.end(), [&](std::size_t l, std::size_t r) {
        return param_on(crossings_[l], id) < param_on(crossings_[r], id);
      });
      for (std::size_t r = 0; r < list.size(); ++r) {
        const Vertex v = static_cast<Vertex>(names_.size());
        const Side side = crossings_[list[r]].seg_a == id ? Side::a : Side::b;
        names_.push_back({id, r + 1});
        lookup_.emplace(names_.back(), v);
        vertex_crossing_.emplace_back(list[r], side);
        (side == Side::a ? crossing_vertices_[list[r]].first : crossing_vertices_[list[r]].second) = v;
      }
    }
  }

  std::span<const SegmentId> segment_ids() const noexcept { return segment_ids_; }
  std::span<const Crossing> crossings() const noexcept { return crossings_; }
  std::size_t vertex_count() const noexcept { return names_.size(); }

  /// Crossing indices along a segment, sorted by parameter (empty if none).
  std::span<const std::size_t> crossings_on(const SegmentId& id) const {
    auto it = along_.find(id);
    if (it == along_.end()) return {};
    return it->second;
  }

  const VertexId& name(Vertex v) const { return names_.at(v); }

  Vertex vertex(const VertexId& id) const {
    auto it = lookup_.find(id);
    if (it == lookup_.end()) throw std::out_of_range("unknown vertex " + to_string(id));
    return it->second;
  }

  bool contains(const VertexId& id) const { return lookup_.contains(id); }

  /// (crossing index, side of that crossing) for a vertex.
  std::pair<std::size_t, Side> crossing_of(Vertex v) const { return vertex_crossing_.at(v); }

  /// Vertices of a crossing: (on seg_a, on seg_b).
  std::pair<Vertex, Vertex> vertices_of(std::size_t crossing) const { return crossing_vertices_.at(crossing); }

  const Rational& param(Vertex v) const {
    auto [c, side] = crossing_of(v);
    return side == Side::a ? crossings_[c].param_a : crossings_[c].param_b;
  }

  const Rational& z(Vertex v) const {
    auto [c, side] = crossing_of(v);
    return side == Side::a ? crossings_[c].z_a : crossings_[c].z_b;
  }

  const Point2& point(Vertex v) const { return crossings_[crossing_of(v).first].point; }

 private:
  static const Rational& param_on(const Crossing& c, const SegmentId& id) {
    return c.seg_a == id ? c.param_a : c.param_b;
  }

  std::vector<SegmentId> segment_ids_;
  std::vector<Crossing> crossings_;
  std::map<SegmentId, std::vector<std::size_t>> along_;
  std::vector<VertexId> names_;
  std::map<VertexId, Vertex> lookup_;
  std::vector<std::pair<std::size_t, Side>> vertex_crossing_;
  std::vector<std::pair<Vertex, Vertex>> crossing_vertices_;
};

struct DepthGraph {
  MixedGraph graph;
  CrossingIndex index;
};

/// Builds G_S from an already validated crossing list: one vertex per
/// (segment, crossing) incidence, a path of edges along each segment in rank
/// order, and one arc per crossing from the upper vertex to the lower one.
inline DepthGraph build_depth_graph(std::vector<SegmentId> segment_ids, std::vector<Crossing> crossings) {
  DepthGraph out{MixedGraph{}, CrossingIndex(std::move(segment_ids), std::move(crossings))};
  const CrossingIndex& index = out.index;
  out.graph = MixedGraph(index.vertex_count());
  for (const SegmentId& id : index.segment_ids()) {
    const std::size_t count = index.crossings_on(id).size();
    for (std::size_t r = 1; r < count; ++r) out.graph.add_edge(index.vertex({id, r}), index.vertex({id, r + 1}));
  }
  for (std::size_t i = 0; i < index.crossings().size(); ++i) {
    auto [va, vb] = index.vertices_of(i);
    if (index.crossings()[i].upper == index.crossings()[i].seg_a)
      out.graph.add_arc(va, vb);
    else
      out.graph.add_arc(vb, va);
  }
  return out;
}

inline DepthGraph build_depth_graph(std::span<const Segment3> segments) {
  std::vector<SegmentId> ids;
  ids.reserve(segments.size());
  for (const auto& s : segments) ids.push_back(s.id());
  return build_depth_graph(std::move(ids), all_crossings(segments));
}

struct CutPoint {
  Point2 point;
  Rational z;
  friend bool operator==(const CutPoint&, const CutPoint&) = default;
};

/// Where to cut the vertex's own segment: the crossing's xy-point at that
/// segment's height.
inline CutPoint vertex_to_cut_point(const VertexId& v, const CrossingIndex& index) {
  const Vertex dense = index.vertex(v);
  return {index.point(dense), index.z(dense)};
}

}  // namespace rodcut
