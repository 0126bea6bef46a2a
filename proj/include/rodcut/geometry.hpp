#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rodcut/rational.hpp"

namespace rodcut {

using SegmentId = std::string;

/// Raised whenever the input violates general position. Carries one
/// human-readable line per violation found.
class DegenerateInput : public std::runtime_error {
 public:
  explicit DegenerateInput(std::vector<std::string> diagnostics)
      : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  static std::string join(const std::vector<std::string>& lines) {
    std::string out = "degenerate input";
    for (const auto& l : lines) out += "\n  " + l;
    return out;
  }
  std::vector<std::string> diagnostics_;
};

struct Point2 {
  Rational x, y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  Rational x, y, z;
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline std::string to_string(const Point2& p) {
  return "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
}

/// A non-vertical rod. Parameter t runs from p (t = 0) to q (t = 1).
class Segment3 {
 public:
  Segment3(SegmentId id, Point3 p, Point3 q) : id_(std::move(id)), p_(std::move(p)), q_(std::move(q)) {
    if (p_.x == q_.x && p_.y == q_.y)
      throw DegenerateInput({"segment " + id_ + " is vertical (its xy-projection is a point)"});
  }

  const SegmentId& id() const noexcept { return id_; }
  const Point3& p() const noexcept { return p_; }
  const Point3& q() const noexcept { return q_; }

  friend bool operator==(const Segment3&, const Segment3&) = default;

 private:
  SegmentId id_;
  Point3 p_, q_;
};

struct Segment2 {
  SegmentId parent_id;
  Point2 a, b;
};

/// One proper crossing of two projected segments. seg_a < seg_b.
struct Crossing {
  SegmentId seg_a, seg_b;
  Point2 point;
  Rational param_a, param_b;
  Rational z_a, z_b;
  SegmentId upper;

  const SegmentId& lower() const noexcept { return upper == seg_a ? seg_b : seg_a; }
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct ProjectedCrossing {
  Point2 point;
  Rational param_u, param_v;
};

enum class Above { first, second };

inline Segment2 project(const Segment3& s) {
  return {s.id(), {s.p().x, s.p().y}, {s.q().x, s.q().y}};
}

namespace detail {

inline Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
  return ax * by - ay * bx;
}

inline Point2 lerp(const Point2& a, const Point2& b, const Rational& t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace detail

/// Proper crossing of two projected segments, or nullopt if the closed
/// segments are disjoint. Touching at an endpoint and collinear overlap are
/// general-position violations.
inline std::optional<ProjectedCrossing> intersect_projections(const Segment2& u, const Segment2& v) {
  using detail::cross;
  const Rational dux = u.b.x - u.a.x, duy = u.b.y - u.a.y;
  const Rational dvx = v.b.x - v.a.x, dvy = v.b.y - v.a.y;
  const Rational wx = v.a.x - u.a.x, wy = v.a.y - u.a.y;
  const Rational denom = cross(dux, duy, dvx, dvy);

  const std::string pair = u.parent_id + " and " + v.parent_id;

  if (denom == 0) {
    if (cross(wx, wy, dux, duy) != 0) return std::nullopt;  // parallel, apart
    // Collinear: express v's endpoints as parameters along u.
    const Rational len2 = dux * dux + duy * duy;
    Rational t0 = (wx * dux + wy * duy) / len2;
    Rational t1 = ((v.b.x - u.a.x) * dux + (v.b.y - u.a.y) * duy) / len2;
    if (t0 > t1) std::swap(t0, t1);
    const Rational lo = std::max(t0, Rational(0));
    const Rational hi = std::min(t1, Rational(1));
    if (lo > hi) return std::nullopt;
    if (lo == hi)
      throw DegenerateInput({"projections of " + pair + " touch at an endpoint"});
    throw DegenerateInput({"projections of " + pair + " are collinear and overlap"});
  }

  const Rational t = cross(wx, wy, dvx, dvy) / denom;
  const Rational s = cross(wx, wy, dux, duy) / denom;
  if (t < 0 || t > 1 || s < 0 || s > 1) return std::nullopt;
  if (t == 0 || t == 1 || s == 0 || s == 1)
    throw DegenerateInput({"projections of " + pair + " meet at an endpoint"});
  return ProjectedCrossing{detail::lerp(u.a, u.b, t), t, s};
}

inline Rational z_at(const Segment3& s, const Rational& t) {
  if (t < 0 || t > 1) throw std::out_of_range("parameter " + to_string(t) + " outside [0, 1]");
  return s.p().z + t * (s.q().z - s.p().z);
}

/// Which of two rods is higher on the vertical line through their crossing.
inline Above above(const Segment3& s, const Segment3& t, const Rational& param_s, const Rational& param_t) {
  const Rational zs = z_at(s, param_s);
  const Rational zt = z_at(t, param_t);
  if (zs == zt)
    throw DegenerateInput({"segments " + s.id() + " and " + t.id() + " touch in 3D (equal z at their crossing)"});
  return zs > zt ? Above::first : Above::second;
}

/// All proper crossings, one per unordered pair, sorted by (seg_a, seg_b).
/// Collects every general-position violation before throwing.
inline std::vector<Crossing> all_crossings(std::span<const Segment3> segments) {
  std::vector<const Segment3*> order;
  order.reserve(segments.size());
  for (const auto& s : segments) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id() < b->id(); });

  std::vector<std::string> problems;
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (order[i]->id() == order[i + 1]->id()) problems.push_back("duplicate segment id " + order[i]->id());

  std::vector<Crossing> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Segment3& a = *order[i];
    const Segment2 pa = project(a);
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Segment3& b = *order[j];
      if (a.id() == b.id()) continue;
      try {
        auto hit = intersect_projections(pa, project(b));
        if (!hit) continue;
        Crossing c{a.id(), b.id(), hit->point, hit->param_u, hit->param_v,
                   z_at(a, hit->param_u), z_at(b, hit->param_v), {}};
        if (c.z_a == c.z_b) {
          problems.push_back("segments " + a.id() + " and " + b.id() + " touch in 3D at " + to_string(c.point));
          continue;
        }
        c.upper = c.z_a > c.z_b ? a.id() : b.id();
        out.push_back(std::move(c));
      } catch (const DegenerateInput& e) {
        for (const auto& d : e.diagnostics()) problems.push_back(d);
      }
    }
  }

  // Three or more projections through one point show up as two crossings
  // sharing a parameter on the same segment.
  std::map<SegmentId, std::vector<std::pair<Rational, std::size_t>>> along;
  for (std::size_t i = 0; i < out.size(); ++i) {
    along[out[i].seg_a].emplace_back(out[i].param_a, i);
    along[out[i].seg_b].emplace_back(out[i].param_b, i);
  }
  std::set<std::string> concurrent;
  for (auto& [id, params] : along) {
    std::sort(params.begin(), params.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 0; i + 1 < params.size(); ++i)
      if (params[i].first == params[i + 1].first)
        concurrent.insert("three or more projections pass through " + to_string(out[params[i].second].point));
  }
  problems.insert(problems.end(), concurrent.begin(), concurrent.end());

  if (!problems.empty()) throw DegenerateInput(std::move(problems));
  return out;
}

}  // namespace rodcut
