#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rodcut/cuts.hpp"
#include "rodcut/depth_graph.hpp"
#include "rodcut/geometry.hpp"

namespace rodcut {

/// Malformed document (bad JSON, wrong shape, unparsable number, bad rank).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Instance documents: {"segments": [{"id": "s1", "p": ["0","0","2"], "q": [...]}]}
// Every coordinate is a string holding an integer, a decimal or "a/b".

namespace detail {

using ojson = nlohmann::ordered_json;

inline Rational coordinate(const ojson& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": coordinate must be a string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline ojson parse_json(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

inline std::string emit_instance(std::span<const Segment3> segments) {
  detail::ojson list = detail::ojson::array();
  for (const auto& s : segments) {
    list.push_back({{"id", s.id()},
                    {"p", {to_string(s.p().x), to_string(s.p().y), to_string(s.p().z)}},
                    {"q", {to_string(s.q().x), to_string(s.q().y), to_string(s.q().z)}}});
  }
  detail::ojson doc;
  doc["segments"] = std::move(list);
  return doc.dump(2) + "\n";
}

/// Throws ParseError for shape problems; DegenerateInput for vertical rods.
inline std::vector<Segment3> parse_instance(const std::string& text) {
  const auto doc = detail::parse_json(text);
  if (!doc.is_object() || !doc.contains("segments") || !doc["segments"].is_array())
    throw ParseError("instance must be an object with a \"segments\" array");
  std::vector<Segment3> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc["segments"].size(); ++i) {
    const auto& rec = doc["segments"][i];
    const std::string where = "segment #" + std::to_string(i);
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string())
      throw ParseError(where + ": needs a string \"id\"");
    const std::string id = rec["id"].get<std::string>();
    if (!seen.insert(id).second) throw ParseError(where + ": duplicate id " + id);
    Point3 ends[2];
    const char* keys[2] = {"p", "q"};
    for (int e = 0; e < 2; ++e) {
      if (!rec.contains(keys[e]) || !rec[keys[e]].is_array() || rec[keys[e]].size() != 3)
        throw ParseError(where + ": \"" + keys[e] + "\" must be [x, y, z]");
      const auto& xyz = rec[keys[e]];
      ends[e] = {detail::coordinate(xyz[0], where), detail::coordinate(xyz[1], where),
                 detail::coordinate(xyz[2], where)};
    }
    out.emplace_back(id, ends[0], ends[1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cuts documents: {"cuts": [{"segment", "rank", "point": [x, y], "z"}], "count": n}

inline std::string emit_cuts(const CutSet& cuts) {
  detail::ojson list = detail::ojson::array();
  for (const Cut& c : cuts) {
    list.push_back({{"segment", c.segment_id},
                    {"rank", c.rank},
                    {"point", {to_string(c.point.x), to_string(c.point.y)}},
                    {"z", to_string(c.z)}});
  }
  detail::ojson doc;
  doc["cuts"] = std::move(list);
  doc["count"] = cuts.size();
  return doc.dump(2) + "\n";
}

inline CutSet parse_cuts(const std::string& text) {
  const auto doc = detail::parse_json(text);
  if (!doc.is_object() || !doc.contains("cuts") || !doc["cuts"].is_array())
    throw ParseError("cuts document must be an object with a \"cuts\" array");
  std::vector<Cut> cuts;
  for (std::size_t i = 0; i < doc["cuts"].size(); ++i) {
    const auto& rec = doc["cuts"][i];
    const std::string where = "cut #" + std::to_string(i);
    if (!rec.is_object() || !rec.contains("segment") || !rec["segment"].is_string())
      throw ParseError(where + ": needs a string \"segment\"");
    if (!rec.contains("rank") || !rec["rank"].is_number_integer() || rec["rank"].get<long long>() < 1)
      throw ParseError(where + ": \"rank\" must be a positive integer");
    if (!rec.contains("point") || !rec["point"].is_array() || rec["point"].size() != 2)
      throw ParseError(where + ": \"point\" must be [x, y]");
    if (!rec.contains("z")) throw ParseError(where + ": missing \"z\"");
    cuts.push_back({rec["segment"].get<std::string>(), rec["rank"].get<std::size_t>(),
                    {detail::coordinate(rec["point"][0], where), detail::coordinate(rec["point"][1], where)},
                    detail::coordinate(rec["z"], where)});
  }
  if (doc.contains("count") && (!doc["count"].is_number_integer() || doc["count"].get<std::size_t>() != cuts.size()))
    throw ParseError("\"count\" does not match the number of cut records");
  try {
    return CutSet(std::move(cuts));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

/// Checks that every cut names an existing (segment, rank) and carries the
/// point and height of that crossing.
inline void check_cuts_against(const CutSet& cuts, const CrossingIndex& index) {
  for (const Cut& c : cuts) {
    if (!std::binary_search(index.segment_ids().begin(), index.segment_ids().end(), c.segment_id))
      throw ParseError("cut names unknown segment " + c.segment_id);
    const std::size_t ranks = index.crossings_on(c.segment_id).size();
    if (c.rank < 1 || c.rank > ranks)
      throw ParseError("cut rank " + std::to_string(c.rank) + " out of range on segment " + c.segment_id +
                       " (has " + std::to_string(ranks) + " crossings)");
    if (make_cut(c.vertex(), index) != c)
      throw ParseError("cut " + to_string(c.vertex()) + " does not match the crossing point or height");
  }
}

// ---------------------------------------------------------------------------
// DOT

inline std::string emit_dot(const DepthGraph& dg) {
  auto name = [&](Vertex v) { return "\"" + to_string(dg.index.name(v)) + "\""; };
  std::ostringstream os;
  os << "digraph G_S {\n";
  for (Vertex v = 0; v < dg.graph.vertex_count(); ++v) os << "  " << name(v) << ";\n";
  auto edges = dg.graph.edges();
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) os << "  " << name(a) << " -> " << name(b) << " [dir=none];\n";
  auto arcs = dg.graph.arcs();
  std::sort(arcs.begin(), arcs.end());
  for (auto [a, b] : arcs) os << "  " << name(a) << " -> " << name(b) << ";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG: projected rods, the upper rod drawn unbroken over a gap in the lower
// one at each crossing, crossing dots, and an x glyph per cut.

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace detail

inline std::string emit_svg(std::span<const Segment3> segments, const CrossingIndex& index, const CutSet& cuts = {}) {
  constexpr double size = 480.0, margin = 24.0, gap = 7.0;
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  bool first = true;
  for (const auto& s : segments)
    for (const Point3* p : {&s.p(), &s.q()}) {
      const double x = to_double(p->x), y = to_double(p->y);
      if (first) min_x = max_x = x, min_y = max_y = y, first = false;
      min_x = std::min(min_x, x), max_x = std::max(max_x, x);
      min_y = std::min(min_y, y), max_y = std::max(max_y, y);
    }
  const double scale = (size - 2 * margin) / std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double width = 2 * margin + (max_x - min_x) * scale;
  const double height = 2 * margin + (max_y - min_y) * scale;
  // y flipped so that +y points up
  auto sx = [&](const Rational& x) { return margin + (to_double(x) - min_x) * scale; };
  auto sy = [&](const Rational& y) { return height - margin - (to_double(y) - min_y) * scale; };
  auto find = [&](const SegmentId& id) -> const Segment3& {
    return *std::find_if(segments.begin(), segments.end(), [&](const Segment3& s) { return s.id() == id; });
  };
  // Short piece of `s` centred on parameter t, `half` pixels each way.
  auto piece = [&](const Segment3& s, const Rational& t, double half) {
    const double x0 = sx(s.p().x), y0 = sy(s.p().y), x1 = sx(s.q().x), y1 = sy(s.q().y);
    const double len = std::hypot(x1 - x0, y1 - y0);
    const double tt = to_double(t), d = half / len;
    const double a = std::max(0.0, tt - d), b = std::min(1.0, tt + d);
    return "x1=\"" + detail::num(x0 + a * (x1 - x0)) + "\" y1=\"" + detail::num(y0 + a * (y1 - y0)) + "\" x2=\"" +
           detail::num(x0 + b * (x1 - x0)) + "\" y2=\"" + detail::num(y0 + b * (y1 - y0)) + "\"";
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::num(width) << "\" height=\""
     << detail::num(height) << "\" viewBox=\"0 0 " << detail::num(width) << " " << detail::num(height) << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::vector<const Segment3*> order;
  for (const auto& s : segments) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id() < b->id(); });
  for (const Segment3* s : order) {
    os << "  <polyline class=\"segment\" data-id=\"" << s->id() << "\" points=\"" << detail::num(sx(s->p().x)) << ","
       << detail::num(sy(s->p().y)) << " " << detail::num(sx(s->q().x)) << "," << detail::num(sy(s->q().y))
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    os << "  <text x=\"" << detail::num(sx(s->p().x) + 3) << "\" y=\"" << detail::num(sy(s->p().y) - 3)
       << "\" font-size=\"12\">" << s->id() << "</text>\n";
  }
  for (const Crossing& c : index.crossings()) {
    const bool a_up = c.upper == c.seg_a;
    const Segment3& lo = find(a_up ? c.seg_b : c.seg_a);
    const Segment3& hi = find(c.upper);
    const Rational& t_lo = a_up ? c.param_b : c.param_a;
    const Rational& t_hi = a_up ? c.param_a : c.param_b;
    os << "  <line class=\"gap\" " << piece(lo, t_lo, gap) << " stroke=\"white\" stroke-width=\"6\"/>\n";
    os << "  <line class=\"over\" " << piece(hi, t_hi, gap + 2) << " stroke=\"black\" stroke-width=\"2\"/>\n";
    os << "  <circle class=\"crossing\" cx=\"" << detail::num(sx(c.point.x)) << "\" cy=\""
       << detail::num(sy(c.point.y)) << "\" r=\"2\" fill=\"grey\"/>\n";
  }
  for (const Cut& c : cuts) {
    const double x = sx(c.point.x), y = sy(c.point.y), r = 6;
    os << "  <path class=\"cut\" d=\"M" << detail::num(x - r) << " " << detail::num(y - r) << " L"
       << detail::num(x + r) << " " << detail::num(y + r) << " M" << detail::num(x - r) << " " << detail::num(y + r)
       << " L" << detail::num(x + r) << " " << detail::num(y - r)
       << "\" stroke=\"red\" stroke-width=\"2\" data-segment=\"" << c.segment_id << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rodcut
