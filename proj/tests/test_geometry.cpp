#include <gtest/gtest.h>

#include <algorithm>

#include "rodcut/geometry.hpp"
#include "rodcut/instances.hpp"

using namespace rodcut;

namespace {

Point3 P(const char* x, const char* y, const char* z) {
  return {parse_rational(x), parse_rational(y), parse_rational(z)};
}
Segment2 S2(const char* id, const char* ax, const char* ay, const char* bx, const char* by) {
  return {id, {parse_rational(ax), parse_rational(ay)}, {parse_rational(bx), parse_rational(by)}};
}
Rational Q(const char* s) { return parse_rational(s); }

}  // namespace

TEST(Rational, ParsesIntegersDecimalsAndFractions) {
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7/3"), Rational(-7, 3));
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  for (const char* bad : {"", "-", "1e3", "1/0", "abc", "1/2/3", "1.2.3", "inf", "."})
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Geometry, ProjectDropsZ) {
  const Segment3 s("a", P("0", "0", "2"), P("6", "0", "2"));
  const Segment2 p = project(s);
  EXPECT_EQ(p.parent_id, "a");
  EXPECT_EQ(p.a, (Point2{0, 0}));
  EXPECT_EQ(p.b, (Point2{6, 0}));
  const Segment2 r = project(Segment3("b", P("1", "-1", "0"), P("3", "3", "6")));
  EXPECT_EQ(r.a, (Point2{1, -1}));
  EXPECT_EQ(r.b, (Point2{3, 3}));
}

TEST(Geometry, VerticalSegmentRejected) {
  EXPECT_THROW(Segment3("v", P("0", "0", "0"), P("0", "0", "5")), DegenerateInput);
}

TEST(Geometry, IntersectProjections) {
  // x-axis segment against (1,-1)-(3,3): both parameters 1/4 at (3/2, 0).
  auto hit = intersect_projections(S2("u", "0", "0", "6", "0"), S2("v", "1", "-1", "3", "3"));
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->point, (Point2{Q("3/2"), 0}));
  EXPECT_EQ(hit->param_u, Q("1/4"));
  EXPECT_EQ(hit->param_v, Q("1/4"));

  EXPECT_FALSE(intersect_projections(S2("u", "0", "0", "1", "0"), S2("v", "2", "1", "3", "1")));
  EXPECT_FALSE(intersect_projections(S2("u", "0", "0", "1", "0"), S2("v", "0", "1", "1", "1")));  // parallel
  EXPECT_FALSE(intersect_projections(S2("u", "0", "0", "1", "0"), S2("v", "2", "0", "3", "0")));  // collinear apart
  EXPECT_FALSE(intersect_projections(S2("u", "0", "0", "1", "0"), S2("v", "2", "-1", "2", "1")));  // lines meet outside
}

TEST(Geometry, IntersectProjectionsDegenerate) {
  EXPECT_THROW(intersect_projections(S2("u", "0", "0", "2", "0"), S2("v", "1", "0", "3", "0")), DegenerateInput);
  EXPECT_THROW(intersect_projections(S2("u", "0", "0", "2", "0"), S2("v", "2", "0", "3", "0")), DegenerateInput);
  EXPECT_THROW(intersect_projections(S2("u", "0", "0", "2", "0"), S2("v", "1", "0", "1", "5")), DegenerateInput);
  EXPECT_THROW(intersect_projections(S2("u", "0", "0", "2", "0"), S2("v", "2", "-1", "2", "1")), DegenerateInput);
}

TEST(Geometry, IntersectionMatchesIndependentSolve) {
  // Oracle: solve u.a + t du = v.a + s dv by Gaussian elimination on the
  // augmented 2x3 matrix, then compare with the library's answer.
  SplitMix64 rng(99);
  int crossings = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Rational c[8];
    for (auto& x : c) x = rng.uniform(-6, 6);
    const Segment2 u{"u", {c[0], c[1]}, {c[2], c[3]}}, v{"v", {c[4], c[5]}, {c[6], c[7]}};
    if (u.a == u.b || v.a == v.b) continue;
    Rational m[2][3] = {{u.b.x - u.a.x, -(v.b.x - v.a.x), v.a.x - u.a.x},
                        {u.b.y - u.a.y, -(v.b.y - v.a.y), v.a.y - u.a.y}};
    if (m[0][0] == 0) std::swap(m[0], m[1]);
    std::optional<std::pair<Rational, Rational>> expect;
    bool singular = false;
    if (m[0][0] == 0) {
      singular = true;
    } else {
      const Rational f = m[1][0] / m[0][0];
      for (int j = 0; j < 3; ++j) m[1][j] -= f * m[0][j];
      if (m[1][1] == 0) {
        singular = true;
      } else {
        const Rational s = m[1][2] / m[1][1];
        const Rational t = (m[0][2] - m[0][1] * s) / m[0][0];
        expect = std::make_pair(t, s);
      }
    }
    if (singular) {
      try {
        EXPECT_FALSE(intersect_projections(u, v));
      } catch (const DegenerateInput&) {
      }
      continue;
    }
    auto [t, s] = *expect;
    const bool inside = t > 0 && t < 1 && s > 0 && s < 1;
    const bool touching = t >= 0 && t <= 1 && s >= 0 && s <= 1 && !inside;
    if (touching) {
      EXPECT_THROW(intersect_projections(u, v), DegenerateInput);
      continue;
    }
    auto hit = intersect_projections(u, v);
    ASSERT_EQ(hit.has_value(), inside);
    if (hit) {
      ++crossings;
      EXPECT_EQ(hit->param_u, t);
      EXPECT_EQ(hit->param_v, s);
      EXPECT_EQ(hit->point, (Point2{v.a.x + s * (v.b.x - v.a.x), v.a.y + s * (v.b.y - v.a.y)}));
    }
  }
  EXPECT_GT(crossings, 100);
}

TEST(Geometry, ZAt) {
  const Segment3 s2("s2", P("1", "-1", "0"), P("3", "3", "6"));
  EXPECT_EQ(z_at(s2, Q("1/4")), Q("3/2"));
  const Segment3 s1("s1", P("0", "0", "2"), P("6", "0", "2"));
  EXPECT_EQ(z_at(s1, Q("0")), Q("2"));
  EXPECT_EQ(z_at(s1, Q("5/7")), Q("2"));
  const Segment3 s3("s3", P("5", "-1", "3"), P("1", "3", "3"));
  EXPECT_EQ(z_at(s3, Q("2/3")), Q("3"));
  EXPECT_THROW(z_at(s1, Q("-1/2")), std::out_of_range);
  EXPECT_THROW(z_at(s1, Q("3/2")), std::out_of_range);
}

TEST(Geometry, Above) {
  const auto gadget = gen_cycle_triple();
  const Segment3 &s1 = gadget[0], &s2 = gadget[1], &s3 = gadget[2];
  EXPECT_EQ(above(s1, s2, Q("1/4"), Q("1/4")), Above::first);
  EXPECT_EQ(above(s3, s1, Q("1/4"), Q("2/3")), Above::first);
  EXPECT_EQ(above(s1, s3, Q("2/3"), Q("1/4")), Above::second);
  const Segment3 flat("t", P("0", "-1", "2"), P("0", "1", "2"));
  EXPECT_THROW(above(s1, flat, 0, Q("1/2")), DegenerateInput);
}

TEST(Geometry, AllCrossingsGadget) {
  const auto cs = all_crossings(gen_cycle_triple());
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0].seg_a, "s1");
  EXPECT_EQ(cs[0].seg_b, "s2");
  EXPECT_EQ(cs[0].point, (Point2{Q("3/2"), 0}));
  EXPECT_EQ(cs[0].upper, "s1");
  EXPECT_EQ(cs[1].seg_b, "s3");
  EXPECT_EQ(cs[1].point, (Point2{4, 0}));
  EXPECT_EQ(cs[1].param_a, Q("2/3"));
  EXPECT_EQ(cs[1].param_b, Q("1/4"));
  EXPECT_EQ(cs[1].upper, "s3");
  EXPECT_EQ(cs[2].seg_a, "s2");
  EXPECT_EQ(cs[2].point, (Point2{Q("7/3"), Q("5/3")}));
  EXPECT_EQ(cs[2].upper, "s2");
  EXPECT_EQ(cs[2].z_a, 4);
  EXPECT_EQ(cs[2].z_b, 3);
}

TEST(Geometry, AllCrossingsTrivialCases) {
  std::vector<Segment3> one{Segment3("a", P("0", "0", "0"), P("1", "1", "1"))};
  EXPECT_TRUE(all_crossings(one).empty());
  std::vector<Segment3> parallel{Segment3("a", P("0", "0", "0"), P("4", "0", "0")),
                                 Segment3("b", P("0", "1", "0"), P("4", "1", "9"))};
  EXPECT_TRUE(all_crossings(parallel).empty());
}

TEST(Geometry, AllCrossingsAggregatesViolations) {
  std::vector<Segment3> bad{
      Segment3("a", P("0", "0", "0"), P("4", "0", "0")),
      Segment3("b", P("2", "0", "0"), P("6", "0", "0")),      // collinear overlap with a
      Segment3("c", P("1", "-1", "0"), P("1", "1", "0")),     // equal z with a at (1,0)
      Segment3("d", P("3", "-2", "5"), P("3", "2", "7")),     // crosses a and b at (3,0): concurrent
  };
  try {
    all_crossings(bad);
    FAIL() << "expected DegenerateInput";
  } catch (const DegenerateInput& e) {
    const auto& d = e.diagnostics();
    auto mentions = [&](const std::string& what) {
      return std::any_of(d.begin(), d.end(), [&](const std::string& l) { return l.find(what) != std::string::npos; });
    };
    EXPECT_TRUE(mentions("collinear"));
    EXPECT_TRUE(mentions("touch in 3D"));
    EXPECT_TRUE(mentions("three or more"));
  }
  std::vector<Segment3> dup{Segment3("a", P("0", "0", "0"), P("4", "0", "0")),
                            Segment3("a", P("0", "1", "0"), P("4", "1", "0"))};
  EXPECT_THROW(all_crossings(dup), DegenerateInput);
}

TEST(Geometry, CrossingInvariantsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec spec;
    spec.count = 8;
    spec.lo = -10, spec.hi = 10;
    spec.seed = seed;
    auto segs = gen_random(spec);
    const auto cs = all_crossings(segs);
    EXPECT_LE(cs.size(), segs.size() * (segs.size() - 1) / 2);
    for (const Crossing& c : cs) {
      auto find = [&](const SegmentId& id) {
        return *std::find_if(segs.begin(), segs.end(), [&](const Segment3& s) { return s.id() == id; });
      };
      const Segment3 a = find(c.seg_a), b = find(c.seg_b);
      EXPECT_LT(c.seg_a, c.seg_b);
      EXPECT_EQ(c.point, (Point2{a.p().x + c.param_a * (a.q().x - a.p().x), a.p().y + c.param_a * (a.q().y - a.p().y)}));
      EXPECT_EQ(c.point, (Point2{b.p().x + c.param_b * (b.q().x - b.p().x), b.p().y + c.param_b * (b.q().y - b.p().y)}));
      EXPECT_NE(c.z_a, c.z_b);
      EXPECT_EQ(c.upper, c.z_a > c.z_b ? c.seg_a : c.seg_b);
    }
    // order independence
    std::reverse(segs.begin(), segs.end());
    EXPECT_EQ(all_crossings(segs), cs);
  }
}
