#include <doctest.h>

#include <random>

#include "bsp/domain.hpp"
#include "fixtures.hpp"

using namespace bsp;

TEST_CASE("validation accepts the fixtures and normalizes orientation") {
  auto tri = fixtures::triangle();
  CHECK(tri.n() == 3);
  CHECK(tri.hole_count() == 0);
  CHECK(tri.total_length() == doctest::Approx(24.0).epsilon(1e-14));

  auto sh = fixtures::square_hole();
  CHECK(sh.n() == 8);
  CHECK(sh.hole_count() == 1);
  CHECK(sh.total_length() == doctest::Approx(48.0).epsilon(1e-14));

  CHECK(ring_area2(sh.rings()[0]) > 0);  // outer counter-clockwise
  CHECK(ring_area2(sh.rings()[1]) < 0);  // hole clockwise
}

TEST_CASE("validation rejects bad input") {
  // Hole crossing the outer ring.
  CHECK_THROWS_WITH_AS(PolygonalDomain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                                  {{8, 4}, {12, 4}, {12, 6}, {8, 6}}}),
                       doctest::Contains("OverlappingRings"), Error);
  // Hole fully outside.
  CHECK_THROWS_WITH_AS(PolygonalDomain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                                  {{20, 20}, {22, 20}, {22, 22}, {20, 22}}}),
                       doctest::Contains("HoleOutsideOuter"), Error);
  // Self-intersecting bowtie.
  CHECK_THROWS_WITH_AS(PolygonalDomain::validate({{{0, 0}, {4, 4}, {4, 0}, {0, 4}}}),
                       doctest::Contains("SelfIntersectingRing"), Error);
  // Duplicate corner across rings (hole vertex coincides with an outer corner).
  CHECK_THROWS_WITH_AS(PolygonalDomain::validate({{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                                  {{0, 0}, {4, 2}, {2, 4}}}),
                       doctest::Contains("DuplicateCorner"), Error);
  // Degenerate ring.
  CHECK_THROWS_WITH_AS(PolygonalDomain::validate({{{0, 0}, {10, 0}}}),
                       doctest::Contains("DegenerateRing"), Error);
  CHECK_THROWS_WITH_AS(parse_domain_json("{not json"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("arc-length parametrization on SquareHole") {
  auto sh = fixtures::square_hole();
  Point2 p0 = sh.param_to_point(0.0);
  CHECK(p0.x == doctest::Approx(0.0));
  CHECK(p0.y == doctest::Approx(0.0));
  Point2 p10 = sh.param_to_point(10.0);
  CHECK(p10.x == doctest::Approx(10.0));
  CHECK(p10.y == doctest::Approx(0.0));
  // Hole traversal starts at parameter 40 at (4,4) and runs clockwise:
  // (4,4)->(4,6)->(6,6)->(6,4), so s=45 is the midpoint of the (6,6)->(6,4) edge.
  Point2 p45 = sh.param_to_point(45.0);
  CHECK(p45.x == doctest::Approx(6.0));
  CHECK(p45.y == doctest::Approx(5.0));
  CHECK(sh.corner_param(4) == doctest::Approx(40.0));
  CHECK(sh.corner_param(5) == doctest::Approx(42.0));

  CHECK(sh.point_to_param({5, 0}) == doctest::Approx(5.0));
  CHECK(sh.point_to_param({0, 0}) == doctest::Approx(0.0));
  CHECK_THROWS_WITH_AS(sh.point_to_param({5, 5}), doctest::Contains("NotOnBoundary"), Error);
  CHECK_THROWS_WITH_AS(sh.param_to_point(48.0), doctest::Contains("OutOfRange"), Error);
  CHECK_THROWS_WITH_AS(sh.param_to_point(-1.0), doctest::Contains("OutOfRange"), Error);
}

TEST_CASE("round trip between parameters and points") {
  auto sh = fixtures::square_hole();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, sh.total_length());
  for (int i = 0; i < 1000; ++i) {
    double s = u(rng);
    double back = sh.point_to_param(sh.param_to_point(s));
    double diff = std::abs(back - s);
    diff = std::min(diff, sh.total_length() - diff);  // ring wraparound
    CHECK(diff <= sh.eps_geom());
  }
}

TEST_CASE("visibility on SquareHole") {
  auto sh = fixtures::square_hole();
  CHECK_FALSE(sh.is_visible({0, 5}, {10, 5}));  // through the hole
  CHECK(sh.is_visible({0, 5}, {10, 0}));        // passes below the hole
  auto tri = fixtures::triangle();
  CHECK(tri.is_visible({4, 0}, {0, 3}));
  CHECK(tri.is_visible({0, 0}, {4, 3}));
  CHECK_THROWS_WITH_AS(sh.is_visible({5, 5}, {0, 0}), doctest::Contains("PointOutsideFreeSpace"),
                       Error);
}

TEST_CASE("grazing contact counts as visible") {
  auto sh = fixtures::square_hole();
  // Segment running along the hole's bottom edge.
  CHECK(sh.is_visible({4, 4}, {10, 4}));
  // Segment through the corner (6,4) from below.
  CHECK(sh.is_visible({0, 0}, {10, 20.0 / 3.0}));
  // Hole diagonal passes through the interior.
  CHECK_FALSE(sh.is_visible({4, 4}, {6, 6}));
}

TEST_CASE("visible corner sets on SquareHole") {
  auto sh = fixtures::square_hole();
  auto vp = sh.visible_corners({0, 5});
  CHECK(vp.corners == std::vector<int>{0, 1, 2, 3, 4, 5});
  auto vp2 = sh.visible_corners({5, 4});  // on the hole's bottom edge
  CHECK(vp2.corners == std::vector<int>{0, 1, 4, 7});
  auto tri = fixtures::triangle();
  auto vp3 = tri.visible_corners({4, 3});
  CHECK(vp3.corners == std::vector<int>{0, 1, 2});
}

TEST_CASE("visibility is symmetric on random pairs") {
  auto sh = fixtures::square_hole();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  int checked = 0;
  while (checked < 200) {
    Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
    if (!sh.in_closed_free_space(a) || !sh.in_closed_free_space(b)) continue;
    CHECK(sh.is_visible(a, b) == sh.is_visible(b, a));
    ++checked;
  }
}

TEST_CASE("total parameter length equals the edge-length sum exactly") {
  auto sh = fixtures::square_hole();
  double sum = 0.0;
  for (const auto& e : sh.edges()) sum += e.len;
  CHECK(sh.total_length() == sum);
}

TEST_CASE("visible corner sets are translation invariant") {
  std::vector<std::vector<Point2>> rings = {{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                            {{4, 4}, {4, 6}, {6, 6}, {6, 4}}};
  Point2 shift{13.25, -7.5};
  auto shifted = rings;
  for (auto& r : shifted)
    for (auto& p : r) p = p + shift;
  auto d0 = PolygonalDomain::validate(rings);
  auto d1 = PolygonalDomain::validate(shifted);
  for (Point2 x : {Point2{0, 5}, Point2{5, 4}, Point2{9.5, 3.25}}) {
    CHECK(d0.visible_corners(x).corners == d1.visible_corners(x + shift).corners);
  }
}

TEST_CASE("domain json round trip") {
  auto sh = fixtures::square_hole();
  auto sh2 = parse_domain_json(domain_to_json(sh));
  CHECK(sh2.n() == sh.n());
  CHECK(sh2.total_length() == doctest::Approx(sh.total_length()).epsilon(1e-15));
}
