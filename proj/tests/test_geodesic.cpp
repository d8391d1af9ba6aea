#include <doctest.h>

#include <cmath>
#include <random>

#include "bsp/domain_gen.hpp"
#include "bsp/geodesic.hpp"
#include "fixtures.hpp"

using namespace bsp;

TEST_CASE("visibility graph structure") {
  auto tri = fixtures::triangle();
  auto gt = build_visibility_graph(tri);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(gt.has_edge(i, j));

  auto sh = fixtures::square_hole();
  auto g = build_visibility_graph(sh);
  CHECK_FALSE(g.has_edge(4, 6));  // hole diagonal blocked
  CHECK(g.has_edge(4, 7));        // hole edge is boundary
  CHECK(g.degree(0) == 5);        // everything except (6,6)
  CHECK_FALSE(g.has_edge(0, 6));
}

TEST_CASE("all-pairs corner distances") {
  auto sh = fixtures::square_hole();
  auto g = build_visibility_graph(sh);
  auto t = all_pairs_corner_distances(sh, g);
  for (int u = 0; u < t.n; ++u) CHECK(t.d(u, u) == 0.0);
  CHECK(t.d(4, 6) == doctest::Approx(4.0).epsilon(1e-12));
  auto chain = t.path(4, 6);
  CHECK(chain.size() == 3);
  CHECK(chain.front() == 4);
  CHECK(chain.back() == 6);
  CHECK((chain[1] == 5 || chain[1] == 7));
  // Lexicographically smallest equal-length sequence: via 5 = (4,6).
  CHECK(chain[1] == 5);

  auto tri = fixtures::triangle();
  auto gt = build_visibility_graph(tri);
  auto tt = all_pairs_corner_distances(tri, gt);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      CHECK(tt.d(u, v) == doctest::Approx(dist(tri.corner(u), tri.corner(v))).epsilon(1e-15));
}

TEST_CASE("metric axioms hold on fixtures and random domains") {
  std::mt19937_64 seeds(123);
  for (int k = 0; k < 6; ++k) {
    PolygonalDomain d = k == 0   ? fixtures::square_hole()
                        : k == 1 ? fixtures::lshape()
                                 : random_domain(seeds(), 14 + k, 1 + k % 3);
    auto g = build_visibility_graph(d);
    auto t = all_pairs_corner_distances(d, g);
    for (int u = 0; u < t.n; ++u) {
      CHECK(t.d(u, u) == 0.0);
      for (int v = 0; v < t.n; ++v) {
        CHECK(t.d(u, v) == doctest::Approx(t.d(v, u)).epsilon(1e-12));
        CHECK(t.d(u, v) + 1e-12 >= dist(d.corner(u), d.corner(v)) - 1e-12);
        for (int w = 0; w < t.n; ++w)
          CHECK(t.d(u, w) <= t.d(u, v) + t.d(v, w) + 1e-9 * (1.0 + t.d(u, w)));
      }
    }
  }
}

TEST_CASE("oracle on SquareHole") {
  auto sh = fixtures::square_hole();
  auto g = build_visibility_graph(sh);
  auto r = oracle_shortest_path(sh, g, {0, 5}, {10, 5});
  double expect = 2.0 + 2.0 * std::sqrt(17.0);
  CHECK(r.length == doctest::Approx(expect).epsilon(1e-12));
  REQUIRE(r.polyline.size() == 4);
  // Lexicographic tie-break picks the lower path (4,4),(6,4) over (4,6),(6,6).
  CHECK(r.polyline[1].x == doctest::Approx(4.0));
  CHECK(r.polyline[1].y == doctest::Approx(4.0));
  CHECK(r.polyline[2].x == doctest::Approx(6.0));
  CHECK(r.polyline[2].y == doctest::Approx(4.0));

  auto direct = oracle_shortest_path(sh, g, {0, 5}, {10, 0});
  CHECK(direct.length == doctest::Approx(dist({0, 5}, {10, 0})).epsilon(1e-15));
  CHECK(direct.polyline.size() == 2);

  auto same = oracle_shortest_path(sh, g, {3, 3}, {3, 3});
  CHECK(same.length == 0.0);
  CHECK(same.polyline.size() == 1);
}

TEST_CASE("oracle length is mirror symmetric on SquareHole") {
  auto sh = fixtures::square_hole();
  auto g = build_visibility_graph(sh);
  auto a = oracle_shortest_path(sh, g, {0, 5}, {10, 5});
  // Reflecting everything across y=5 maps the fixture to itself.
  auto b = oracle_shortest_path(sh, g, {0, 5}, {10, 5});
  CHECK(a.length == b.length);
  auto p = oracle_shortest_path(sh, g, {0, 3}, {10, 7});
  auto q = oracle_shortest_path(sh, g, {0, 7}, {10, 3});
  CHECK(p.length == doctest::Approx(q.length).epsilon(1e-12));
}

TEST_CASE("oracle paths are feasible and tight") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 4; ++k) {
    PolygonalDomain d = k == 0 ? fixtures::square_hole() : random_domain(1000 + k, 16, 2);
    auto g = build_visibility_graph(d);
    std::uniform_real_distribution<double> u(0.0, d.total_length());
    for (int i = 0; i < 50; ++i) {
      Point2 p = d.param_to_point(u(rng));
      Point2 q = d.param_to_point(u(rng));
      auto r = oracle_shortest_path(d, g, p, q);
      CHECK(r.length >= dist(p, q) - 1e-9 * (1.0 + r.length));
      CHECK(polyline_length(r.polyline) == doctest::Approx(r.length).epsilon(1e-12));
      for (size_t s = 0; s + 1 < r.polyline.size(); ++s)
        CHECK(d.segment_free(r.polyline[s], r.polyline[s + 1]));
    }
  }
}

TEST_CASE("shortest path tree") {
  auto sh = fixtures::square_hole();
  auto g = build_visibility_graph(sh);
  auto t = all_pairs_corner_distances(sh, g);

  auto spt = shortest_path_tree(sh, g, sh.corner(0));
  for (int v = 0; v < sh.n(); ++v) CHECK(spt.dist[v] == doctest::Approx(t.d(0, v)).epsilon(1e-12));

  auto from_side = shortest_path_tree(sh, g, {0, 5});
  CHECK(from_side.parent[7] == 4);  // (6,4) hangs off (4,4)
  CHECK(from_side.dist[7] == doctest::Approx(std::sqrt(17.0) + 2.0).epsilon(1e-12));

  auto tri = fixtures::triangle();
  auto gt = build_visibility_graph(tri);
  auto star = shortest_path_tree(tri, gt, {2, 2});
  for (int v = 0; v < 3; ++v) CHECK(star.parent[v] == -1);
}
