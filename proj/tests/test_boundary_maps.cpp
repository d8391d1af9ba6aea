#include <doctest.h>

#include <cmath>
#include <random>

#include "bsp/boundary_maps.hpp"
#include "bsp/domain_gen.hpp"
#include "fixtures.hpp"

using namespace bsp;

namespace {

struct Pipeline {
  PolygonalDomain d;
  Channel ch;
  VisibilityGraph g;
  GeodesicTable table;
  std::vector<Breakpoint> events;
  std::vector<BoundarySPMRow> rows;
  GridIndex grid;

  explicit Pipeline(PolygonalDomain dom) : d(std::move(dom)) {
    ch = boundary_channel(d);
    g = build_visibility_graph(d);
    table = all_pairs_corner_distances(d, g);
    events = visibility_events(d, g, ch);
    double eps_env = 1e-11 * d.total_length();
    for (int v = 0; v < d.n(); ++v)
      rows.push_back(boundary_spm_row(d, table, ch, events, v, {}, eps_env));
    std::vector<Breakpoint> bps = events;
    for (const auto& row : rows)
      for (const auto& sw : row.switches) bps.push_back(sw);
    grid = build_grid(d, ch, std::move(bps));
  }
};

bool has_switch_near(const BoundarySPMRow& row, double t, double tol = 1e-6) {
  for (const auto& sw : row.switches)
    if (std::abs(sw.t - t) <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("convex domain rows have no non-corner breakpoints") {
  Pipeline p(fixtures::triangle());
  for (int v = 0; v < 3; ++v) {
    CHECK(p.rows[v].switches.empty());
    for (int root : p.rows[v].roots) CHECK(root == v);
  }
  CHECK(p.grid.size() == 3);  // corners only
}

TEST_CASE("SquareHole row of corner (4,4)") {
  Pipeline p(fixtures::square_hole());
  const auto& row = p.rows[4];
  // Shadow of (4,4) behind (6,4) crosses the right outer edge at (10,4):
  // parameters run 10..20 up that edge, so the switch sits at t=14. Beyond it
  // the root is (6,4) (id 7); before it the corner itself is the root.
  CHECK(has_switch_near(row, 14.0));
  CHECK(row.root_at(12.0) == 4);
  CHECK(row.root_at(15.0) == 7);
  CHECK(row.root_at(19.5) == 7);
  // Shadow behind (4,6) crosses the top edge at (4,10): parameter 26.
  CHECK(has_switch_near(row, 26.0));
  CHECK(row.root_at(25.0) == 4);
  CHECK(row.root_at(27.0) == 5);
  CHECK(row.switches.size() == 2);
  // At a switch both root expressions agree.
  for (const auto& sw : row.switches) {
    Point2 pt = p.ch.point_at(sw.t);
    double via_self = dist(p.d.corner(4), pt);
    int after = row.root_at(sw.t + 1e-7);
    double via_after = p.table.d(4, after) + dist(p.d.corner(after), pt);
    CHECK(via_self == doctest::Approx(via_after).epsilon(1e-9));
  }
}

TEST_CASE("SquareHole row of corner (0,0)") {
  Pipeline p(fixtures::square_hole());
  const auto& row = p.rows[0];
  // Occluder (6,4): ray hits the right edge at (10, 20/3), parameter 10+20/3.
  CHECK(has_switch_near(row, 10.0 + 20.0 / 3.0));
  CHECK(row.root_at(10.0 + 20.0 / 3.0 + 0.01) == 7);
  // Occluder (4,6): ray hits the top edge at (20/3, 10), parameter 20+10-20/3.
  CHECK(has_switch_near(row, 30.0 - 20.0 / 3.0));
  CHECK(row.root_at(30.0 - 20.0 / 3.0 + 0.01) == 5);
  CHECK(row.switches.size() == 2);
}

TEST_CASE("rows agree with the oracle at random parameters") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 3; ++k) {
    Pipeline p(k == 0   ? fixtures::square_hole()
               : k == 1 ? fixtures::lshape()
                        : random_domain(555 + k, 18, 2));
    std::uniform_real_distribution<double> u(0.0, p.d.total_length());
    std::uniform_int_distribution<int> uc(0, p.d.n() - 1);
    for (int i = 0; i < 1000; ++i) {
      int v = uc(rng);
      double t = u(rng);
      Point2 pt = p.ch.point_at(t);
      int root = p.rows[v].root_at(t);
      double via_row = p.table.d(v, root) + dist(p.d.corner(root), pt);
      auto oracle = oracle_shortest_path(p.d, p.g, p.d.corner(v), pt);
      CHECK(via_row == doctest::Approx(oracle.length).epsilon(1e-9));
      CHECK(p.d.segment_free(p.d.corner(root), pt));
    }
  }
}

TEST_CASE("row intervals never repeat a root within an edge") {
  Pipeline p(fixtures::square_hole());
  for (const auto& row : p.rows) {
    for (size_t i = 1; i < row.starts.size(); ++i) {
      bool at_corner = false;
      for (const auto& e : p.ch.edges)
        if (std::abs(e.s0 - row.starts[i]) <= p.d.eps_geom()) at_corner = true;
      if (!at_corner) CHECK(row.roots[i] != row.roots[i - 1]);
    }
  }
}

TEST_CASE("merged grid contains corners and the known switches") {
  Pipeline p(fixtures::square_hole());
  CHECK(p.grid.size() >= p.d.n());
  CHECK(p.grid.size() <= 4 * p.d.n() * p.d.n());
  for (int c = 0; c < p.d.n(); ++c) {
    int k = p.grid.locate(p.d.corner_param(c));
    CHECK(p.grid.start(k) == doctest::Approx(p.d.corner_param(c)).epsilon(1e-12));
  }
  bool has14 = false;
  for (double t : p.grid.params)
    if (std::abs(t - 14.0) < 1e-6) has14 = true;
  CHECK(has14);
}

TEST_CASE("visible corner set is constant within grid intervals") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 2; ++k) {
    Pipeline p(k == 0 ? fixtures::square_hole() : random_domain(808, 16, 2));
    for (int interval = 0; interval < p.grid.size(); ++interval) {
      double a = p.grid.start(interval), b = p.grid.end(interval);
      auto ref = p.grid.visible_list(interval, p.d.n());
      std::uniform_real_distribution<double> u(a + (b - a) * 1e-6, b - (b - a) * 1e-6);
      for (int i = 0; i < 10; ++i) {
        auto vp = p.d.visible_corners(p.ch.point_at(u(rng)));
        CHECK(vp.corners == ref);
      }
    }
  }
}

TEST_CASE("locate_interval follows the half-open convention") {
  Pipeline p(fixtures::square_hole());
  int k = p.grid.locate(14.0 + 1e-13);
  CHECK(p.grid.start(k) == doctest::Approx(14.0));
  int k2 = p.grid.locate(0.5 * (p.grid.start(1) + p.grid.end(1)));
  CHECK(k2 == 1);
  int last = p.grid.locate(p.d.total_length() - p.d.eps_geom() / 2);
  CHECK(last == p.grid.size() - 1);
  CHECK_THROWS_WITH_AS(p.grid.locate(-1.0), doctest::Contains("OutOfRange"), Error);
}

TEST_CASE("block tiling") {
  Pipeline tri(fixtures::triangle());
  auto tiling = make_blocks(tri.grid, 3);
  CHECK(tiling.runs.size() == 3);  // one run per edge
  CHECK(tri.grid.size() * static_cast<int>(tiling.runs.size()) == 9);

  // Chunking: 7 intervals on one edge with cap 3 -> runs of 3,3,1.
  GridIndex fake;
  fake.total = 7;
  for (int i = 0; i < 7; ++i) {
    fake.params.push_back(i);
    fake.kinds.push_back(kBreakCorner);
  }
  fake.edge_first = {0, 7};
  fake.words_per_interval = 1;
  fake.vis.assign(7, 0);
  auto runs = make_blocks(fake, 3);
  REQUIRE(runs.runs.size() == 3);
  CHECK(runs.runs[0].count == 3);
  CHECK(runs.runs[1].count == 3);
  CHECK(runs.runs[2].count == 1);

  // Tiling covers every (s-interval, t-interval) pair exactly once.
  Pipeline sh(fixtures::square_hole());
  auto tiles = make_blocks(sh.grid, 8);
  int covered = 0;
  for (const auto& run : tiles.runs) covered += run.count;
  CHECK(covered == sh.grid.size());
}
