#include "bsp/domain_gen.hpp"

#include <cmath>
#include <random>

namespace bsp {

namespace {

std::vector<Point2> convex_blob(std::mt19937_64& rng, Point2 c, double radius, int nv) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> angles(nv);
  for (auto& a : angles) a = 2.0 * M_PI * u(rng);
  std::sort(angles.begin(), angles.end());
  std::vector<Point2> ring;
  for (double a : angles) {
    double r = radius * (0.6 + 0.4 * u(rng));
    ring.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return ring;
}

}  // namespace

PolygonalDomain random_domain(std::uint64_t seed, int corners, int holes) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  for (int attempt = 0; attempt < 200; ++attempt) {
    int hole_budget = holes * 4;
    int outer_nv = std::max(3, corners - hole_budget);

    std::vector<std::vector<Point2>> rings;
    std::vector<Point2> outer;
    for (int i = 0; i < outer_nv; ++i) {
      double a = 2.0 * M_PI * (i + 0.2 + 0.6 * u(rng)) / outer_nv;
      double r = 60.0 * (0.75 + 0.25 * u(rng));
      outer.push_back({100.0 + r * std::cos(a), 100.0 + r * std::sin(a)});
    }
    rings.push_back(outer);

    int placed = 0;
    for (int k = 0; k < holes && placed < holes; ++k) {
      for (int tries = 0; tries < 50; ++tries) {
        Point2 c{100.0 + 70.0 * (u(rng) - 0.5), 100.0 + 70.0 * (u(rng) - 0.5)};
        double radius = 4.0 + 8.0 * u(rng);
        auto blob = convex_blob(rng, c, radius, 4);
        rings.push_back(blob);
        try {
          PolygonalDomain::validate(rings);
          ++placed;
          break;
        } catch (const Error&) {
          rings.pop_back();
        }
      }
    }

    try {
      return PolygonalDomain::validate(std::move(rings));
    } catch (const Error&) {
      continue;
    }
  }
  fail(Err::DegenerateRing, "random domain generation failed");
}

}  // namespace bsp
