#pragma once

#include <vector>

#include "bsp/domain.hpp"

namespace bsp {

// A parametrized query locus: either the whole domain boundary or a single
// free-space segment. Piecewise linear, parametrized by arc length.
struct Channel {
  struct Edge {
    Point2 a, b;
    Point2 dir;  // unit, a -> b
    double s0 = 0;
    double len = 0;
    int corner_a = -1, corner_b = -1;  // global corner ids, -1 off the boundary
  };

  std::vector<Edge> edges;
  double total = 0;
  bool cyclic = true;

  Point2 point_at(double s) const;
  int edge_index_at(double s) const;  // clamps s == total to the last edge
};

Channel boundary_channel(const PolygonalDomain& d);
Channel segment_channel(Point2 a, Point2 b);

}  // namespace bsp
