#pragma once

#include "bsp/domain.hpp"

namespace fixtures {

// Right triangle with legs 8 and 6 (perimeter 24), convex.
inline bsp::PolygonalDomain triangle() {
  return bsp::PolygonalDomain::validate({{{0, 0}, {8, 0}, {0, 6}}});
}

// 10x10 square with a 2x2 hole centered at (5,5). Outer perimeter 40,
// hole perimeter 8, n=8, h=1. Corner ids: 0..3 outer from (0,0) CCW,
// 4..7 hole from (4,4) CW: (4,4),(4,6),(6,6),(6,4).
inline bsp::PolygonalDomain square_hole() {
  return bsp::PolygonalDomain::validate(
      {{{0, 0}, {10, 0}, {10, 10}, {0, 10}},
       {{4, 4}, {4, 6}, {6, 6}, {6, 4}}});
}

// Convex hexagon for the degenerate-case checks.
inline bsp::PolygonalDomain hexagon() {
  return bsp::PolygonalDomain::validate(
      {{{4, 0}, {8, 1}, {10, 5}, {7, 9}, {2, 8}, {0, 4}}});
}

// Concave L-shape without holes.
inline bsp::PolygonalDomain lshape() {
  return bsp::PolygonalDomain::validate(
      {{{0, 0}, {6, 0}, {6, 2}, {2, 2}, {2, 6}, {0, 6}}});
}

}  // namespace fixtures
