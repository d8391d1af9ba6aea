#pragma once

#include <string>
#include <vector>

#include "bsp/errors.hpp"
#include "bsp/geometry.hpp"

namespace bsp {

// One directed boundary edge under the arc-length parametrization.
struct BoundaryEdge {
  int corner_a = -1;  // corner at the edge start (global id)
  int corner_b = -1;  // corner at the edge end
  Point2 a, b;
  Point2 dir;      // unit direction from a to b
  double s0 = 0;   // parameter of a
  double len = 0;  // |ab|
  int ring = 0;    // 0 = outer, k>0 = hole k-1
};

struct VisibilityProfile {
  Point2 at;
  std::vector<int> corners;  // sorted corner ids visible from `at`
};

// Polygonal region with holes. Normalized so the outer ring is
// counter-clockwise and hole rings clockwise: walking any ring in storage
// order keeps the obstacle on the right. The boundary is parametrized by
// arc length, outer ring first (starting at its first input vertex), then
// holes in input order. Immutable after validation.
class PolygonalDomain {
public:
  static PolygonalDomain validate(std::vector<std::vector<Point2>> rings,
                                  double eps_geom_factor = 1e-9);

  int n() const { return static_cast<int>(corners_.size()); }
  int hole_count() const { return static_cast<int>(rings_.size()) - 1; }
  double total_length() const { return total_len_; }
  double eps_geom() const { return eps_geom_; }
  double bbox_diameter() const { return bbox_diam_; }

  const std::vector<std::vector<Point2>>& rings() const { return rings_; }
  const std::vector<Point2>& corners() const { return corners_; }
  Point2 corner(int id) const { return corners_[id]; }
  const std::vector<BoundaryEdge>& edges() const { return edges_; }

  // Parameter of the corner under its ring traversal (start of its outgoing edge).
  double corner_param(int id) const { return corner_param_[id]; }

  Point2 param_to_point(double s) const;    // s in [0, total)
  double point_to_param(Point2 q) const;    // q on the boundary
  int edge_index_at(double s) const;        // edge containing parameter s

  bool in_closed_free_space(Point2 p) const;
  bool is_visible(Point2 x, Point2 y) const;  // open segment stays in free space
  VisibilityProfile visible_corners(Point2 x) const;

  // is_visible without the free-space precondition checks (callers that
  // already know both endpoints are valid).
  bool segment_free(Point2 x, Point2 y) const;

private:
  std::vector<std::vector<Point2>> rings_;
  std::vector<Point2> corners_;
  std::vector<int> corner_ring_;
  std::vector<double> corner_param_;
  std::vector<BoundaryEdge> edges_;
  std::vector<double> edge_start_;  // edges_[i].s0, for binary search
  double total_len_ = 0;
  double eps_geom_ = 0;
  double bbox_diam_ = 0;
};

// JSON codec for the domain file: {"outer": [[x,y],...], "holes": [[[x,y],...],...]}
PolygonalDomain load_domain_json(const std::string& path, double eps_geom_factor = 1e-9);
PolygonalDomain parse_domain_json(const std::string& text, double eps_geom_factor = 1e-9);
std::string domain_to_json(const PolygonalDomain& d);

}  // namespace bsp
