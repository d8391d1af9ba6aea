#include "bsp/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bsp {

namespace {

void check_ring_shape(const std::vector<Point2>& ring, double eps, const char* what) {
  if (ring.size() < 3) fail(Err::DegenerateRing, std::string(what) + " has fewer than 3 corners");
  for (size_t i = 0; i < ring.size(); ++i) {
    Point2 p = ring[i], q = ring[(i + 1) % ring.size()];
    if (dist(p, q) <= eps)
      fail(Err::DegenerateRing, std::string(what) + " has a zero-length edge");
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      fail(Err::DegenerateRing, std::string(what) + " has a non-finite coordinate");
  }
}

void check_ring_simple(const std::vector<Point2>& ring, double eps, const char* what) {
  size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    Point2 a = ring[i], b = ring[(i + 1) % n];
    for (size_t j = i + 1; j < n; ++j) {
      Point2 c = ring[j], d = ring[(j + 1) % n];
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared corner only; a collinear spur folds back along the edge.
        Point2 shared = (j == i + 1) ? b : a;
        Point2 oa = (j == i + 1) ? a : b;
        Point2 ob = (j == i + 1) ? d : c;
        Point2 u = oa - shared, v = ob - shared;
        if (std::abs(cross(u, v)) <= eps * (norm(u) + norm(v)) && dot(u, v) > 0)
          fail(Err::SelfIntersectingRing, std::string(what) + " folds back on itself");
      } else {
        if (segment_segment_dist(a, b, c, d) <= eps)
          fail(Err::SelfIntersectingRing, std::string(what) + " edges intersect");
      }
    }
  }
}

}  // namespace

PolygonalDomain PolygonalDomain::validate(std::vector<std::vector<Point2>> rings,
                                          double eps_geom_factor) {
  PolygonalDomain d;
  if (rings.empty()) fail(Err::DegenerateRing, "no outer ring");

  double xmin = rings[0][0].x, xmax = xmin, ymin = rings[0][0].y, ymax = ymin;
  for (const auto& r : rings)
    for (Point2 p : r) {
      xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
    }
  d.bbox_diam_ = std::hypot(xmax - xmin, ymax - ymin);
  if (d.bbox_diam_ <= 0) fail(Err::DegenerateRing, "domain has zero extent");
  d.eps_geom_ = eps_geom_factor * d.bbox_diam_;
  double eps = d.eps_geom_;

  for (size_t k = 0; k < rings.size(); ++k) {
    std::string name = k == 0 ? "outer ring" : "hole " + std::to_string(k - 1);
    check_ring_shape(rings[k], eps, name.c_str());
  }

  // Orientation: outer counter-clockwise, holes clockwise (obstacle on the
  // right when walking in storage order). Reversal keeps the first vertex.
  for (size_t k = 0; k < rings.size(); ++k) {
    double a2 = ring_area2(rings[k]);
    bool want_ccw = (k == 0);
    if ((a2 > 0) != want_ccw)
      std::reverse(rings[k].begin() + 1, rings[k].end());
  }

  for (size_t k = 0; k < rings.size(); ++k) {
    std::string name = k == 0 ? "outer ring" : "hole " + std::to_string(k - 1);
    check_ring_simple(rings[k], eps, name.c_str());
  }

  // Distinct corners across all rings.
  {
    std::vector<Point2> all;
    for (const auto& r : rings) all.insert(all.end(), r.begin(), r.end());
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j)
        if (dist(all[i], all[j]) <= eps)
          fail(Err::DuplicateCorner, "two corners coincide");
  }

  // Rings pairwise disjoint (touching counts as overlap).
  for (size_t k = 0; k < rings.size(); ++k)
    for (size_t l = k + 1; l < rings.size(); ++l)
      for (size_t i = 0; i < rings[k].size(); ++i)
        for (size_t j = 0; j < rings[l].size(); ++j) {
          Point2 a = rings[k][i], b = rings[k][(i + 1) % rings[k].size()];
          Point2 c = rings[l][j], e = rings[l][(j + 1) % rings[l].size()];
          if (segment_segment_dist(a, b, c, e) <= eps)
            fail(Err::OverlappingRings,
                 "ring " + std::to_string(k) + " touches ring " + std::to_string(l));
        }

  // Holes strictly inside the outer ring and not inside each other.
  for (size_t k = 1; k < rings.size(); ++k) {
    if (!point_in_ring(rings[k][0], rings[0]))
      fail(Err::HoleOutsideOuter, "hole " + std::to_string(k - 1) + " is not inside the outer ring");
    for (size_t l = 1; l < rings.size(); ++l)
      if (l != k && point_in_ring(rings[k][0], rings[l]))
        fail(Err::OverlappingRings, "hole inside hole");
  }

  d.rings_ = std::move(rings);

  double s = 0.0;
  for (size_t k = 0; k < d.rings_.size(); ++k) {
    const auto& ring = d.rings_[k];
    int first_id = static_cast<int>(d.corners_.size());
    for (size_t i = 0; i < ring.size(); ++i) {
      d.corners_.push_back(ring[i]);
      d.corner_ring_.push_back(static_cast<int>(k));
      d.corner_param_.push_back(0.0);  // filled below
    }
    for (size_t i = 0; i < ring.size(); ++i) {
      BoundaryEdge e;
      e.corner_a = first_id + static_cast<int>(i);
      e.corner_b = first_id + static_cast<int>((i + 1) % ring.size());
      e.a = ring[i];
      e.b = ring[(i + 1) % ring.size()];
      e.len = dist(e.a, e.b);
      e.dir = (1.0 / e.len) * (e.b - e.a);
      e.s0 = s;
      e.ring = static_cast<int>(k);
      d.corner_param_[e.corner_a] = s;
      d.edges_.push_back(e);
      d.edge_start_.push_back(s);
      s += e.len;
    }
  }
  d.total_len_ = s;
  return d;
}

int PolygonalDomain::edge_index_at(double s) const {
  if (s < 0.0 || s >= total_len_ + eps_geom_) fail(Err::OutOfRange, "parameter outside [0,|boundary|)");
  auto it = std::upper_bound(edge_start_.begin(), edge_start_.end(), s);
  int idx = static_cast<int>(it - edge_start_.begin()) - 1;
  if (idx < 0) idx = 0;
  if (idx >= static_cast<int>(edges_.size())) idx = static_cast<int>(edges_.size()) - 1;
  return idx;
}

Point2 PolygonalDomain::param_to_point(double s) const {
  if (s < 0.0 || s >= total_len_) fail(Err::OutOfRange, "parameter outside [0,|boundary|)");
  const BoundaryEdge& e = edges_[edge_index_at(s)];
  return e.a + (s - e.s0) * e.dir;
}

double PolygonalDomain::point_to_param(Point2 q) const {
  // Corners first so that a corner maps to its own traversal parameter.
  for (int i = 0; i < n(); ++i)
    if (dist(q, corners_[i]) <= eps_geom_) return corner_param_[i];
  int best = -1;
  double best_d = eps_geom_;
  for (size_t i = 0; i < edges_.size(); ++i) {
    double dd = point_segment_dist(q, edges_[i].a, edges_[i].b);
    if (dd <= best_d) { best_d = dd; best = static_cast<int>(i); }
  }
  if (best < 0) fail(Err::NotOnBoundary, "point is not on the boundary");
  const BoundaryEdge& e = edges_[best];
  double t = std::clamp(dot(q - e.a, e.dir), 0.0, e.len);
  double s = e.s0 + t;
  if (s >= total_len_) s = 0.0;
  return s;
}

bool PolygonalDomain::in_closed_free_space(Point2 p) const {
  for (const auto& e : edges_)
    if (point_segment_dist(p, e.a, e.b) <= eps_geom_) return true;
  if (!point_in_ring(p, rings_[0])) return false;
  for (size_t k = 1; k < rings_.size(); ++k)
    if (point_in_ring(p, rings_[k])) return false;
  return true;
}

bool PolygonalDomain::segment_free(Point2 x, Point2 y) const {
  thread_local std::vector<double> params;
  params.clear();
  params.push_back(0.0);
  params.push_back(1.0);
  for (const auto& e : edges_)
    collect_touch_params(x, y, e.a, e.b, eps_geom_, params);
  std::sort(params.begin(), params.end());
  Point2 r = y - x;
  for (size_t i = 0; i + 1 < params.size(); ++i) {
    double t0 = params[i], t1 = params[i + 1];
    if (t1 - t0 <= 1e-12) continue;
    Point2 mid = x + (0.5 * (t0 + t1)) * r;
    if (!in_closed_free_space(mid)) return false;
  }
  return true;
}

bool PolygonalDomain::is_visible(Point2 x, Point2 y) const {
  if (!in_closed_free_space(x) || !in_closed_free_space(y))
    fail(Err::PointOutsideFreeSpace, "visibility query point outside the free space");
  return segment_free(x, y);
}

VisibilityProfile PolygonalDomain::visible_corners(Point2 x) const {
  if (!in_closed_free_space(x))
    fail(Err::PointOutsideFreeSpace, "visibility query point outside the free space");
  VisibilityProfile vp;
  vp.at = x;
  for (int i = 0; i < n(); ++i)
    if (segment_free(x, corners_[i])) vp.corners.push_back(i);
  return vp;
}

PolygonalDomain parse_domain_json(const std::string& text, double eps_geom_factor) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::ParseError, e.what());
  }
  auto read_ring = [](const nlohmann::json& arr) {
    std::vector<Point2> ring;
    for (const auto& p : arr) {
      if (!p.is_array() || p.size() != 2) fail(Err::ParseError, "ring vertex is not [x,y]");
      ring.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return ring;
  };
  if (!j.contains("outer")) fail(Err::ParseError, "missing \"outer\" ring");
  std::vector<std::vector<Point2>> rings;
  rings.push_back(read_ring(j["outer"]));
  if (j.contains("holes"))
    for (const auto& h : j["holes"]) rings.push_back(read_ring(h));
  return PolygonalDomain::validate(std::move(rings), eps_geom_factor);
}

PolygonalDomain load_domain_json(const std::string& path, double eps_geom_factor) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_domain_json(ss.str(), eps_geom_factor);
}

std::string domain_to_json(const PolygonalDomain& d) {
  nlohmann::json j;
  auto ring_json = [](const std::vector<Point2>& ring) {
    nlohmann::json arr = nlohmann::json::array();
    for (Point2 p : ring) arr.push_back({p.x, p.y});
    return arr;
  };
  j["outer"] = ring_json(d.rings()[0]);
  j["holes"] = nlohmann::json::array();
  for (size_t k = 1; k < d.rings().size(); ++k) j["holes"].push_back(ring_json(d.rings()[k]));
  return j.dump();
}

}  // namespace bsp
