#include "bsp/geometry.hpp"

#include <algorithm>

#include "bsp/errors.hpp"

namespace bsp {

const char* err_name(Err e) {
  switch (e) {
    case Err::SelfIntersectingRing: return "SelfIntersectingRing";
    case Err::OverlappingRings: return "OverlappingRings";
    case Err::HoleOutsideOuter: return "HoleOutsideOuter";
    case Err::DuplicateCorner: return "DuplicateCorner";
    case Err::DegenerateRing: return "DegenerateRing";
    case Err::OutOfRange: return "OutOfRange";
    case Err::NotOnBoundary: return "NotOnBoundary";
    case Err::PointOutsideFreeSpace: return "PointOutsideFreeSpace";
    case Err::DisconnectedFreeSpace: return "DisconnectedFreeSpace";
    case Err::OutsideSubdomain: return "OutsideSubdomain";
    case Err::DisjointSubdomains: return "DisjointSubdomains";
    case Err::CoverageGap: return "CoverageGap";
    case Err::SegmentOutsideFreeSpace: return "SegmentOutsideFreeSpace";
    case Err::OffsetOutOfRange: return "OffsetOutOfRange";
    case Err::UnknownBlock: return "UnknownBlock";
    case Err::IoError: return "IoError";
    case Err::IndexVersionMismatch: return "IndexVersionMismatch";
    case Err::ParseError: return "ParseError";
  }
  return "Error";
}

double ring_area2(const std::vector<Point2>& ring) {
  double a = 0.0;
  for (size_t i = 0; i < ring.size(); ++i) {
    Point2 p = ring[i];
    Point2 q = ring[(i + 1) % ring.size()];
    a += cross(p, q);
  }
  return a;
}

double point_segment_dist(Point2 p, Point2 a, Point2 b) {
  Point2 e = b - a;
  double len2 = norm2(e);
  if (len2 == 0.0) return dist(p, a);
  double t = std::clamp(dot(p - a, e) / len2, 0.0, 1.0);
  return dist(p, a + t * e);
}

double segment_segment_dist(Point2 a, Point2 b, Point2 c, Point2 d) {
  // Proper crossing means distance zero.
  double o1 = orient(a, b, c), o2 = orient(a, b, d);
  double o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != o2 && o3 != o4)
    return 0.0;
  double m = point_segment_dist(c, a, b);
  m = std::min(m, point_segment_dist(d, a, b));
  m = std::min(m, point_segment_dist(a, c, d));
  m = std::min(m, point_segment_dist(b, c, d));
  return m;
}

void collect_touch_params(Point2 p, Point2 q, Point2 a, Point2 b, double eps,
                          std::vector<double>& out) {
  Point2 r = q - p;
  Point2 e = b - a;
  double rlen = norm(r);
  double elen = norm(e);
  if (rlen == 0.0) return;
  double denom = cross(r, e);
  double scale = rlen * elen;
  if (std::abs(denom) > 1e-14 * scale) {
    double t = cross(a - p, e) / denom;
    double u = cross(a - p, r) / denom;
    double te = eps / rlen;
    double ue = elen > 0 ? eps / elen : 0.0;
    if (t >= -te && t <= 1.0 + te && u >= -ue && u <= 1.0 + ue)
      out.push_back(std::clamp(t, 0.0, 1.0));
    return;
  }
  // Near-parallel. Only collinear overlaps matter.
  if (point_segment_dist(a, p, q) > eps && point_segment_dist(b, p, q) > eps &&
      point_segment_dist(p, a, b) > eps && point_segment_dist(q, a, b) > eps)
    return;
  double ta = dot(a - p, r) / (rlen * rlen);
  double tb = dot(b - p, r) / (rlen * rlen);
  if (ta > tb) std::swap(ta, tb);
  double lo = std::max(0.0, ta), hi = std::min(1.0, tb);
  if (lo <= hi + eps / rlen) {
    out.push_back(std::clamp(lo, 0.0, 1.0));
    out.push_back(std::clamp(hi, 0.0, 1.0));
  }
}

bool point_in_ring(Point2 p, const std::vector<Point2>& ring) {
  bool in = false;
  size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    Point2 a = ring[j], b = ring[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xint) in = !in;
    }
  }
  return in;
}

}  // namespace bsp
