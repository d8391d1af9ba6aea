#pragma once

#include <cmath>
#include <vector>

namespace bsp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 a) { return dot(a, a); }
inline double norm(Point2 a) { return std::sqrt(norm2(a)); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

// Twice the signed area of triangle abc; > 0 for a counter-clockwise turn.
inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

// Twice the signed area of a ring (positive = counter-clockwise).
double ring_area2(const std::vector<Point2>& ring);

// Distance from p to segment ab.
double point_segment_dist(Point2 p, Point2 a, Point2 b);

// Minimum distance between segments ab and cd.
double segment_segment_dist(Point2 a, Point2 b, Point2 c, Point2 d);

// Appends to `out` every parameter t in [0,1] at which segment p+t*(q-p)
// touches segment ab (proper crossings, endpoint contacts, and the ends of a
// collinear overlap). `eps` is an absolute distance tolerance.
void collect_touch_params(Point2 p, Point2 q, Point2 a, Point2 b, double eps,
                          std::vector<double>& out);

// Strict point-in-ring parity test (ray crossing). Undefined behaviour within
// distance ~eps of the ring itself; callers must handle the boundary band.
bool point_in_ring(Point2 p, const std::vector<Point2>& ring);

}  // namespace bsp
