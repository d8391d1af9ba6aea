#include <algorithm>
#include <optional>

#include "bsp/boundary_maps.hpp"
#include "bsp/parallel.hpp"

namespace bsp {

Point2 Channel::point_at(double s) const {
  int idx = edge_index_at(s);
  const Edge& e = edges[idx];
  return e.a + (s - e.s0) * e.dir;
}

int Channel::edge_index_at(double s) const {
  if (s < 0 || s > total) fail(Err::OutOfRange, "channel parameter out of range");
  int lo = 0, hi = static_cast<int>(edges.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (edges[mid].s0 <= s) lo = mid; else hi = mid - 1;
  }
  return lo;
}

Channel boundary_channel(const PolygonalDomain& d) {
  Channel ch;
  ch.cyclic = true;
  ch.total = d.total_length();
  for (const auto& e : d.edges()) {
    Channel::Edge ce;
    ce.a = e.a; ce.b = e.b; ce.dir = e.dir;
    ce.s0 = e.s0; ce.len = e.len;
    ce.corner_a = e.corner_a; ce.corner_b = e.corner_b;
    ch.edges.push_back(ce);
  }
  return ch;
}

Channel segment_channel(Point2 a, Point2 b) {
  Channel ch;
  ch.cyclic = false;
  Channel::Edge e;
  e.a = a; e.b = b;
  e.len = dist(a, b);
  if (e.len <= 0) fail(Err::SegmentOutsideFreeSpace, "zero-length segment");
  e.dir = (1.0 / e.len) * (b - a);
  e.s0 = 0;
  ch.total = e.len;
  ch.edges.push_back(e);
  return ch;
}

namespace {

// Walks the ray from `from` in direction `dir` and returns the far end of the
// initial free stretch, i.e. where the ray first leaves the closed free
// space. Grazing contacts (corners, collinear edges) do not stop the walk.
std::optional<Point2> first_exit_point(const PolygonalDomain& d, Point2 from, Point2 dir) {
  double reach = 4.0 * d.bbox_diameter();
  Point2 far = from + reach * dir;
  std::vector<double> params;
  params.push_back(0.0);
  params.push_back(1.0);
  for (const auto& e : d.edges()) collect_touch_params(from, far, e.a, e.b, d.eps_geom(), params);
  std::sort(params.begin(), params.end());
  double eps_t = d.eps_geom() / reach;
  double limit = -1.0;
  for (size_t i = 0; i + 1 < params.size(); ++i) {
    double t0 = params[i], t1 = params[i + 1];
    if (t1 - t0 <= eps_t) continue;
    Point2 mid = from + (0.5 * (t0 + t1)) * (far - from);
    if (!d.in_closed_free_space(mid)) { limit = t0; break; }
  }
  if (limit < 0) return std::nullopt;        // never leaves (cannot happen for rays)
  if (limit <= eps_t) return std::nullopt;   // blocked immediately
  return from + limit * (far - from);
}

void push_channel_hits(const Channel& ch, Point2 a, Point2 b, double eps, int target,
                       std::vector<Breakpoint>& out) {
  for (const auto& e : ch.edges) {
    std::vector<double> ts;
    collect_touch_params(a, b, e.a, e.b, eps, ts);
    for (double t : ts) {
      Point2 p = a + t * (b - a);
      double along = std::clamp(dot(p - e.a, e.dir), 0.0, e.len);
      out.push_back({e.s0 + along, kBreakVisEvent, -1, target});
    }
  }
}

}  // namespace

std::vector<Breakpoint> visibility_events(const PolygonalDomain& d, const VisibilityGraph& g,
                                          const Channel& ch, int threads) {
  int n = d.n();
  std::vector<std::vector<Breakpoint>> per_target(n);
  par::for_index(n, threads, [&](std::ptrdiff_t wi) {
    int w = static_cast<int>(wi);
    auto& out = per_target[w];
    for (int c = 0; c < n; ++c) {
      if (c == w || !g.has_edge(w, c)) continue;
      // Shadow of w behind the occluder c: the ray from c away from w, up to
      // where it leaves the free space.
      Point2 cw = d.corner(c) - d.corner(w);
      double len = norm(cw);
      Point2 dir = (1.0 / len) * cw;
      auto exit = first_exit_point(d, d.corner(c), dir);
      if (!exit) continue;
      push_channel_hits(ch, d.corner(c), *exit, d.eps_geom(), w, out);
    }
    if (!ch.cyclic) {
      // Angular-order flips on a free-space segment: crossings of the open
      // segment between two mutually visible corners.
      for (int c = 0; c < n; ++c) {
        if (c <= w || !g.has_edge(w, c)) continue;
        push_channel_hits(ch, d.corner(w), d.corner(c), d.eps_geom(), w, out);
      }
    }
  });
  std::vector<Breakpoint> events;
  for (auto& v : per_target) events.insert(events.end(), v.begin(), v.end());
  std::sort(events.begin(), events.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.t < b.t; });
  return events;
}

}  // namespace bsp
