#include "bsp/geodesic.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "bsp/parallel.hpp"

namespace bsp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra over an explicit adjacency matrix with deterministic tie-breaking:
// among equal-length paths the lexicographically smallest corner-id sequence
// wins. Sequences stay short (paths bend at few corners), so carrying them is
// cheap at this scale.
struct DijkstraResult {
  std::vector<double> dist;
  std::vector<int> pred;
  std::vector<std::vector<int>> seq;  // corner sequence excluding the source
};

DijkstraResult dijkstra(int nn, const std::vector<double>& w, int source) {
  DijkstraResult r;
  r.dist.assign(nn, kInf);
  r.pred.assign(nn, -1);
  r.seq.assign(nn, {});
  std::vector<char> done(nn, 0);
  r.dist[source] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [dd, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (int v = 0; v < nn; ++v) {
      double wd = w[static_cast<size_t>(u) * nn + v];
      if (!std::isfinite(wd) || done[v]) continue;
      double nd = dd + wd;
      if (nd < r.dist[v]) {
        r.dist[v] = nd;
        r.pred[v] = u;
        r.seq[v] = r.seq[u];
        r.seq[v].push_back(v);
        pq.push({nd, v});
      } else if (nd == r.dist[v]) {
        std::vector<int> cand = r.seq[u];
        cand.push_back(v);
        if (cand < r.seq[v]) {
          r.pred[v] = u;
          r.seq[v] = std::move(cand);
        }
      }
    }
  }
  return r;
}

}  // namespace

int VisibilityGraph::degree(int i) const {
  int deg = 0;
  for (int j = 0; j < n; ++j)
    if (j != i && has_edge(i, j)) ++deg;
  return deg;
}

VisibilityGraph build_visibility_graph(const PolygonalDomain& d, int threads) {
  VisibilityGraph g;
  g.n = d.n();
  g.w.assign(static_cast<size_t>(g.n) * g.n, kInf);
  auto* w = g.w.data();
  int nn = g.n;
  par::for_index(nn, threads, [&](std::ptrdiff_t i) {
    for (int j = static_cast<int>(i) + 1; j < nn; ++j) {
      if (d.segment_free(d.corner(static_cast<int>(i)), d.corner(j))) {
        double len = dist(d.corner(static_cast<int>(i)), d.corner(j));
        w[i * nn + j] = len;
        w[static_cast<size_t>(j) * nn + i] = len;
      }
    }
  });
  return g;
}

GeodesicTable all_pairs_corner_distances(const PolygonalDomain& d, const VisibilityGraph& g,
                                         int threads) {
  GeodesicTable t;
  t.n = g.n;
  t.dist.assign(static_cast<size_t>(t.n) * t.n, kInf);
  t.pred.assign(static_cast<size_t>(t.n) * t.n, -1);
  int nn = t.n;
  par::for_index(nn, threads, [&](std::ptrdiff_t u) {
    DijkstraResult r = dijkstra(nn, g.w, static_cast<int>(u));
    for (int v = 0; v < nn; ++v) {
      if (!std::isfinite(r.dist[v]))
        fail(Err::DisconnectedFreeSpace, "corner unreachable in the visibility graph");
      t.dist[u * nn + v] = r.dist[v];
      t.pred[u * nn + v] = r.pred[v];
    }
  });
  (void)d;
  return t;
}

std::vector<int> GeodesicTable::path(int u, int v) const {
  std::vector<int> chain;
  int cur = v;
  while (cur != -1 && cur != u) {
    chain.push_back(cur);
    cur = pred[static_cast<size_t>(u) * n + cur];
  }
  chain.push_back(u);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

namespace {

// Augmented matrix over corners + {p, q} (ids n and n+1).
std::vector<double> augmented_weights(const PolygonalDomain& d, const VisibilityGraph& g,
                                      Point2 p, Point2 q) {
  int nn = g.n + 2;
  std::vector<double> w(static_cast<size_t>(nn) * nn, kInf);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) w[static_cast<size_t>(i) * nn + j] = g.weight(i, j);
  for (int i = 0; i < g.n; ++i) {
    if (d.segment_free(p, d.corner(i))) {
      double len = dist(p, d.corner(i));
      w[static_cast<size_t>(g.n) * nn + i] = len;
      w[static_cast<size_t>(i) * nn + g.n] = len;
    }
    if (d.segment_free(q, d.corner(i))) {
      double len = dist(q, d.corner(i));
      w[static_cast<size_t>(g.n + 1) * nn + i] = len;
      w[static_cast<size_t>(i) * nn + g.n + 1] = len;
    }
  }
  return w;
}

}  // namespace

ShortestPathTree shortest_path_tree(const PolygonalDomain& d, const VisibilityGraph& g,
                                    Point2 source) {
  if (!d.in_closed_free_space(source))
    fail(Err::PointOutsideFreeSpace, "tree source outside the free space");
  int nn = g.n + 2;
  auto w = augmented_weights(d, g, source, source);
  DijkstraResult r = dijkstra(nn, w, g.n);
  ShortestPathTree t;
  t.source = source;
  t.parent.assign(g.n, -1);
  t.dist.assign(g.n, kInf);
  for (int v = 0; v < g.n; ++v) {
    if (!std::isfinite(r.dist[v]))
      fail(Err::DisconnectedFreeSpace, "corner unreachable from the tree source");
    t.dist[v] = r.dist[v];
    t.parent[v] = r.pred[v] == g.n ? -1 : r.pred[v];
  }
  return t;
}

OraclePath oracle_shortest_path(const PolygonalDomain& d, const VisibilityGraph& g, Point2 p,
                                Point2 q) {
  if (!d.in_closed_free_space(p) || !d.in_closed_free_space(q))
    fail(Err::PointOutsideFreeSpace, "oracle query point outside the free space");
  OraclePath out;
  if (dist(p, q) <= d.eps_geom()) {
    out.length = 0.0;
    out.polyline = {p};
    return out;
  }
  if (d.segment_free(p, q)) {
    out.length = dist(p, q);
    out.polyline = {p, q};
    return out;
  }
  int nn = g.n + 2;
  auto w = augmented_weights(d, g, p, q);
  DijkstraResult r = dijkstra(nn, w, g.n);
  int target = g.n + 1;
  if (!std::isfinite(r.dist[target]))
    fail(Err::DisconnectedFreeSpace, "oracle target unreachable");
  out.length = r.dist[target];
  out.polyline.push_back(p);
  for (int id : r.seq[target])
    out.polyline.push_back(id < g.n ? d.corner(id) : q);
  return out;
}

double polyline_length(const std::vector<Point2>& pts) {
  double len = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) len += dist(pts[i], pts[i + 1]);
  return len;
}

}  // namespace bsp
