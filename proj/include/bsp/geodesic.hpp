#pragma once

#include <vector>

#include "bsp/domain.hpp"

namespace bsp {

// Weighted graph over mutually visible corner pairs.
struct VisibilityGraph {
  int n = 0;
  std::vector<double> w;  // n*n, Euclidean length or +inf when not visible

  double weight(int i, int j) const { return w[static_cast<size_t>(i) * n + j]; }
  bool has_edge(int i, int j) const { return std::isfinite(weight(i, j)); }
  int degree(int i) const;
};

// All-pairs corner geodesics with predecessors for path extraction.
struct GeodesicTable {
  int n = 0;
  std::vector<double> dist;  // n*n
  std::vector<int> pred;     // n*n; pred[u*n+v] = previous corner on the u->v path, -1 at v==u

  double d(int u, int v) const { return dist[static_cast<size_t>(u) * n + v]; }
  // Corner chain from u to v inclusive.
  std::vector<int> path(int u, int v) const;
};

struct ShortestPathTree {
  Point2 source;
  std::vector<int> parent;   // -1 = direct to source
  std::vector<double> dist;  // geodesic distance to each corner
};

struct OraclePath {
  double length = 0;
  std::vector<Point2> polyline;  // source, corner chain, target
};

VisibilityGraph build_visibility_graph(const PolygonalDomain& d, int threads = 0);

GeodesicTable all_pairs_corner_distances(const PolygonalDomain& d, const VisibilityGraph& g,
                                         int threads = 0);

ShortestPathTree shortest_path_tree(const PolygonalDomain& d, const VisibilityGraph& g,
                                    Point2 source);

// Ground-truth geodesic between arbitrary free-space points: Dijkstra over
// the corner graph augmented with the two endpoints. Equal-length paths
// resolve to the lexicographically smallest corner-id sequence.
OraclePath oracle_shortest_path(const PolygonalDomain& d, const VisibilityGraph& g, Point2 p,
                                Point2 q);

double polyline_length(const std::vector<Point2>& pts);

}  // namespace bsp
