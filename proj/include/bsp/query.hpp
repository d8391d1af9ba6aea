#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "bsp/envelope.hpp"

namespace bsp {

struct BuildConfig {
  double delta = 1.0;           // corner-partition exponent in (0, 1]
  int cap_override = 0;         // 0 = automatic: n (delta == 1) or ceil(n^delta)
  double eps_geom_factor = 1e-9;   // times the bounding-box diameter
  double eps_env_factor = 1e-11;   // times the boundary length
  int env_samples = 9;             // crossing-scan samples per envelope piece
  int threads = -1;                // -1 = runtime default, 0 = serial reference
};

struct PathResult {
  double length = 0;
  bool direct = false;
  int witness_u = -1, witness_v = -1;  // gateway corners for corner paths
  std::vector<Point2> polyline;
  int point_locations = 0;  // block point locations spent on this query
};

// One corner subset's grid, tiling, and block diagrams.
struct SubsetStructure {
  std::vector<int> corners;
  std::vector<char> mask;
  GridIndex grid;
  BlockTiling tiling;
  std::vector<BlockDiagram> blocks;  // s_interval * runs + run
  int cap = 0;

  int block_id(int s_interval, int run) const {
    return s_interval * static_cast<int>(tiling.runs.size()) + run;
  }
};

struct BuildStats {
  int breakpoints_total = 0;
  int breakpoints_corner = 0;
  int breakpoints_root_switch = 0;
  int breakpoints_vis_event = 0;
  std::vector<int> row_switches;  // per corner
  int grid_intervals = 0;
  int block_count = 0;
  int total_funcs = 0;
  int total_regions = 0;
  int total_env_vertices = 0;
  int max_block_env_vertices = 0;
  int max_block_funcs = 0;
  std::uint32_t max_pair_crossings = 0;
  double build_seconds = 0;
};

class QueryStructure {
public:
  PolygonalDomain domain;
  Channel channel;
  BuildConfig config;
  double eps_env = 0;
  VisibilityGraph graph;
  GeodesicTable table;
  std::vector<Breakpoint> events;       // all visibility events on the boundary
  std::vector<BoundarySPMRow> rows;     // per corner
  std::vector<SubsetStructure> subsets; // ascending by smallest corner id
  BuildStats stats;

  int subset_count() const { return static_cast<int>(subsets.size()); }

  PathResult query(double s, double t) const;
  PathResult query_points(Point2 p, Point2 q) const;

  BlockContext block_context(const SubsetStructure& sub, int s_interval, int run) const;

  // Lengths of a corner-mediated candidate from one subset; +inf when the
  // subset offers none. Used by query() and by the equivalence tests.
  struct Candidate {
    double h = 0;
    int u = -1, v = -1;
  };
  std::optional<Candidate> subset_candidate(const SubsetStructure& sub, double s, double t) const;
};

QueryStructure build_query_structure(PolygonalDomain domain, const BuildConfig& config = {});

// Corner partition for the space/query-time tradeoff: ceil(n^(1-delta))
// contiguous chunks of near equal size, ordered by smallest corner id.
std::vector<std::vector<int>> partition_corners(int n, double delta);

}  // namespace bsp
