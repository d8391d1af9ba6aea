#pragma once

#include <cstdint>
#include <vector>

#include "bsp/channel.hpp"
#include "bsp/geodesic.hpp"

namespace bsp {

enum BreakKind : unsigned {
  kBreakCorner = 1u,
  kBreakRootSwitch = 2u,
  kBreakVisEvent = 4u,
};

struct Breakpoint {
  double t = 0;
  unsigned kinds = 0;
  int source_row = -1;    // corner whose map induced a root switch here
  int event_target = -1;  // corner whose visibility changes here
};

// The trace of one corner's shortest-path map on a channel: maximal intervals
// with a common root (the last corner before the channel point), plus the
// switch parameters between them.
struct BoundarySPMRow {
  int source = -1;
  std::vector<double> starts;  // interval start parameters, starts[0] == 0
  std::vector<int> roots;      // root per interval
  std::vector<Breakpoint> switches;  // non-endpoint root switches, sorted

  int root_at(double t) const;
  // Number of switches with parameter strictly inside (t0, t1).
  int switches_inside(double t0, double t1) const;
};

// Parameters where the set of corners visible from the channel changes:
// shadow-ray crossings, and (off the boundary only) crossings of segments
// between mutually visible corner pairs, where the angular order flips.
std::vector<Breakpoint> visibility_events(const PolygonalDomain& d, const VisibilityGraph& g,
                                          const Channel& ch, int threads = 0);

// candidate_mask: optional per-corner filter for the admissible roots
// (side-restricted channels); empty = all corners admissible.
BoundarySPMRow boundary_spm_row(const PolygonalDomain& d, const GeodesicTable& table,
                                const Channel& ch, const std::vector<Breakpoint>& events,
                                int source, const std::vector<char>& candidate_mask,
                                double eps_env);

// Sorted, deduplicated breakpoints plus the per-interval visible-corner set.
struct GridIndex {
  std::vector<double> params;           // interval starts; params[0] == 0
  std::vector<unsigned> kinds;          // merged kind masks per start
  std::vector<std::uint64_t> vis;       // interval-major bitset, words_per_interval each
  int words_per_interval = 0;
  std::vector<int> edge_first;          // per channel edge: first interval index (+ sentinel)
  double total = 0;

  int size() const { return static_cast<int>(params.size()); }
  double start(int k) const { return params[k]; }
  double end(int k) const { return k + 1 < size() ? params[k + 1] : total; }
  int locate(double s) const;  // half-open intervals, OutOfRange outside [0,total]
  bool visible(int interval, int corner) const {
    return (vis[static_cast<size_t>(interval) * words_per_interval + corner / 64] >>
            (corner % 64)) & 1u;
  }
  std::vector<int> visible_list(int interval, int n) const;
  int edge_of_interval(int k) const;
  int count_kind(unsigned mask) const;
};

GridIndex build_grid(const PolygonalDomain& d, const Channel& ch,
                     std::vector<Breakpoint> breakpoints, int threads = 0);

// Tiling of the parameter square into blocks: every grid interval on the
// s-axis times runs of at most `cap` consecutive t-intervals, with runs never
// spanning a channel edge.
struct BlockTiling {
  struct Run {
    int edge = 0;
    int first_interval = 0;
    int count = 0;
  };
  std::vector<Run> runs;
  std::vector<int> run_of_interval;

  int runs_per_s_interval() const { return static_cast<int>(runs.size()); }
};

BlockTiling make_blocks(const GridIndex& grid, int cap);

}  // namespace bsp
