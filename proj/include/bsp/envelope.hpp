#pragma once

#include <vector>

#include "bsp/boundary_maps.hpp"

namespace bsp {

// One partial distance function h(s,t) = |p(s)u| + d(u,v) + |v p(t)| on a
// rectangular subdomain: the block's s-interval times a maximal run of
// t-intervals sharing the root v with respect to u.
struct PartialFunc {
  int u = -1, v = -1;
  int t_first = 0, t_last = 0;  // inclusive grid-interval range
};

// Explicit coefficients of one partial function over its subdomain:
// h(s,t) = sqrt((s+a)^2 + b^2) + sqrt((t+c)^2 + d^2) + duv.
struct FuncGeom {
  double a = 0, b = 0, c = 0, d = 0, duv = 0;
  double s_lo = 0, s_hi = 0, t_lo = 0, t_hi = 0;

  double eval(double s, double t) const;
  double cos_s(double s) const;  // d|p(s)u|/ds
  double cos_t(double t) const;  // d|v p(t)|/dt
};

// Pointwise boundary between {h_i < h_j} and {h_j < h_i} over the t-overlap
// of two subdomains, extended to the walls where one side wins the whole
// column. orient > 0 means h_i - h_j increases with s, so the region where i
// wins lies below the boundary (the curve constrains M(i) from above).
struct PairBoundary {
  FuncGeom gi, gj;
  double s_lo = 0, s_hi = 0;  // block s-interval
  double t_lo = 0, t_hi = 0;  // subdomain overlap
  int i = -1, j = -1;
  int orient = +1;

  double diff(double s, double t) const { return gi.eval(s, t) - gj.eval(s, t); }
  bool column_crosses(double t) const;
  double eval(double t, double eps_env) const;
  // Maximal t-ranges over which the columns cross (the bisector proper).
  std::vector<std::pair<double, double>> crossing_spans(double eps_env) const;
};

// t-monotone chain of curve fragments covering a t-range. src: the competitor
// function index, or kNoCurve where no competitor constrains.
constexpr int kNoCurve = -1;

struct EnvFrag {
  double t0 = 0, t1 = 0;
  int src = kNoCurve;
};

struct RegionSlab {
  double t0 = 0, t1 = 0;
  int top_src = kNoCurve;  // competitor bounding from above, or the wall s_hi
  int bot_src = kNoCurve;  // competitor bounding from below, or the wall s_lo
};

struct MinRegion {
  int func = -1;
  int first_slab = 0, slab_count = 0;
};

struct BlockDiagram {
  std::vector<PartialFunc> funcs;
  std::vector<RegionSlab> slabs;
  std::vector<MinRegion> regions;
  // Point location: merged slab boundaries and per-cell regions ordered by s.
  std::vector<double> pl_ts;
  std::vector<int> pl_first;
  std::vector<int> pl_regions;
  std::uint32_t env_vertices = 0;
  std::uint32_t max_pair_crossings = 0;
};

// Everything needed to build or evaluate one block.
struct BlockContext {
  const PolygonalDomain* domain = nullptr;
  const GeodesicTable* table = nullptr;
  const Channel* ch_s = nullptr;
  const Channel* ch_t = nullptr;
  const GridIndex* grid_s = nullptr;
  const GridIndex* grid_t = nullptr;
  int s_interval = 0;
  BlockTiling::Run run;
  const std::vector<BoundarySPMRow>* rows = nullptr;  // indexed by corner id
  const std::vector<char>* u_mask = nullptr;          // nullable: all corners
  double eps_env = 1e-11;
  int env_samples = 9;

  double s_lo() const { return grid_s->start(s_interval); }
  double s_hi() const { return grid_s->end(s_interval); }
  double t_lo() const { return grid_t->start(run.first_interval); }
  double t_hi() const { return grid_t->end(run.first_interval + run.count - 1); }
};

std::vector<PartialFunc> partial_functions(const BlockContext& ctx);

FuncGeom make_func_geom(const BlockContext& ctx, const PartialFunc& f);

// h_i at (s,t); OutsideSubdomain when (s,t) is not in C_i (up to eps_geom).
double eval_h(const BlockContext& ctx, const PartialFunc& f, double s, double t);

// Boundary for anchor `i` against `j`; DisjointSubdomains when u_i == u_j or
// the t-ranges only touch.
PairBoundary make_pair_boundary(const BlockContext& ctx, const std::vector<PartialFunc>& funcs,
                                int i, int j);

// Lower (min over s) or upper (max over s) envelope of the boundaries listed
// for one anchor, as a chain covering the anchor's full t-range.
std::vector<EnvFrag> envelope_chain(const BlockContext& ctx, const std::vector<PairBoundary>& curves,
                                    bool lower, double t0, double t1,
                                    std::uint32_t* max_crossings = nullptr,
                                    std::uint32_t* vertices = nullptr);

BlockDiagram build_block_diagram(const BlockContext& ctx);

// Point location inside a built block. Returns the region index, or -1 when
// the block has no functions. Boundary ties resolve to the smallest h, then
// the smallest function index.
int locate_in_block(const BlockContext& ctx, const BlockDiagram& bd, double s, double t);

}  // namespace bsp
