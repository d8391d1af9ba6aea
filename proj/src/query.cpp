#include "bsp/query.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "bsp/parallel.hpp"

namespace bsp {

std::vector<std::vector<int>> partition_corners(int n, double delta) {
  if (!(delta > 0.0) || delta > 1.0) fail(Err::OutOfRange, "delta must lie in (0,1]");
  int m = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 - delta) - 1e-12));
  m = std::clamp(m, 1, n);
  int base = n / m, extra = n % m;
  std::vector<std::vector<int>> parts;
  int at = 0;
  for (int k = 0; k < m; ++k) {
    int size = base + (k < extra ? 1 : 0);
    std::vector<int> part;
    for (int i = 0; i < size; ++i) part.push_back(at++);
    parts.push_back(std::move(part));
  }
  return parts;
}

QueryStructure build_query_structure(PolygonalDomain domain, const BuildConfig& config) {
  auto t_start = std::chrono::steady_clock::now();
  if (!(config.delta > 0.0) || config.delta > 1.0)
    fail(Err::OutOfRange, "delta must lie in (0,1]");

  QueryStructure qs;
  qs.domain = std::move(domain);
  qs.config = config;
  qs.channel = boundary_channel(qs.domain);
  qs.eps_env = config.eps_env_factor * qs.domain.total_length();
  int n = qs.domain.n();
  int threads = config.threads;

  qs.graph = build_visibility_graph(qs.domain, threads);
  qs.table = all_pairs_corner_distances(qs.domain, qs.graph, threads);
  qs.events = visibility_events(qs.domain, qs.graph, qs.channel, threads);

  qs.rows.resize(n);
  auto* rows = qs.rows.data();
  par::for_index(n, threads, [&](std::ptrdiff_t v) {
    rows[v] = boundary_spm_row(qs.domain, qs.table, qs.channel, qs.events, static_cast<int>(v),
                               {}, qs.eps_env);
  });

  auto parts = partition_corners(n, config.delta);
  int cap = config.cap_override;
  if (cap <= 0) {
    cap = config.delta >= 1.0
              ? n
              : std::max(1, static_cast<int>(std::ceil(std::pow(n, config.delta))));
  }

  qs.subsets.resize(parts.size());
  for (size_t k = 0; k < parts.size(); ++k) {
    SubsetStructure& sub = qs.subsets[k];
    sub.corners = parts[k];
    sub.mask.assign(n, 0);
    for (int c : sub.corners) sub.mask[c] = 1;
    sub.cap = cap;

    // Subset grid: corners, the subset's root switches, and the visibility
    // events of the subset's corners.
    std::vector<Breakpoint> bps;
    for (const auto& ev : qs.events)
      if (sub.mask[ev.event_target]) bps.push_back(ev);
    for (int c : sub.corners)
      for (const auto& sw : qs.rows[c].switches) bps.push_back(sw);
    sub.grid = build_grid(qs.domain, qs.channel, std::move(bps), threads);
    sub.tiling = make_blocks(sub.grid, cap);

    int runs = static_cast<int>(sub.tiling.runs.size());
    int total_blocks = sub.grid.size() * runs;
    sub.blocks.resize(total_blocks);
    auto* blocks = sub.blocks.data();
    par::for_index(total_blocks, threads, [&](std::ptrdiff_t b) {
      int s_interval = static_cast<int>(b) / runs;
      int run = static_cast<int>(b) % runs;
      BlockContext ctx = qs.block_context(sub, s_interval, run);
      blocks[b] = build_block_diagram(ctx);
    });
  }

  // Measured statistics.
  BuildStats& st = qs.stats;
  {
    std::vector<Breakpoint> all = qs.events;
    for (const auto& row : qs.rows)
      for (const auto& sw : row.switches) all.push_back(sw);
    GridIndex merged = build_grid(qs.domain, qs.channel, std::move(all), threads);
    st.grid_intervals = merged.size();
    st.breakpoints_total = merged.size();
    st.breakpoints_corner = merged.count_kind(kBreakCorner);
    st.breakpoints_root_switch = merged.count_kind(kBreakRootSwitch);
    st.breakpoints_vis_event = merged.count_kind(kBreakVisEvent);
  }
  st.row_switches.resize(n);
  for (int v = 0; v < n; ++v) st.row_switches[v] = static_cast<int>(qs.rows[v].switches.size());
  for (const auto& sub : qs.subsets) {
    st.block_count += static_cast<int>(sub.blocks.size());
    for (const auto& bd : sub.blocks) {
      st.total_funcs += static_cast<int>(bd.funcs.size());
      st.total_regions += static_cast<int>(bd.regions.size());
      st.total_env_vertices += static_cast<int>(bd.env_vertices);
      st.max_block_env_vertices =
          std::max(st.max_block_env_vertices, static_cast<int>(bd.env_vertices));
      st.max_block_funcs = std::max(st.max_block_funcs, static_cast<int>(bd.funcs.size()));
      st.max_pair_crossings = std::max(st.max_pair_crossings, bd.max_pair_crossings);
    }
  }
  st.build_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return qs;
}

BlockContext QueryStructure::block_context(const SubsetStructure& sub, int s_interval,
                                           int run) const {
  BlockContext ctx;
  ctx.domain = &domain;
  ctx.table = &table;
  ctx.ch_s = &channel;
  ctx.ch_t = &channel;
  ctx.grid_s = &sub.grid;
  ctx.grid_t = &sub.grid;
  ctx.s_interval = s_interval;
  ctx.run = sub.tiling.runs[run];
  ctx.rows = &rows;
  ctx.u_mask = &sub.mask;
  ctx.eps_env = eps_env;
  ctx.env_samples = config.env_samples;
  return ctx;
}

std::optional<QueryStructure::Candidate> QueryStructure::subset_candidate(
    const SubsetStructure& sub, double s, double t) const {
  int si = sub.grid.locate(s);
  int ti = sub.grid.locate(t);
  int run = sub.tiling.run_of_interval[ti];
  BlockContext ctx = block_context(sub, si, run);
  const BlockDiagram& bd = sub.blocks[sub.block_id(si, run)];
  int region = locate_in_block(ctx, bd, s, t);
  if (region < 0) return std::nullopt;
  const PartialFunc& f = bd.funcs[bd.regions[region].func];
  Candidate c;
  c.u = f.u;
  c.v = f.v;
  Point2 ps = channel.point_at(s), pt = channel.point_at(t);
  c.h = dist(ps, domain.corner(f.u)) + table.d(f.u, f.v) + dist(domain.corner(f.v), pt);
  return c;
}

PathResult QueryStructure::query(double s, double t) const {
  double L = domain.total_length();
  if (s < 0 || s >= L || t < 0 || t >= L) fail(Err::OutOfRange, "query parameter outside [0,L)");
  Point2 ps = domain.param_to_point(s);
  Point2 pt = domain.param_to_point(t);
  PathResult res;
  if (dist(ps, pt) <= domain.eps_geom()) {
    res.direct = true;
    res.length = 0;
    res.polyline = {ps};
    return res;
  }
  if (domain.segment_free(ps, pt)) {
    res.direct = true;
    res.length = dist(ps, pt);
    res.polyline = {ps, pt};
    return res;
  }
  bool found = false;
  Candidate best;
  for (const auto& sub : subsets) {
    auto cand = subset_candidate(sub, s, t);
    res.point_locations++;
    if (!cand) continue;
    if (!found || cand->h < best.h) {
      best = *cand;
      found = true;
    }
  }
  if (!found) fail(Err::CoverageGap, "no region claims the query point");
  res.length = best.h;
  res.witness_u = best.u;
  res.witness_v = best.v;
  res.polyline.push_back(ps);
  for (int c : table.path(best.u, best.v)) res.polyline.push_back(domain.corner(c));
  res.polyline.push_back(pt);
  return res;
}

PathResult QueryStructure::query_points(Point2 p, Point2 q) const {
  return query(domain.point_to_param(p), domain.point_to_param(q));
}

}  // namespace bsp
