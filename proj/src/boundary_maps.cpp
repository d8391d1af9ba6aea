#include "bsp/boundary_maps.hpp"

#include <algorithm>
#include <cmath>

#include "bsp/parallel.hpp"
#include "bsp/rootsolve.hpp"

namespace bsp {

int BoundarySPMRow::root_at(double t) const {
  auto it = std::upper_bound(starts.begin(), starts.end(), t);
  int idx = static_cast<int>(it - starts.begin()) - 1;
  if (idx < 0) idx = 0;
  return roots[idx];
}

int BoundarySPMRow::switches_inside(double t0, double t1) const {
  int count = 0;
  for (const auto& b : switches)
    if (b.t > t0 && b.t < t1) ++count;
  return count;
}

namespace {

struct Candidate {
  int corner;
  double offset;  // geodesic distance from the row source to this root
  double foot;    // channel parameter of the perpendicular foot
  double height;  // distance of the corner to the edge's supporting line
  double eval(double t) const {
    return offset + std::sqrt((t - foot) * (t - foot) + height * height);
  }
};

int argmin_at(const std::vector<Candidate>& cands, double t) {
  int best = -1;
  double best_v = 0;
  for (size_t i = 0; i < cands.size(); ++i) {
    double v = cands[i].eval(t);
    if (best < 0 || v < best_v || (v == best_v && cands[i].corner < cands[best].corner)) {
      best = static_cast<int>(i);
      best_v = v;
    }
  }
  return best;
}

// Lower-envelope walk over the candidate distance functions on [lo, hi].
// Appends (start, root) pairs; the first entry starts at lo. Seeded at the
// piece midpoint and walked outwards in both directions: at the piece ends
// two candidates routinely tie exactly (a path grazing a corner splits into
// two equal decompositions there) and an endpoint seed would pick blindly.
void walk_envelope(const std::vector<Candidate>& cands, double lo, double hi, double eps_env,
                   std::vector<std::pair<double, int>>& out) {
  if (cands.empty()) return;
  double width = hi - lo;
  double inset = std::max(eps_env, width * 1e-9);
  double probe_off = std::max(inset, width * 1e-7);
  double mid = 0.5 * (lo + hi);
  int guard_max = 16 * static_cast<int>(cands.size()) + 16;

  // Crossings within the inset of either end belong to the adjacent piece
  // (corners and events are breakpoints in their own right).
  auto crossings_with = [&](int cur, double a, double b, bool earliest) {
    double best = earliest ? b : a;
    bool found = false;
    for (size_t i = 0; i < cands.size(); ++i) {
      if (static_cast<int>(i) == cur) continue;
      auto roots = sqrt_diff_roots(cands[i].offset - cands[cur].offset, cands[i].foot,
                                   cands[i].height, cands[cur].foot, cands[cur].height, a, b,
                                   eps_env);
      for (double r : roots) {
        if (r <= a || r >= b) continue;
        if (earliest ? r < best : r > best) {
          best = r;
          found = true;
        }
      }
    }
    return std::pair<bool, double>{found, best};
  };

  int seed = argmin_at(cands, mid);

  // Left leg: switches in (lo, mid], collected right-to-left.
  std::vector<std::pair<double, int>> left;  // (param, winner to the right of it)
  {
    int cur = seed;
    double t1 = mid;
    for (int guard = 0; guard < guard_max; ++guard) {
      auto [found, r] = crossings_with(cur, lo + inset, t1 - inset, false);
      if (!found) break;
      int prev = argmin_at(cands, std::max(lo, r - probe_off));
      if (prev != cur) {
        left.push_back({r, cands[cur].corner});
        cur = prev;
      }
      t1 = r;
    }
    out.push_back({lo, cands[cur].corner});
  }
  for (auto it = left.rbegin(); it != left.rend(); ++it) out.push_back(*it);

  // Right leg: switches in [mid, hi).
  {
    int cur = seed;
    double t0 = mid;
    for (int guard = 0; guard < guard_max; ++guard) {
      auto [found, r] = crossings_with(cur, t0 + inset, hi - inset, true);
      if (!found) break;
      int next = argmin_at(cands, std::min(hi, r + probe_off));
      if (next != cur) {
        out.push_back({r, cands[next].corner});
        cur = next;
      }
      t0 = r;
    }
  }
}

}  // namespace

BoundarySPMRow boundary_spm_row(const PolygonalDomain& d, const GeodesicTable& table,
                                const Channel& ch, const std::vector<Breakpoint>& events,
                                int source, const std::vector<char>& candidate_mask,
                                double eps_env) {
  BoundarySPMRow row;
  row.source = source;

  std::vector<std::pair<double, int>> seq;  // (start, root) over the whole channel
  size_t ev_idx = 0;

  for (const auto& edge : ch.edges) {
    // Subdivide the edge at visibility events: the candidate set is constant
    // strictly inside each piece.
    std::vector<double> cuts;
    cuts.push_back(edge.s0);
    double edge_end = edge.s0 + edge.len;
    while (ev_idx < events.size() && events[ev_idx].t < edge_end) {
      if (events[ev_idx].t > edge.s0) cuts.push_back(events[ev_idx].t);
      ++ev_idx;
    }
    cuts.push_back(edge_end);
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double a, double b) { return b - a <= d.eps_geom(); }),
               cuts.end());

    for (size_t p = 0; p + 1 < cuts.size(); ++p) {
      double lo = cuts[p], hi = cuts[p + 1];
      if (hi - lo <= d.eps_geom()) continue;
      Point2 mid = ch.point_at(0.5 * (lo + hi));
      std::vector<Candidate> cands;
      for (int w = 0; w < d.n(); ++w) {
        if (!candidate_mask.empty() && !candidate_mask[w]) continue;
        if (!d.segment_free(mid, d.corner(w))) continue;
        Candidate c;
        c.corner = w;
        c.offset = table.d(source, w);
        c.foot = edge.s0 + dot(d.corner(w) - edge.a, edge.dir);
        c.height = std::abs(cross(edge.dir, d.corner(w) - edge.a));
        cands.push_back(c);
      }
      walk_envelope(cands, lo, hi, eps_env, seq);
    }
  }

  // Merge adjacent intervals with equal roots; switches are what remains.
  for (const auto& [start, root] : seq) {
    if (!row.starts.empty() && row.roots.back() == root) continue;
    if (!row.starts.empty() && start - row.starts.back() <= d.eps_geom()) {
      row.roots.back() = root;  // degenerate sliver, keep the later winner
      continue;
    }
    row.starts.push_back(start);
    row.roots.push_back(root);
  }
  for (size_t i = 1; i < row.starts.size(); ++i) {
    bool at_corner = false;
    for (const auto& edge : ch.edges)
      if (std::abs(edge.s0 - row.starts[i]) <= d.eps_geom()) at_corner = true;
    if (!at_corner)
      row.switches.push_back({row.starts[i], kBreakRootSwitch, source, -1});
  }
  return row;
}

int GridIndex::locate(double s) const {
  if (s < 0 || s > total) fail(Err::OutOfRange, "parameter outside the channel");
  auto it = std::upper_bound(params.begin(), params.end(), s);
  int idx = static_cast<int>(it - params.begin()) - 1;
  if (idx < 0) idx = 0;
  if (idx >= size()) idx = size() - 1;
  return idx;
}

std::vector<int> GridIndex::visible_list(int interval, int n) const {
  std::vector<int> out;
  for (int w = 0; w < n; ++w)
    if (visible(interval, w)) out.push_back(w);
  return out;
}

int GridIndex::edge_of_interval(int k) const {
  auto it = std::upper_bound(edge_first.begin(), edge_first.end(), k);
  return static_cast<int>(it - edge_first.begin()) - 1;
}

int GridIndex::count_kind(unsigned mask) const {
  int c = 0;
  for (unsigned k : kinds)
    if (k & mask) ++c;
  return c;
}

GridIndex build_grid(const PolygonalDomain& d, const Channel& ch,
                     std::vector<Breakpoint> breakpoints, int threads) {
  GridIndex grid;
  grid.total = ch.total;
  for (const auto& e : ch.edges)
    breakpoints.push_back({e.s0, kBreakCorner, -1, -1});
  std::sort(breakpoints.begin(), breakpoints.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.t < b.t; });

  // Merge within the geometric tolerance; a merged breakpoint keeps all kinds.
  double eps = d.eps_geom();
  for (const auto& b : breakpoints) {
    if (b.t >= ch.total - eps) continue;  // merges with the wrap/end line
    if (!grid.params.empty() && b.t - grid.params.back() <= eps) {
      grid.kinds.back() |= b.kinds;
      continue;
    }
    grid.params.push_back(b.t);
    grid.kinds.push_back(b.kinds);
  }
  if (grid.params.empty() || grid.params.front() > eps) {
    grid.params.insert(grid.params.begin(), 0.0);
    grid.kinds.insert(grid.kinds.begin(), kBreakCorner);
  }

  // Per-edge interval ranges (edge starts are always grid lines).
  grid.edge_first.clear();
  size_t pi = 0;
  for (const auto& e : ch.edges) {
    while (pi < grid.params.size() && grid.params[pi] < e.s0 - eps) ++pi;
    grid.edge_first.push_back(static_cast<int>(pi));
    ++pi;
  }
  grid.edge_first.push_back(grid.size());

  // Visible-corner set per interval, sampled at the midpoint.
  int words = (d.n() + 63) / 64;
  grid.words_per_interval = words;
  grid.vis.assign(static_cast<size_t>(grid.size()) * words, 0);
  auto* vis = grid.vis.data();
  int K = grid.size();
  par::for_index(K, threads, [&](std::ptrdiff_t k) {
    double mid = 0.5 * (grid.start(static_cast<int>(k)) + grid.end(static_cast<int>(k)));
    Point2 p = ch.point_at(mid);
    for (int w = 0; w < d.n(); ++w)
      if (d.segment_free(p, d.corner(w)))
        vis[k * words + w / 64] |= (1ull << (w % 64));
  });
  return grid;
}

BlockTiling make_blocks(const GridIndex& grid, int cap) {
  if (cap < 1) fail(Err::OutOfRange, "block capacity must be at least 1");
  BlockTiling tiling;
  tiling.run_of_interval.assign(grid.size(), -1);
  int edge_count = static_cast<int>(grid.edge_first.size()) - 1;
  for (int e = 0; e < edge_count; ++e) {
    int first = grid.edge_first[e];
    int count = grid.edge_first[e + 1] - first;
    for (int off = 0; off < count; off += cap) {
      BlockTiling::Run run;
      run.edge = e;
      run.first_interval = first + off;
      run.count = std::min(cap, count - off);
      int run_id = static_cast<int>(tiling.runs.size());
      for (int k = 0; k < run.count; ++k)
        tiling.run_of_interval[run.first_interval + k] = run_id;
      tiling.runs.push_back(run);
    }
  }
  return tiling;
}

}  // namespace bsp
