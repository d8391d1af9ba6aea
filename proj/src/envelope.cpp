#include "bsp/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "bsp/rootsolve.hpp"

namespace bsp {

double FuncGeom::eval(double s, double t) const {
  return std::sqrt((s + a) * (s + a) + b * b) + std::sqrt((t + c) * (t + c) + d * d) + duv;
}

double FuncGeom::cos_s(double s) const {
  return (s + a) / std::sqrt((s + a) * (s + a) + b * b);
}

double FuncGeom::cos_t(double t) const {
  return (t + c) / std::sqrt((t + c) * (t + c) + d * d);
}

std::vector<PartialFunc> partial_functions(const BlockContext& ctx) {
  std::vector<PartialFunc> funcs;
  int n = ctx.domain->n();
  for (int u = 0; u < n; ++u) {
    if (ctx.u_mask && !(*ctx.u_mask)[u]) continue;
    if (!ctx.grid_s->visible(ctx.s_interval, u)) continue;
    const BoundarySPMRow& row = (*ctx.rows)[u];
    int cur_root = -2;
    for (int k = 0; k < ctx.run.count; ++k) {
      int interval = ctx.run.first_interval + k;
      double mid = 0.5 * (ctx.grid_t->start(interval) + ctx.grid_t->end(interval));
      int root = row.root_at(mid);
      if (root == cur_root) {
        funcs.back().t_last = interval;
      } else {
        funcs.push_back({u, root, interval, interval});
        cur_root = root;
      }
    }
  }
  return funcs;
}

FuncGeom make_func_geom(const BlockContext& ctx, const PartialFunc& f) {
  FuncGeom g;
  const Channel::Edge& es = ctx.ch_s->edges[ctx.grid_s->edge_of_interval(ctx.s_interval)];
  const Channel::Edge& et = ctx.ch_t->edges[ctx.run.edge];
  Point2 u = ctx.domain->corner(f.u);
  Point2 v = ctx.domain->corner(f.v);
  g.a = -(es.s0 + dot(u - es.a, es.dir));
  g.b = std::abs(cross(es.dir, u - es.a));
  g.c = -(et.s0 + dot(v - et.a, et.dir));
  g.d = std::abs(cross(et.dir, v - et.a));
  g.duv = ctx.table->d(f.u, f.v);
  g.s_lo = ctx.s_lo();
  g.s_hi = ctx.s_hi();
  g.t_lo = ctx.grid_t->start(f.t_first);
  g.t_hi = ctx.grid_t->end(f.t_last);
  return g;
}

double eval_h(const BlockContext& ctx, const PartialFunc& f, double s, double t) {
  FuncGeom g = make_func_geom(ctx, f);
  double eps = ctx.domain->eps_geom();
  if (s < g.s_lo - eps || s > g.s_hi + eps || t < g.t_lo - eps || t > g.t_hi + eps)
    fail(Err::OutsideSubdomain, "eval outside the partial function's subdomain");
  return g.eval(s, t);
}

bool PairBoundary::column_crosses(double t) const {
  double dlo = diff(s_lo, t), dhi = diff(s_hi, t);
  return (dlo <= 0) != (dhi <= 0);
}

double PairBoundary::eval(double t, double eps_env) const {
  double dlo = diff(s_lo, t), dhi = diff(s_hi, t);
  if ((dlo <= 0) == (dhi <= 0)) {
    bool i_wins = dlo <= 0;  // h_i <= h_j along the whole column
    if (orient > 0) return i_wins ? s_hi : s_lo;
    return i_wins ? s_lo : s_hi;
  }
  return bisect_root([&](double s) { return diff(s, t); }, s_lo, s_hi, eps_env);
}

std::vector<std::pair<double, double>> PairBoundary::crossing_spans(double eps_env) const {
  // The per-column sign pattern changes only at zeros of the wall functions
  // diff(s_lo, .) and diff(s_hi, .), each a distance-difference with at most
  // two certified roots.
  std::vector<double> cuts{t_lo, t_hi};
  for (double wall : {s_lo, s_hi}) {
    double base = std::sqrt((wall + gi.a) * (wall + gi.a) + gi.b * gi.b) -
                  std::sqrt((wall + gj.a) * (wall + gj.a) + gj.b * gj.b);
    double A = base + gi.duv - gj.duv;
    for (double r : sqrt_diff_roots(A, -gi.c, gi.d, -gj.c, gj.d, t_lo, t_hi, eps_env))
      cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> spans;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] - cuts[k] <= eps_env) continue;
    if (!column_crosses(0.5 * (cuts[k] + cuts[k + 1]))) continue;
    if (!spans.empty() && std::abs(spans.back().second - cuts[k]) <= eps_env)
      spans.back().second = cuts[k + 1];
    else
      spans.push_back({cuts[k], cuts[k + 1]});
  }
  return spans;
}

PairBoundary make_pair_boundary(const BlockContext& ctx, const std::vector<PartialFunc>& funcs,
                                int i, int j) {
  const PartialFunc& fi = funcs[i];
  const PartialFunc& fj = funcs[j];
  if (fi.u == fj.u) fail(Err::DisjointSubdomains, "partial functions share the first corner");
  PairBoundary pb;
  pb.gi = make_func_geom(ctx, fi);
  pb.gj = make_func_geom(ctx, fj);
  pb.i = i;
  pb.j = j;
  pb.s_lo = ctx.s_lo();
  pb.s_hi = ctx.s_hi();
  pb.t_lo = std::max(pb.gi.t_lo, pb.gj.t_lo);
  pb.t_hi = std::min(pb.gi.t_hi, pb.gj.t_hi);
  if (pb.t_hi - pb.t_lo <= ctx.domain->eps_geom())
    fail(Err::DisjointSubdomains, "subdomains do not overlap");
  double s_mid = 0.5 * (pb.s_lo + pb.s_hi);
  double slope = pb.gi.cos_s(s_mid) - pb.gj.cos_s(s_mid);
  pb.orient = slope >= 0 ? +1 : -1;
  return pb;
}

namespace {

constexpr double kWallLow = -1.0;  // marker values used only through src ids

struct MergeCurve {
  const PairBoundary* pb;
  int func_j;  // competitor function index (for slab storage)
};

// Chain fragments always tile [t0, t1]; src indexes `curves`, kNoCurve = none.
using Chain = std::vector<EnvFrag>;

Chain curve_chain(const std::vector<MergeCurve>& curves, int id, double t0, double t1,
                  double eps_env) {
  const PairBoundary& pb = *curves[id].pb;
  Chain ch;
  double lo = std::max(t0, pb.t_lo), hi = std::min(t1, pb.t_hi);
  if (lo > t0) ch.push_back({t0, lo, kNoCurve});
  // Split at the curve's own feature points so later crossing scans see
  // pieces where the boundary is either flat or smooth.
  std::vector<double> cuts{lo, hi};
  for (auto [a, b] : pb.crossing_spans(eps_env)) {
    if (a > lo && a < hi) cuts.push_back(a);
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  for (size_t k = 0; k + 1 < cuts.size(); ++k)
    if (cuts[k + 1] > cuts[k]) ch.push_back({cuts[k], cuts[k + 1], id});
  if (hi < t1) ch.push_back({hi, t1, kNoCurve});
  return ch;
}

double frag_eval(const std::vector<MergeCurve>& curves, int src, double t, bool lower,
                 double wall_lo, double wall_hi, double eps_env) {
  if (src == kNoCurve) return lower ? wall_hi + 1.0 : wall_lo - 1.0;  // sentinel beyond walls
  return curves[src].pb->eval(t, eps_env);
}

struct CrossCounter {
  std::uint32_t max_count = 0;
  void note(std::uint32_t c) { max_count = std::max(max_count, c); }
};

Chain merge_chains(const std::vector<MergeCurve>& curves, const Chain& A, const Chain& B,
                   bool lower, double wall_lo, double wall_hi, double eps_env, int samples,
                   CrossCounter* cc) {
  Chain out;
  double width_eps = 0;
  {
    double t0 = std::min(A.front().t0, B.front().t0);
    double t1 = std::max(A.back().t1, B.back().t1);
    width_eps = std::max(1e-12 * (t1 - t0), eps_env * 0.25);
  }
  auto push = [&](double a, double b, int src) {
    if (b - a <= 0) return;
    if (!out.empty() && out.back().src == src && out.back().t1 >= a - width_eps) {
      out.back().t1 = b;
      return;
    }
    out.push_back({a, b, src});
  };
  size_t ia = 0, ib = 0;
  double cursor = A.front().t0;
  double end = A.back().t1;
  while (cursor < end - width_eps) {
    while (ia < A.size() && A[ia].t1 <= cursor + width_eps) ++ia;
    while (ib < B.size() && B[ib].t1 <= cursor + width_eps) ++ib;
    if (ia >= A.size() || ib >= B.size()) break;
    double piece_end = std::min(A[ia].t1, B[ib].t1);
    double a = cursor, b = piece_end;
    int sa = A[ia].src, sb = B[ib].src;
    if (sa == kNoCurve && sb == kNoCurve) {
      push(a, b, kNoCurve);
    } else if (sa == kNoCurve || sb == kNoCurve) {
      push(a, b, sa == kNoCurve ? sb : sa);
    } else {
      // Crossings of two real fragments: sample the offset, bisect each sign
      // change, and take the winner on every sub-piece.
      auto g = [&](double t) {
        return frag_eval(curves, sa, t, lower, wall_lo, wall_hi, eps_env) -
               frag_eval(curves, sb, t, lower, wall_lo, wall_hi, eps_env);
      };
      int K = std::max(3, samples);
      double inset = (b - a) * 1e-7;
      std::vector<double> ts, gs;
      for (int k = 0; k < K; ++k) {
        double t = a + inset + (b - a - 2 * inset) * k / (K - 1);
        ts.push_back(t);
        gs.push_back(g(t));
      }
      std::vector<double> roots;
      for (int k = 0; k + 1 < K; ++k)
        if ((gs[k] <= 0) != (gs[k + 1] <= 0))
          roots.push_back(bisect_root(g, ts[k], ts[k + 1], eps_env));
      if (cc) cc->note(static_cast<std::uint32_t>(roots.size()));
      double from = a;
      for (size_t r = 0; r <= roots.size(); ++r) {
        double to = r < roots.size() ? roots[r] : b;
        if (to - from > 0) {
          double mid = 0.5 * (from + to);
          double va = frag_eval(curves, sa, mid, lower, wall_lo, wall_hi, eps_env);
          double vb = frag_eval(curves, sb, mid, lower, wall_lo, wall_hi, eps_env);
          int win;
          if (va == vb)
            win = curves[sa].func_j < curves[sb].func_j ? sa : sb;
          else if (lower)
            win = va < vb ? sa : sb;
          else
            win = va > vb ? sa : sb;
          push(from, to, win);
        }
        from = to;
      }
    }
    cursor = piece_end;
  }
  if (out.empty()) out.push_back({A.front().t0, end, kNoCurve});
  out.back().t1 = end;
  out.front().t0 = A.front().t0;
  return out;
}

}  // namespace

std::vector<EnvFrag> envelope_chain(const BlockContext& ctx, const std::vector<PairBoundary>& pbs,
                                    bool lower, double t0, double t1,
                                    std::uint32_t* max_crossings, std::uint32_t* vertices) {
  std::vector<MergeCurve> curves;
  curves.reserve(pbs.size());
  for (const auto& pb : pbs) curves.push_back({&pb, pb.j});
  CrossCounter cc;
  std::vector<Chain> chains;
  for (size_t id = 0; id < curves.size(); ++id)
    chains.push_back(curve_chain(curves, static_cast<int>(id), t0, t1, ctx.eps_env));
  if (chains.empty()) chains.push_back({{t0, t1, kNoCurve}});
  // Divide-and-conquer merge.
  while (chains.size() > 1) {
    std::vector<Chain> next;
    for (size_t k = 0; k + 1 < chains.size(); k += 2)
      next.push_back(merge_chains(curves, chains[k], chains[k + 1], lower, ctx.s_lo(), ctx.s_hi(),
                                  ctx.eps_env, ctx.env_samples, &cc));
    if (chains.size() % 2) next.push_back(chains.back());
    chains = std::move(next);
  }
  Chain result = std::move(chains.front());
  // Translate curve ids to competitor function ids.
  for (auto& f : result)
    if (f.src != kNoCurve) f.src = curves[f.src].func_j;
  if (max_crossings) *max_crossings = std::max(*max_crossings, cc.max_count);
  if (vertices && result.size() > 1)
    *vertices += static_cast<std::uint32_t>(result.size() - 1);
  return result;
}

namespace {

// Evaluate a stored bound (competitor id or wall) at t for anchor `anchor`.
double bound_eval(const BlockContext& ctx, const std::vector<PartialFunc>& funcs, int anchor,
                  int src, bool top, double t) {
  if (src == kNoCurve) return top ? ctx.s_hi() : ctx.s_lo();
  PairBoundary pb = make_pair_boundary(ctx, funcs, anchor, src);
  return pb.eval(t, ctx.eps_env);
}

}  // namespace

BlockDiagram build_block_diagram(const BlockContext& ctx) {
  BlockDiagram bd;
  bd.funcs = partial_functions(ctx);
  int F = static_cast<int>(bd.funcs.size());
  if (F == 0) return bd;

  double eps = ctx.domain->eps_geom();
  double block_t0 = ctx.t_lo(), block_t1 = ctx.t_hi();

  std::vector<std::vector<PairBoundary>> lower_of(F), upper_of(F);
  for (int i = 0; i < F; ++i)
    for (int j = 0; j < F; ++j) {
      if (i == j || bd.funcs[i].u == bd.funcs[j].u) continue;
      double lo = std::max(ctx.grid_t->start(bd.funcs[i].t_first),
                           ctx.grid_t->start(bd.funcs[j].t_first));
      double hi = std::min(ctx.grid_t->end(bd.funcs[i].t_last),
                           ctx.grid_t->end(bd.funcs[j].t_last));
      if (hi - lo <= eps) continue;
      PairBoundary pb = make_pair_boundary(ctx, bd.funcs, i, j);
      if (pb.orient > 0)
        lower_of[i].push_back(pb);  // M(i) lies below this boundary
      else
        upper_of[i].push_back(pb);
    }

  for (int i = 0; i < F; ++i) {
    auto Lchain = envelope_chain(ctx, lower_of[i], true, block_t0, block_t1,
                                 &bd.max_pair_crossings, &bd.env_vertices);
    auto Uchain = envelope_chain(ctx, upper_of[i], false, block_t0, block_t1,
                                 &bd.max_pair_crossings, &bd.env_vertices);

    // Overlay the two chains: pieces at every fragment boundary plus the
    // crossings between the chains inside a piece.
    auto eval_L = [&](int src, double t) {
      return src == kNoCurve ? ctx.s_hi()
                             : bound_eval(ctx, bd.funcs, i, src, true, t);
    };
    auto eval_U = [&](int src, double t) {
      return src == kNoCurve ? ctx.s_lo()
                             : bound_eval(ctx, bd.funcs, i, src, false, t);
    };

    MinRegion region;
    region.func = i;
    region.first_slab = static_cast<int>(bd.slabs.size());

    size_t il = 0, iu = 0;
    double cursor = block_t0;
    double wcap = 1e-12 * (block_t1 - block_t0);
    while (cursor < block_t1 - wcap && il < Lchain.size() && iu < Uchain.size()) {
      while (il < Lchain.size() && Lchain[il].t1 <= cursor + wcap) ++il;
      while (iu < Uchain.size() && Uchain[iu].t1 <= cursor + wcap) ++iu;
      if (il >= Lchain.size() || iu >= Uchain.size()) break;
      double piece_end = std::min(Lchain[il].t1, Uchain[iu].t1);
      int ls = Lchain[il].src, us = Uchain[iu].src;
      auto g = [&](double t) { return eval_L(ls, t) - eval_U(us, t); };
      std::vector<double> cuts{cursor, piece_end};
      if (ls != kNoCurve || us != kNoCurve) {
        int K = std::max(3, ctx.env_samples);
        double inset = (piece_end - cursor) * 1e-7;
        double prev_t = cursor + inset, prev_g = g(prev_t);
        for (int k = 1; k < K; ++k) {
          double t = cursor + inset + (piece_end - cursor - 2 * inset) * k / (K - 1);
          double gv = g(t);
          if ((prev_g <= 0) != (gv <= 0)) cuts.push_back(bisect_root(g, prev_t, t, ctx.eps_env));
          prev_t = t;
          prev_g = gv;
        }
        std::sort(cuts.begin(), cuts.end());
      }
      for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        double a = cuts[k], b = cuts[k + 1];
        if (b - a <= wcap) continue;
        double mid = 0.5 * (a + b);
        if (eval_L(ls, mid) - eval_U(us, mid) > 0) {
          if (region.slab_count > 0) {
            RegionSlab& last = bd.slabs.back();
            if (last.top_src == ls && last.bot_src == us && std::abs(last.t1 - a) <= wcap) {
              last.t1 = b;
              continue;
            }
          }
          bd.slabs.push_back({a, b, ls, us});
          region.slab_count++;
        }
      }
      cursor = piece_end;
    }
    if (region.slab_count > 0) bd.regions.push_back(region);
  }

  // Point location cells: merged slab boundaries, regions ordered by s.
  std::vector<double> ts;
  for (const auto& sl : bd.slabs) {
    ts.push_back(sl.t0);
    ts.push_back(sl.t1);
  }
  ts.push_back(block_t0);
  ts.push_back(block_t1);
  std::sort(ts.begin(), ts.end());
  double wcap = 1e-12 * (block_t1 - block_t0);
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [&](double a, double b) { return b - a <= wcap; }),
           ts.end());
  bd.pl_ts = ts;
  bd.pl_first.assign(ts.size(), 0);
  std::vector<std::pair<int, int>> cell_regions;  // (cell, region)
  for (int r = 0; r < static_cast<int>(bd.regions.size()); ++r) {
    const MinRegion& reg = bd.regions[r];
    for (int s = 0; s < reg.slab_count; ++s) {
      const RegionSlab& sl = bd.slabs[reg.first_slab + s];
      auto it0 = std::lower_bound(ts.begin(), ts.end(), sl.t0 + wcap) - ts.begin();
      auto it1 = std::lower_bound(ts.begin(), ts.end(), sl.t1 - wcap) - ts.begin();
      for (auto c = it0 - 1; c < it1; ++c)
        if (c >= 0 && c + 1 < static_cast<long>(ts.size()))
          cell_regions.push_back({static_cast<int>(c), r});
    }
  }
  // Order regions within a cell by the midpoint of their s-band.
  std::vector<double> order_key(cell_regions.size());
  for (size_t k = 0; k < cell_regions.size(); ++k) {
    auto [c, r] = cell_regions[k];
    double tm = 0.5 * (ts[c] + ts[c + 1]);
    const MinRegion& reg = bd.regions[r];
    double top = 0, bot = 0;
    for (int s = 0; s < reg.slab_count; ++s) {
      const RegionSlab& sl = bd.slabs[reg.first_slab + s];
      if (sl.t0 <= tm && tm <= sl.t1) {
        top = bound_eval(ctx, bd.funcs, reg.func, sl.top_src, true, tm);
        bot = bound_eval(ctx, bd.funcs, reg.func, sl.bot_src, false, tm);
        break;
      }
    }
    order_key[k] = 0.5 * (top + bot);
  }
  std::vector<int> perm(cell_regions.size());
  for (size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    if (cell_regions[x].first != cell_regions[y].first)
      return cell_regions[x].first < cell_regions[y].first;
    return order_key[x] < order_key[y];
  });
  bd.pl_first.assign(ts.size(), 0);
  for (int p : perm) bd.pl_first[cell_regions[p].first + 1]++;
  for (size_t c = 1; c < bd.pl_first.size(); ++c) bd.pl_first[c] += bd.pl_first[c - 1];
  bd.pl_regions.resize(perm.size());
  std::vector<int> fill = bd.pl_first;
  for (int p : perm) bd.pl_regions[fill[cell_regions[p].first]++] = cell_regions[p].second;
  return bd;
}

int locate_in_block(const BlockContext& ctx, const BlockDiagram& bd, double s, double t) {
  if (bd.regions.empty()) return -1;
  int cells = static_cast<int>(bd.pl_ts.size()) - 1;
  auto it = std::upper_bound(bd.pl_ts.begin(), bd.pl_ts.end(), t);
  int cell = static_cast<int>(it - bd.pl_ts.begin()) - 1;
  cell = std::clamp(cell, 0, cells - 1);
  int first = bd.pl_first[cell], last = bd.pl_first[cell + 1];
  if (first >= last) return -1;

  double band = std::max(ctx.eps_env * 8.0, 1e-12 * (ctx.s_hi() - ctx.s_lo()));
  auto region_band = [&](int idx, double& bot, double& top) {
    const MinRegion& reg = bd.regions[bd.pl_regions[idx]];
    bot = ctx.s_lo();
    top = ctx.s_hi();
    for (int k = 0; k < reg.slab_count; ++k) {
      const RegionSlab& sl = bd.slabs[reg.first_slab + k];
      if (sl.t0 - band <= t && t <= sl.t1 + band) {
        double tc = std::clamp(t, sl.t0, sl.t1);
        top = bound_eval(ctx, bd.funcs, reg.func, sl.top_src, true, tc);
        bot = bound_eval(ctx, bd.funcs, reg.func, sl.bot_src, false, tc);
        return true;
      }
    }
    return false;
  };

  // Binary search on the stacked bands, then resolve the boundary tie by the
  // smaller h value (smaller function index on exact ties).
  int lo = first, hi = last - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    double bot, top;
    if (!region_band(mid, bot, top)) { ++lo; continue; }
    if (s > top + band) lo = mid + 1;
    else hi = mid;
  }
  int best = -1;
  double best_h = 0;
  for (int idx = std::max(first, lo - 1); idx <= std::min(last - 1, lo + 1); ++idx) {
    double bot, top;
    if (!region_band(idx, bot, top)) continue;
    if (s < bot - band || s > top + band) continue;
    const MinRegion& reg = bd.regions[bd.pl_regions[idx]];
    double h = make_func_geom(ctx, bd.funcs[reg.func]).eval(s, t);
    if (best < 0 || h < best_h ||
        (h == best_h && reg.func < bd.regions[bd.pl_regions[best]].func)) {
      best = idx;
      best_h = h;
    }
  }
  if (best < 0) {
    // Numerical gap: fall back to the cheapest correct answer among the
    // cell's regions rather than failing the query.
    for (int idx = first; idx < last; ++idx) {
      const MinRegion& reg = bd.regions[bd.pl_regions[idx]];
      double h = make_func_geom(ctx, bd.funcs[reg.func]).eval(s, t);
      if (best < 0 || h < best_h) {
        best = idx;
        best_h = h;
      }
    }
  }
  return best < 0 ? -1 : bd.pl_regions[best];
}

}  // namespace bsp
