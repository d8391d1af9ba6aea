#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace bsp {

// Bisection on a sign change; requires fn(lo) and fn(hi) of opposite sign.
template <class Fn>
double bisect_root(Fn&& fn, double lo, double hi, double eps) {
  double flo = fn(lo);
  for (int it = 0; it < 200 && hi - lo > eps; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if ((fm <= 0) == (flo <= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Certified roots of G(t) = A + sqrt((t-fi)^2 + hi^2) - sqrt((t-fj)^2 + hj^2)
// inside [lo, hi]. Candidates come from the squared closed form (a quadratic);
// each is kept only if G changes sign across it, then sharpened by bisection,
// so tangencies are dropped and no crossing survives unrefined. Sorted output.
inline std::vector<double> sqrt_diff_roots(double A, double fi, double hi_i, double fj,
                                           double hj, double lo, double hi, double eps) {
  auto G = [&](double t) {
    return A + std::sqrt((t - fi) * (t - fi) + hi_i * hi_i) -
           std::sqrt((t - fj) * (t - fj) + hj * hj);
  };
  std::vector<double> cand;
  double l1 = 2.0 * (fi - fj);
  double l0 = (fj * fj + hj * hj) - (fi * fi + hi_i * hi_i) + A * A;
  double scale = 1.0 + std::abs(fi) + std::abs(fj) + std::abs(hi_i) + std::abs(hj) + std::abs(A);
  if (std::abs(A) <= 1e-14 * scale) {
    // Plain equidistance: linear.
    if (std::abs(l1) > 1e-14 * scale) cand.push_back(-(l0 - A * A) / l1);
  } else {
    double a = l1 * l1 - 4.0 * A * A;
    double b = 2.0 * l1 * l0 + 8.0 * A * A * fj;
    double c = l0 * l0 - 4.0 * A * A * (fj * fj + hj * hj);
    if (std::abs(a) <= 1e-13 * (std::abs(b) + std::abs(c) + 1.0)) {
      if (std::abs(b) > 0) cand.push_back(-c / b);
    } else {
      double disc = b * b - 4.0 * a * c;
      if (disc >= 0) {
        double sq = std::sqrt(disc);
        // Stable quadratic roots.
        double q = -0.5 * (b + (b >= 0 ? sq : -sq));
        if (a != 0) cand.push_back(q / a);
        if (q != 0) cand.push_back(c / q);
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  std::vector<double> out;
  double width = hi - lo;
  for (double r : cand) {
    if (!(std::isfinite(r))) continue;
    if (r < lo - width * 1e-9 || r > hi + width * 1e-9) continue;
    // Bracket by a sign change around the candidate; widen geometrically.
    bool found = false;
    for (double delta = std::max(eps, width * 1e-12); delta <= width; delta *= 8.0) {
      double a0 = std::max(lo, r - delta), b0 = std::min(hi, r + delta);
      if (a0 >= b0) break;
      double ga = G(a0), gb = G(b0);
      if ((ga <= 0) != (gb <= 0)) {
        out.push_back(bisect_root(G, a0, b0, eps));
        found = true;
        break;
      }
      if (a0 == lo && b0 == hi) break;
    }
    (void)found;
  }
  // Endpoint sign change not explained by any candidate (numerical fallback).
  if (out.empty() && lo < hi) {
    double ga = G(lo), gb = G(hi);
    if ((ga <= 0) != (gb <= 0)) out.push_back(bisect_root(G, lo, hi, eps));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [&](double x, double y) { return std::abs(x - y) <= eps; }),
            out.end());
  return out;
}

}  // namespace bsp
