#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "chronoscale/errors.hpp"
#include "chronoscale/numeric.hpp"
#include "chronoscale/timescale.hpp"

namespace chronoscale {

// Quadrature controls for the dense (interval) parts of a scale.
// Subdivision is deterministic, so results are reproducible bit for bit.
struct QuadOptions {
  double tolerance = 1e-9;
  // Deep enough for integrable k-th-root singularities at interval ends.
  int max_depth = 96;
};

namespace detail {

inline double simpson_rule(double fa, double fm, double fb, double width) {
  return width / 6.0 * (fa + 4.0 * fm + fb);
}

template <class Fn>
double adaptive_simpson(Fn& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(fa, flm, fm, m - a);
  const double right = simpson_rule(fm, frm, fb, b - m);
  const double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * eps) return left + right + err / 15.0;
  if (depth <= 0)
    throw QuadratureError("quadrature did not converge within the subdivision budget");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <class S, class Fn>
S dense_integral(Fn& g, const S& a, const S& b, double eps, int max_depth) {
  if constexpr (numeric_traits<S>::is_exact) {
    (void)g;
    (void)eps;
    (void)max_depth;
    throw ExactRegimeError(
        "dense interval integration is not available in the exact regime");
  } else {
    double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
    double whole = simpson_rule(fa, fm, fb, b - a);
    return adaptive_simpson(g, a, b, fa, fm, fb, whole, eps, max_depth);
  }
}

template <class S, class Fn>
S delta_core(const TimeScale<S>& ts, Fn& g, const S& a, const S& b,
             const QuadOptions& opts) {
  const auto& comps = ts.components();
  const double eps =
      opts.tolerance / static_cast<double>(std::max<std::size_t>(1, ts.interval_count()));
  std::size_t i = ts.component_index(a);
  const std::size_t ib = ts.component_index(b);
  S total(0);
  S pos = a;
  while (i < ib) {
    const auto& c = comps[i];
    if (!c.is_point() && pos < c.hi) {
      total += dense_integral(g, pos, c.hi, eps, opts.max_depth);
      pos = c.hi;
    }
    // pos is right-scattered: weight by the gap to the next component.
    const S& next_lo = comps[i + 1].lo;
    total += (next_lo - pos) * g(pos);
    pos = next_lo;
    ++i;
  }
  if (pos < b) total += dense_integral(g, pos, b, eps, opts.max_depth);
  return total;
}

template <class S, class Fn>
S nabla_core(const TimeScale<S>& ts, Fn& g, const S& a, const S& b,
             const QuadOptions& opts) {
  const auto& comps = ts.components();
  const double eps =
      opts.tolerance / static_cast<double>(std::max<std::size_t>(1, ts.interval_count()));
  const std::size_t ia = ts.component_index(a);
  std::size_t i = ts.component_index(b);
  S total(0);
  S pos = b;
  while (i > ia) {
    const auto& c = comps[i];
    if (!c.is_point() && pos > c.lo) {
      total += dense_integral(g, c.lo, pos, eps, opts.max_depth);
      pos = c.lo;
    }
    // pos is left-scattered: weight by the gap back to the previous component.
    const S& prev_hi = comps[i - 1].hi;
    total += (pos - prev_hi) * g(pos);
    pos = prev_hi;
    --i;
  }
  if (pos > a) total += dense_integral(g, a, pos, eps, opts.max_depth);
  return total;
}

}  // namespace detail

// Delta integral of g over [a, b): scattered points enter with forward
// graininess weights, interval parts with ordinary quadrature. a > b
// negates the integral over [b, a). Additive over split points.
template <class S, class Fn>
S delta_integral(const TimeScale<S>& ts, Fn&& g, const S& a, const S& b,
                 const QuadOptions& opts = {}) {
  S aa = ts.snap(a), bb = ts.snap(b);
  if (aa == bb) return S(0);
  if (bb < aa) return S(-detail::delta_core(ts, g, bb, aa, opts));
  return detail::delta_core(ts, g, aa, bb, opts);
}

// Nabla integral of g over (a, b]: left-scattered points enter with
// backward graininess weights. Same sign convention as delta_integral.
template <class S, class Fn>
S nabla_integral(const TimeScale<S>& ts, Fn&& g, const S& a, const S& b,
                 const QuadOptions& opts = {}) {
  S aa = ts.snap(a), bb = ts.snap(b);
  if (aa == bb) return S(0);
  if (bb < aa) return S(-detail::nabla_core(ts, g, bb, aa, opts));
  return detail::nabla_core(ts, g, aa, bb, opts);
}

// Generalized monomial h_n(t, s): h_0 = 1, h_{k+1}(t,s) = integral of
// h_k(., s) from s to t. Purely discrete scales use an exact forward/
// backward recurrence over the grid; scales with dense parts fall back to
// the recursive integral definition.
template <class S>
S taylor_monomial(const TimeScale<S>& ts, int n, const S& t, const S& s,
                  const QuadOptions& opts = {}) {
  if (n < 0) throw Error("taylor_monomial: order must be nonnegative");
  if (n > 12) throw Error("taylor_monomial: order capped at 12");
  const S tt = ts.snap(t), ss = ts.snap(s);
  if (n == 0) return S(1);
  if (ts.purely_discrete()) {
    const S lo = std::min(tt, ss), hi = std::max(tt, ss);
    const TimeScale<S> win = ts.restricted(lo, hi);
    const std::vector<S> pts = win.grid_points();
    const std::size_t is = win.component_index(ss);
    const std::size_t it = win.component_index(tt);
    std::vector<S> cur(pts.size(), S(1)), nxt(pts.size(), S(0));
    for (int k = 1; k <= n; ++k) {
      nxt[is] = S(0);
      for (std::size_t j = is + 1; j < pts.size(); ++j)
        nxt[j] = nxt[j - 1] + (pts[j] - pts[j - 1]) * cur[j - 1];
      for (std::size_t j = is; j-- > 0;)
        nxt[j] = nxt[j + 1] - (pts[j + 1] - pts[j]) * cur[j];
      cur.swap(nxt);
    }
    return cur[it];
  }
  std::function<S(const S&, int)> rec = [&](const S& tau, int k) -> S {
    if (k == 0) return S(1);
    return delta_integral(ts, [&](const S& u) { return rec(u, k - 1); }, ss, tau, opts);
  };
  return rec(tt, n);
}

}  // namespace chronoscale
