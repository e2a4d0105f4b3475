#pragma once

#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "chronoscale/errors.hpp"
#include "chronoscale/numeric.hpp"
#include "chronoscale/timescale.hpp"

namespace chronoscale {

// A validated strictly monotone continuous function on a window of a time
// scale. `eval` stays the raw callable, so it may be queried slightly
// outside the window (piecewise bounds need f at rho of the first knot).
template <class S>
struct MonotoneFn {
  std::function<S(const S&)> eval;
  Direction direction = Direction::Increasing;
  TimeScale<S> domain;  // window-restricted scale
  std::function<S(const S&)> inverse;  // optional closed form

  MonotoneFn(std::function<S(const S&)> e, Direction d, TimeScale<S> dom,
             std::function<S(const S&)> inv = {})
      : eval(std::move(e)), direction(d), domain(std::move(dom)), inverse(std::move(inv)) {}

  bool increasing() const { return direction == Direction::Increasing; }
  const S& alpha1() const { return domain.min(); }
  const S& alpha2() const { return domain.max(); }
  S operator()(const S& t) const { return eval(t); }
};

namespace detail {

// Mesh a component for validation: isolated points contribute themselves,
// intervals a 33-point mesh.
template <class S>
void validation_mesh(const Component<S>& c, std::vector<S>& out) {
  if (c.is_point()) {
    out.push_back(c.lo);
    return;
  }
  const int steps = 32;
  for (int k = 0; k <= steps; ++k)
    out.push_back(c.lo + (c.hi - c.lo) * numeric_traits<S>::from_int(k) /
                             numeric_traits<S>::from_int(steps));
}

// Strictness and (heuristic) continuity checks over the window mesh.
// Decreasing functions are reduced to the increasing case by negating
// sampled values. A mesh step carrying more than a quarter of the window
// range triggers one refinement retry; a sub-step retaining most of the
// parent jump is reported as a discontinuity.
template <class S, class Fn>
void validate_monotone(Fn& eval, Direction dir, const TimeScale<S>& win) {
  const S sign = dir == Direction::Increasing ? S(1) : S(-1);
  std::vector<S> mesh;
  for (const auto& c : win.components()) validation_mesh(c, mesh);
  std::vector<S> vals;
  vals.reserve(mesh.size());
  for (const auto& t : mesh) vals.push_back(sign * eval(t));
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (!(vals[i - 1] < vals[i])) {
      std::ostringstream os;
      os << "monotonicity violation between t=" << numeric_traits<S>::to_double(mesh[i - 1])
         << " and t=" << numeric_traits<S>::to_double(mesh[i]);
      throw MonotonicityViolation(os.str());
    }
  }
  if (mesh.size() < 2) return;
  const S range = vals.back() - vals.front();
  std::size_t at = 0;
  for (const auto& c : win.components()) {
    const std::size_t n = c.is_point() ? 1 : 33;
    for (std::size_t j = at + 1; j < at + n; ++j) {
      const S jump = vals[j] - vals[j - 1];
      if (jump * S(4) <= range) continue;
      // Refinement retry on the suspicious step.
      const int steps = 32;
      S prev = vals[j - 1];
      S worst(0);
      for (int k = 1; k <= steps; ++k) {
        const S x = mesh[j - 1] + (mesh[j] - mesh[j - 1]) *
                                      numeric_traits<S>::from_int(k) /
                                      numeric_traits<S>::from_int(steps);
        const S v = sign * eval(x);
        if (v - prev > worst) worst = v - prev;
        prev = v;
      }
      if (worst * S(5) > jump * S(4)) {
        std::ostringstream os;
        os << "discontinuity near t=" << numeric_traits<S>::to_double(mesh[j]);
        throw DiscontinuityDetected(os.str());
      }
    }
    at += n;
  }
}

}  // namespace detail

// Validate and wrap a callable as a strictly monotone function on the
// window [lo, hi] of `scale`.
template <class S, class Fn>
MonotoneFn<S> make_monotone(Fn eval, Direction dir, const TimeScale<S>& scale,
                            const S& lo, const S& hi,
                            std::type_identity_t<std::function<S(const S&)>> inverse = {}) {
  TimeScale<S> win = scale.restricted(lo, hi);
  detail::validate_monotone(eval, dir, win);
  return MonotoneFn<S>(std::move(eval), dir, std::move(win), std::move(inverse));
}

// Whole-scale window convenience overload.
template <class S, class Fn>
MonotoneFn<S> make_monotone(Fn eval, Direction dir, const TimeScale<S>& scale,
                            std::type_identity_t<std::function<S(const S&)>> inverse = {}) {
  return make_monotone<S>(std::move(eval), dir, scale, scale.min(), scale.max(),
                          std::move(inverse));
}

template <class S>
TimeScale<S> image_timescale(const TimeScale<S>& ts, const MonotoneFn<S>& f) {
  return ts.image(f.eval, f.direction);
}

namespace detail {

// Map an image component index back to its domain component.
template <class S>
std::size_t domain_component_of(const MonotoneFn<S>& f, std::size_t image_idx) {
  const std::size_t n = f.domain.components().size();
  return f.increasing() ? image_idx : n - 1 - image_idx;
}

template <class S>
S invert_on_component(const MonotoneFn<S>& f, const Component<S>& c, const S& y) {
  if (c.is_point()) return c.lo;
  if (f.inverse) return f.inverse(y);
  if constexpr (numeric_traits<S>::is_exact) {
    throw ExactRegimeError(
        "inverse on an interval component needs a closed form in the exact regime");
  } else {
    // Bisection to absolute tolerance 1e-12; reduced to the increasing
    // case by sign reflection.
    const double sign = f.increasing() ? 1.0 : -1.0;
    const double target = sign * y;
    double lo = c.lo, hi = c.hi;
    if (sign * f.eval(lo) > target || sign * f.eval(hi) < target)
      throw PointNotInScale("inverse target escapes the component range");
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (sign * f.eval(mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }
}

}  // namespace detail

// f^{-1}(y) for y on the image scale. Exact index lookup on discrete
// components; closed form or bisection on intervals. Off-grid y is a hard
// error: the equality characterizations depend on exact membership.
template <class S>
S inverse_eval(const MonotoneFn<S>& f, const S& y) {
  const TimeScale<S> img = image_timescale(f.domain, f);
  const std::size_t idx = img.component_index(y);
  const S yy = img.snap(y);
  const auto& c = f.domain.components()[detail::domain_component_of(f, idx)];
  return detail::invert_on_component(f, c, yy);
}

enum class PiecewiseMode { ScaleContinuous, RealJumps };

template <class S>
struct PiecewiseJump {
  S at;     // interior knot a_i
  S left;   // f_{i-1}(a_i)
  S right;  // f_i(a_i)
};

// Knots a_1 < ... < a_{m+1} with per-piece monotone functions. In
// ScaleContinuous mode adjacent pieces agree at shared knots; RealJumps
// lives on a single real interval and keeps the interior jump list.
template <class S>
struct PiecewiseFn {
  TimeScale<S> scale;  // ambient scale (may extend past the knot span)
  std::vector<S> knots;
  std::vector<MonotoneFn<S>> pieces;
  PiecewiseMode mode = PiecewiseMode::ScaleContinuous;
  std::vector<PiecewiseJump<S>> jumps;

  explicit PiecewiseFn(TimeScale<S> ambient) : scale(std::move(ambient)) {}

  std::size_t piece_count() const { return pieces.size(); }

  // Interior knots evaluate through the right-hand piece.
  S operator()(const S& x) const {
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      if (x < knots[i + 1] || i + 2 == knots.size()) return pieces[i].eval(x);
    return pieces.back().eval(x);
  }
};

template <class S>
PiecewiseFn<S> make_piecewise(const TimeScale<S>& scale, std::vector<S> knots,
                              std::vector<MonotoneFn<S>> pieces, PiecewiseMode mode) {
  if (knots.size() < 2 || pieces.size() + 1 != knots.size())
    throw Error("make_piecewise: need m pieces and m+1 knots");
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i] < knots[i + 1]))
      throw Error("make_piecewise: knots must be strictly increasing");
  for (const auto& k : knots)
    if (!scale.contains(k)) throw PointNotInScale("make_piecewise: knot off scale");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!nearly_equal(pieces[i].alpha1(), knots[i]) ||
        !nearly_equal(pieces[i].alpha2(), knots[i + 1]))
      throw Error("make_piecewise: piece domains must tile the knot span");
  }
  PiecewiseFn<S> pf(scale);
  pf.mode = mode;
  if (mode == PiecewiseMode::ScaleContinuous) {
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      const S left = pieces[i].eval(knots[i + 1]);
      const S right = pieces[i + 1].eval(knots[i + 1]);
      if (!nearly_equal(left, right)) {
        std::ostringstream os;
        os << "make_piecewise: pieces disagree at knot "
           << numeric_traits<S>::to_double(knots[i + 1]) << " ("
           << numeric_traits<S>::to_double(left) << " vs "
           << numeric_traits<S>::to_double(right) << ")";
        throw Error(os.str());
      }
    }
  } else {
    if (scale.components().size() != 1 || scale.components().front().is_point())
      throw Error("make_piecewise: RealJumps mode needs a single real interval");
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      PiecewiseJump<S> j;
      j.at = knots[i];
      j.left = pieces[i - 1].eval(knots[i]);
      j.right = pieces[i].eval(knots[i]);
      pf.jumps.push_back(std::move(j));
    }
  }
  pf.knots = std::move(knots);
  pf.pieces = std::move(pieces);
  return pf;
}

}  // namespace chronoscale
