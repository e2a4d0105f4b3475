#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "chronoscale/calculus.hpp"
#include "chronoscale/errors.hpp"
#include "chronoscale/monotone.hpp"
#include "chronoscale/numeric.hpp"
#include "chronoscale/timescale.hpp"

namespace chronoscale {

// Bound variants: the first word picks the domain-side term (plain f^{-1}
// or sigma(f^{-1})), the second the value-side term (f o rho or f itself).
enum class Variant { RhoRho, RhoF, SigmaRho, SigmaF };

inline constexpr std::array<Variant, 4> kVariantOrder = {
    Variant::RhoRho, Variant::RhoF, Variant::SigmaRho, Variant::SigmaF};

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::RhoRho: return "RhoRho";
    case Variant::RhoF: return "RhoF";
    case Variant::SigmaRho: return "SigmaRho";
    case Variant::SigmaF: return "SigmaF";
  }
  return "?";
}

template <class S>
struct Witnesses {
  S a{}, a_hat{}, b{}, b_hat{};
};

// Result of a sandwich computation. lower/upper always hold the formula
// values in the paper's orientation; `reversed` records that the chain
// runs downhill (strictly decreasing function) instead of swapping fields.
template <class S>
struct BoundReport {
  S lower{}, middle{}, upper{};
  Variant variant = Variant::RhoRho;
  bool equality_lower = false;
  bool equality_upper = false;
  bool reversed = false;
  Witnesses<S> witnesses{};

  bool holds(const S& slack = S(0)) const {
    if (reversed) return middle <= lower + slack && middle >= upper - slack;
    return middle >= lower - slack && middle <= upper + slack;
  }
};

// Anchored evaluation context for one monotone function: owns the image
// scale and, on purely discrete domains, exact prefix tables that turn
// every integral into two lookups.
template <class S>
class YoungContext {
 public:
  explicit YoungContext(MonotoneFn<S> fn, QuadOptions opts = {})
      : f_(std::move(fn)), image_(image_timescale(f_.domain, f_)), opts_(opts) {
    if (f_.domain.purely_discrete()) build_tables();
  }

  const MonotoneFn<S>& fn() const { return f_; }
  const TimeScale<S>& domain() const { return f_.domain; }
  const TimeScale<S>& image() const { return image_; }
  const QuadOptions& quad() const { return opts_; }
  bool increasing() const { return f_.increasing(); }
  bool discrete() const { return discrete_; }

  const S& alpha1() const { return f_.domain.min(); }
  const S& alpha2() const { return f_.domain.max(); }
  // Anchor on the image side: beta1 = f(alpha1).
  S beta1() const { return increasing() ? image_.min() : image_.max(); }
  S beta2() const { return increasing() ? image_.max() : image_.min(); }

  // f(t) through the grid cache when available.
  S value_at(const S& t) const {
    if (discrete_) return values_[grid_index(t)];
    return f_.eval(f_.domain.snap(t));
  }

  S f_rho(const S& t) const { return value_at(f_.domain.rho(t)); }

  // f^{-1}(y) for y on the image scale.
  S inverse(const S& y) const {
    if (discrete_) return grid_[image_to_domain_[image_index(y)]];
    const std::size_t idx = image_.component_index(y);
    const auto& c = f_.domain.components()[detail::domain_component_of(f_, idx)];
    return detail::invert_on_component(f_, c, image_.snap(y));
  }

  // Integral of f over [from, to) on the domain scale.
  S delta(const S& from, const S& to) const {
    if (discrete_) return delta_prefix_[grid_index(to)] - delta_prefix_[grid_index(from)];
    return delta_integral(f_.domain, f_.eval, from, to, opts_);
  }

  // Oriented image-side integral of f^{-1}: the nabla integral for
  // increasing f, the delta integral for decreasing f. The decreasing
  // orientation is forced by the phi-identity F(a, f(a)) = 0, which fails
  // on scattered points under the backward weights once f reverses.
  S image_integral(const S& from, const S& to) const {
    if (discrete_) return image_prefix_[image_index(to)] - image_prefix_[image_index(from)];
    auto inv = [this](const S& y) { return inverse(y); };
    if (increasing()) return nabla_integral(image_, inv, from, to, opts_);
    return delta_integral(image_, inv, from, to, opts_);
  }

  // The Young functional F(a, b) anchored at (alpha1, beta1).
  S functional(const S& a, const S& b) const {
    return delta(alpha1(), a) + image_integral(beta1(), b) - a * b + alpha1() * beta1();
  }

  // Two-anchor middle of the sandwich theorems.
  S middle(const S& a, const S& a_hat, const S& b, const S& b_hat) const {
    return delta(a_hat, a) + image_integral(b_hat, b) - a * b + a_hat * b_hat;
  }

  // Grid predicate y in {f(rho(t)), f(t)}.
  bool value_pair_matches(const S& y, const S& t) const {
    return nearly_equal(y, f_rho(t)) || nearly_equal(y, value_at(t));
  }

  // Grid predicate x in {f^{-1}(y), sigma(f^{-1}(y))}.
  bool domain_pair_matches(const S& x, const S& y) const {
    const S inv = inverse(y);
    return nearly_equal(x, inv) || nearly_equal(x, f_.domain.sigma(inv));
  }

 private:
  MonotoneFn<S> f_;
  TimeScale<S> image_;
  QuadOptions opts_;
  bool discrete_ = false;
  std::vector<S> grid_, values_, image_grid_, delta_prefix_, image_prefix_;
  std::vector<std::size_t> image_to_domain_;

  void build_tables() {
    discrete_ = true;
    grid_ = f_.domain.grid_points();
    const std::size_t n = grid_.size();
    values_.reserve(n);
    for (const auto& t : grid_) values_.push_back(f_.eval(t));
    image_grid_.resize(n);
    image_to_domain_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = increasing() ? j : n - 1 - j;
      image_grid_[j] = values_[src];
      image_to_domain_[j] = src;
    }
    delta_prefix_.assign(n, S(0));
    for (std::size_t j = 1; j < n; ++j)
      delta_prefix_[j] = delta_prefix_[j - 1] + (grid_[j] - grid_[j - 1]) * values_[j - 1];
    image_prefix_.assign(n, S(0));
    if (increasing()) {
      // nabla orientation: left-scattered points weighted backward.
      for (std::size_t j = 1; j < n; ++j)
        image_prefix_[j] = image_prefix_[j - 1] +
                           (image_grid_[j] - image_grid_[j - 1]) * grid_[image_to_domain_[j]];
    } else {
      // delta orientation on the image.
      for (std::size_t j = 1; j < n; ++j)
        image_prefix_[j] = image_prefix_[j - 1] + (image_grid_[j] - image_grid_[j - 1]) *
                                                      grid_[image_to_domain_[j - 1]];
    }
  }

  std::size_t grid_index(const S& t) const { return f_.domain.component_index(t); }
  std::size_t image_index(const S& y) const { return image_.component_index(y); }
};

template <class S>
YoungContext<S> make_context(MonotoneFn<S> fn, QuadOptions opts = {}) {
  return YoungContext<S>(std::move(fn), opts);
}

// F(a, b) = int_{alpha1}^{a} f Delta t + int_{beta1}^{b} f^{-1} + a1*b1 - a*b.
template <class S>
S young_functional(const YoungContext<S>& ctx, const S& a, const S& b) {
  return ctx.functional(a, b);
}

template <class S>
struct YoungCheck {
  S value{};
  bool holds = false;
  bool equality = false;
};

// F >= 0 for increasing f (reversed when decreasing), equality exactly on
// the grid set b in {f(rho(a)), f(a)}.
template <class S>
YoungCheck<S> young_check(const YoungContext<S>& ctx, const S& a, const S& b,
                          const S& slack = S(0)) {
  YoungCheck<S> out;
  out.value = ctx.functional(a, b);
  out.holds = ctx.increasing() ? out.value >= -slack : out.value <= slack;
  out.equality = ctx.value_pair_matches(b, a);
  return out;
}

// F(a, f(a)); identically zero on every scale.
template <class S>
S phi_identity_check(const YoungContext<S>& ctx, const S& a) {
  return ctx.functional(a, ctx.value_at(a));
}

template <class S>
struct TwoPointBound {
  S lhs{}, rhs{};
  bool equality = false;
};

// F(a,b) + F(alpha,beta) >= -(alpha - a)(beta - b), equality iff
// alpha in {f^{-1}(b), sigma(f^{-1}(b))} and beta in {f(rho(a)), f(a)}.
template <class S>
TwoPointBound<S> two_point_bound(const YoungContext<S>& ctx, const S& a, const S& b,
                                 const S& alpha, const S& beta) {
  TwoPointBound<S> out;
  out.lhs = ctx.functional(a, b) + ctx.functional(alpha, beta);
  out.rhs = -(alpha - a) * (beta - b);
  out.equality = ctx.domain_pair_matches(alpha, b) && ctx.value_pair_matches(beta, a);
  return out;
}

namespace detail {

template <class S>
S variant_domain_side(const YoungContext<S>& ctx, Variant v, const S& y) {
  const S inv = ctx.inverse(y);
  return (v == Variant::SigmaRho || v == Variant::SigmaF) ? ctx.domain().sigma(inv) : inv;
}

template <class S>
S variant_value_side(const YoungContext<S>& ctx, Variant v, const S& t) {
  return (v == Variant::RhoRho || v == Variant::SigmaRho) ? ctx.f_rho(t)
                                                          : ctx.value_at(t);
}

}  // namespace detail

// The sandwich: lower/upper products around the two-anchor middle.
template <class S>
BoundReport<S> sandwich_bounds(const YoungContext<S>& ctx, const S& a, const S& a_hat,
                               const S& b, const S& b_hat,
                               Variant v = Variant::RhoRho) {
  BoundReport<S> r;
  r.variant = v;
  r.reversed = !ctx.increasing();
  r.witnesses = Witnesses<S>{a, a_hat, b, b_hat};
  r.middle = ctx.middle(a, a_hat, b, b_hat);
  r.lower = (detail::variant_domain_side(ctx, v, b_hat) - a_hat) *
            (detail::variant_value_side(ctx, v, a_hat) - b_hat);
  r.upper = (detail::variant_domain_side(ctx, v, b) - a) *
            (b - detail::variant_value_side(ctx, v, a));
  r.equality_lower = ctx.value_pair_matches(b_hat, a_hat);
  r.equality_upper = ctx.value_pair_matches(b, a);
  return r;
}

// Least of the four variant upper bounds; ties break in declaration order.
template <class S>
std::pair<Variant, S> best_upper_bound(const YoungContext<S>& ctx, const S& a,
                                       const S& a_hat, const S& b, const S& b_hat) {
  ctx.domain().snap(a_hat);
  ctx.image().snap(b_hat);
  bool have = false;
  Variant best = Variant::RhoRho;
  S value{};
  for (Variant v : kVariantOrder) {
    const S u = (detail::variant_domain_side(ctx, v, b) - a) *
                (b - detail::variant_value_side(ctx, v, a));
    if (!have || u < value) {
      have = true;
      best = v;
      value = u;
    }
  }
  return {best, value};
}

template <class S>
struct LegendrePair {
  std::function<S(const S&)> g;
  std::function<S(const S&)> g_star;
};

// g from the delta antiderivative of f, g* from the image-side integral of
// f^{-1}, pinned so that g(alpha1) + g*(beta1) = alpha1*beta1. Then
// g(a) + g*(b) - ab reproduces the Young functional pointwise.
template <class S>
LegendrePair<S> legendre_pair(const YoungContext<S>& ctx, const S& g_anchor) {
  auto held = std::make_shared<const YoungContext<S>>(ctx);
  LegendrePair<S> out;
  out.g = [held, g_anchor](const S& a) { return g_anchor + held->delta(held->alpha1(), a); };
  out.g_star = [held, g_anchor](const S& b) {
    return held->image_integral(held->beta1(), b) + held->alpha1() * held->beta1() - g_anchor;
  };
  return out;
}

// Inverse-free sandwich: every term evaluates f only on the domain scale.
template <class S>
BoundReport<S> inverse_free_sandwich(const YoungContext<S>& ctx, const S& a,
                                     const S& a_hat, const S& alpha, const S& alpha_hat) {
  BoundReport<S> r;
  r.variant = Variant::RhoRho;
  r.reversed = !ctx.increasing();
  r.witnesses = Witnesses<S>{a, a_hat, alpha, alpha_hat};
  r.middle = ctx.delta(a_hat, a) - ctx.delta(alpha_hat, alpha) +
             (alpha - a) * ctx.value_at(alpha) + (a_hat - alpha_hat) * ctx.value_at(alpha_hat);
  r.lower = (alpha_hat - a_hat) * (ctx.f_rho(a_hat) - ctx.value_at(alpha_hat));
  r.upper = (alpha - a) * (ctx.value_at(alpha) - ctx.f_rho(a));
  const auto& dom = ctx.domain();
  r.equality_lower = nearly_equal(alpha_hat, dom.rho(a_hat)) ||
                     nearly_equal(alpha_hat, dom.snap(a_hat));
  r.equality_upper = nearly_equal(alpha, dom.rho(a)) || nearly_equal(alpha, dom.snap(a));
  return r;
}

namespace detail {

template <class S>
struct PiecewiseParts {
  S middle{};
  S k_first{}, k_last{};
  bool eq_first = false, eq_last = false;
  bool inc_first = false, inc_last = false;
};

// Shared middle/K assembly for the piecewise sandwiches. `rho_value`
// selects f o Rho (corollary on scales) or f itself (real line theorem)
// inside the K products.
template <class S>
PiecewiseParts<S> piecewise_parts(const PiecewiseFn<S>& pf, const S& b_first,
                                  const S& b_last, bool use_rho, const S& jump_sum) {
  const std::size_t m = pf.piece_count();
  std::vector<YoungContext<S>> ctx;
  ctx.reserve(m);
  for (const auto& piece : pf.pieces) ctx.emplace_back(piece);

  PiecewiseParts<S> out;
  out.inc_first = pf.pieces.front().increasing();
  out.inc_last = pf.pieces.back().increasing();

  S acc = jump_sum + pf.knots.front() * b_first - pf.knots.back() * b_last;
  for (std::size_t i = 0; i < m; ++i)
    acc += ctx[i].delta(pf.knots[i], pf.knots[i + 1]);
  // Image-side integral telescoped through the piece ranges; interior
  // gaps contribute nothing (the jump sum accounts for them on the line).
  for (std::size_t i = 0; i < m; ++i) {
    const S from = i == 0 ? b_first : ctx[i].value_at(pf.knots[i]);
    const S to = i + 1 == m ? b_last : ctx[i].value_at(pf.knots[i + 1]);
    acc += ctx[i].image_integral(from, to);
  }
  out.middle = acc;

  const S t_first = pf.knots.front();
  const S t_last = pf.knots.back();
  const S inv_first = ctx.front().inverse(b_first);
  const S inv_last = ctx.back().inverse(b_last);
  if (!(pf.knots[0] <= inv_first + numeric_traits<S>::point_tolerance()) ||
      !(inv_first <= pf.knots[1] + numeric_traits<S>::point_tolerance()))
    throw PointNotInScale("piecewise bound: b_1 inverts outside the first piece");
  if (!(pf.knots[m - 1] <= inv_last + numeric_traits<S>::point_tolerance()) ||
      !(inv_last <= pf.knots[m] + numeric_traits<S>::point_tolerance()))
    throw PointNotInScale("piecewise bound: b_{m+1} inverts outside the last piece");

  const S fv_first =
      use_rho ? pf.pieces.front().eval(pf.scale.rho(t_first)) : pf.pieces.front().eval(t_first);
  const S fv_last =
      use_rho ? pf.pieces.back().eval(pf.scale.rho(t_last)) : pf.pieces.back().eval(t_last);
  out.k_first = (t_first - inv_first) * (fv_first - b_first);
  out.k_last = (t_last - inv_last) * (fv_last - b_last);
  out.eq_first = nearly_equal(b_first, fv_first) ||
                 nearly_equal(b_first, pf.pieces.front().eval(t_first));
  out.eq_last =
      nearly_equal(b_last, fv_last) || nearly_equal(b_last, pf.pieces.back().eval(t_last));
  return out;
}

template <class S>
BoundReport<S> piecewise_report(const PiecewiseFn<S>& pf, const PiecewiseParts<S>& p,
                                const S& b_first, const S& b_last) {
  BoundReport<S> r;
  r.variant = Variant::RhoRho;
  r.witnesses = Witnesses<S>{pf.knots.back(), pf.knots.front(), b_last, b_first};
  r.middle = p.middle;
  r.equality_lower = p.eq_first;
  r.equality_upper = p.eq_last;
  if (p.inc_first == p.inc_last) {
    // Both end pieces the same way: -K_1 <= I <= K_{m+1} (reversed if
    // both decreasing).
    r.lower = -p.k_first;
    r.upper = p.k_last;
    r.reversed = !p.inc_first;
  } else {
    // Mixed ends: K_{m+1} - K_1 <= I <= 0 (reversed in the mirror case).
    r.lower = p.k_last - p.k_first;
    r.upper = S(0);
    r.reversed = !p.inc_first;
  }
  return r;
}

}  // namespace detail

// Piecewise-monotone sandwich on a time scale (ScaleContinuous mode):
// K_i built from f o rho.
template <class S>
BoundReport<S> piecewise_sandwich(const PiecewiseFn<S>& pf, const S& b_first,
                                  const S& b_last) {
  if (pf.mode != PiecewiseMode::ScaleContinuous)
    throw Error("piecewise_sandwich: expected ScaleContinuous mode");
  auto parts = detail::piecewise_parts(pf, b_first, b_last, /*use_rho=*/true, S(0));
  return detail::piecewise_report(pf, parts, b_first, b_last);
}

// Piecewise-continuous sandwich on the real line (RealJumps mode): the
// middle carries the interior jump-correction sum and K_i uses f(a_i).
template <class S>
BoundReport<S> piecewise_real_sandwich(const PiecewiseFn<S>& pf, const S& b_first,
                                       const S& b_last) {
  if (pf.mode != PiecewiseMode::RealJumps)
    throw Error("piecewise_real_sandwich: expected RealJumps mode");
  S jump_sum(0);
  for (const auto& j : pf.jumps) jump_sum += j.at * (j.right - j.left);
  auto parts = detail::piecewise_parts(pf, b_first, b_last, /*use_rho=*/false, jump_sum);
  return detail::piecewise_report(pf, parts, b_first, b_last);
}

}  // namespace chronoscale
