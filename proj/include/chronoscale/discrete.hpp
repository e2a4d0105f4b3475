#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chronoscale/errors.hpp"
#include "chronoscale/numeric.hpp"
#include "chronoscale/young.hpp"

namespace chronoscale {

// t to the k falling: t (t-1) ... (t-k+1); empty product for k = 0.
inline Rational falling_factorial(long long t, int k) {
  if (k < 0) throw Error("falling_factorial: negative order");
  Rational acc(1);
  for (int i = 0; i < k; ++i) acc *= Rational(t - i);
  return acc;
}

inline Rational factorial(int k) {
  Rational acc(1);
  for (int i = 2; i <= k; ++i) acc *= Rational(i);
  return acc;
}

inline Rational binomial_coefficient(long long t, int k) {
  return falling_factorial(t, k) / factorial(k);
}

struct IntegerWindow {
  long long lo = 0;
  long long hi = 0;
};

// Strictly increasing integer -> rational function, given as a callable.
using DiscreteFn = std::function<Rational(long long)>;

namespace detail {

struct DiscreteTable {
  long long lo;
  std::vector<Rational> values;  // values[t - lo]

  const Rational& at(long long t) const { return values[static_cast<std::size_t>(t - lo)]; }
  long long clamp_rho(long long t) const { return t - 1 < lo ? lo : t - 1; }

  std::size_t image_index(const Rational& y) const {
    // Exact binary search over the (strictly increasing) value list.
    std::size_t a = 0, b = values.size();
    while (a < b) {
      std::size_t mid = (a + b) / 2;
      if (values[mid] < y)
        a = mid + 1;
      else
        b = mid;
    }
    if (a == values.size() || values[a] != y)
      throw PointNotInScale("value is not on the image grid f(Z)");
    return a;
  }
};

inline DiscreteTable tabulate_increasing(const DiscreteFn& f, IntegerWindow w) {
  if (w.hi < w.lo) throw InvalidScale("integer window is empty");
  DiscreteTable tab;
  tab.lo = w.lo;
  tab.values.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
  for (long long t = w.lo; t <= w.hi; ++t) {
    Rational v = f(t);
    if (!tab.values.empty() && !(tab.values.back() < v))
      throw MonotonicityViolation("discrete function is not strictly increasing");
    tab.values.push_back(std::move(v));
  }
  return tab;
}

// Sum_{t=from}^{to-1} f(t), negated when to < from.
inline Rational window_sum(const DiscreteTable& tab, long long from, long long to) {
  if (from == to) return Rational(0);
  const bool flip = to < from;
  if (flip) std::swap(from, to);
  Rational acc(0);
  for (long long t = from; t < to; ++t) acc += tab.at(t);
  return flip ? Rational(-acc) : acc;
}

// Sum over y in (b_hat, b] of f^{-1}(y) * (y - predecessor), with the
// backward weight clamped at the window edge; negated when b < b_hat.
inline Rational image_nabla_sum(const DiscreteTable& tab, const Rational& b_hat,
                                const Rational& b) {
  std::size_t jlo = tab.image_index(b_hat);
  std::size_t jhi = tab.image_index(b);
  const bool flip = jhi < jlo;
  if (flip) std::swap(jlo, jhi);
  Rational acc(0);
  for (std::size_t j = jlo + 1; j <= jhi; ++j)
    acc += (tab.values[j] - tab.values[j - 1]) * Rational(tab.lo + static_cast<long long>(j));
  return flip ? Rational(-acc) : acc;
}

inline void require_in_window(IntegerWindow w, long long t, const char* who) {
  if (t < w.lo || t > w.hi) {
    std::ostringstream os;
    os << who << "=" << t << " outside integer window [" << w.lo << "," << w.hi << "]";
    throw PointNotInScale(os.str());
  }
}

}  // namespace detail

// Exact sandwich on Z by direct summation. rho is clamped at the window
// edge, so f(a-1) reads f(rho(a)) of the windowed scale; this keeps the
// report identical, term for term, to the general sandwich on the same
// window.
inline BoundReport<Rational> discrete_sandwich(const DiscreteFn& f, IntegerWindow w,
                                               long long a, long long a_hat,
                                               const Rational& b, const Rational& b_hat) {
  detail::require_in_window(w, a, "a");
  detail::require_in_window(w, a_hat, "a_hat");
  const auto tab = detail::tabulate_increasing(f, w);
  BoundReport<Rational> r;
  r.variant = Variant::RhoRho;
  r.witnesses = Witnesses<Rational>{Rational(a), Rational(a_hat), b, b_hat};
  r.middle = detail::window_sum(tab, a_hat, a) + detail::image_nabla_sum(tab, b_hat, b) -
             Rational(a) * b + Rational(a_hat) * b_hat;
  const long long inv_b = tab.lo + static_cast<long long>(tab.image_index(b));
  const long long inv_bh = tab.lo + static_cast<long long>(tab.image_index(b_hat));
  r.lower = (Rational(inv_bh) - Rational(a_hat)) * (tab.at(tab.clamp_rho(a_hat)) - b_hat);
  r.upper = (Rational(inv_b) - Rational(a)) * (b - tab.at(tab.clamp_rho(a)));
  r.equality_lower = b_hat == tab.at(tab.clamp_rho(a_hat)) || b_hat == tab.at(a_hat);
  r.equality_upper = b == tab.at(tab.clamp_rho(a)) || b == tab.at(a);
  return r;
}

// Exact inverse-free sandwich on Z: never inverts f.
inline BoundReport<Rational> discrete_inverse_free(const DiscreteFn& f, IntegerWindow w,
                                                   long long a, long long a_hat,
                                                   long long alpha, long long alpha_hat) {
  detail::require_in_window(w, a, "a");
  detail::require_in_window(w, a_hat, "a_hat");
  detail::require_in_window(w, alpha, "alpha");
  detail::require_in_window(w, alpha_hat, "alpha_hat");
  const auto tab = detail::tabulate_increasing(f, w);
  BoundReport<Rational> r;
  r.variant = Variant::RhoRho;
  r.witnesses =
      Witnesses<Rational>{Rational(a), Rational(a_hat), Rational(alpha), Rational(alpha_hat)};
  r.middle = detail::window_sum(tab, a_hat, a) - detail::window_sum(tab, alpha_hat, alpha) +
             Rational(alpha - a) * tab.at(alpha) + Rational(a_hat - alpha_hat) * tab.at(alpha_hat);
  r.lower = Rational(alpha_hat - a_hat) * (tab.at(tab.clamp_rho(a_hat)) - tab.at(alpha_hat));
  r.upper = Rational(alpha - a) * (tab.at(alpha) - tab.at(tab.clamp_rho(a)));
  r.equality_lower = alpha_hat == a_hat - 1 || alpha_hat == a_hat;
  r.equality_upper = alpha == a - 1 || alpha == a;
  return r;
}

enum class NamedExample { FallingFactorial, GeometricB, LegendreB, SineK, BinomialK };

inline const char* example_name(NamedExample e) {
  switch (e) {
    case NamedExample::FallingFactorial: return "FallingFactorial";
    case NamedExample::GeometricB: return "GeometricB";
    case NamedExample::LegendreB: return "LegendreB";
    case NamedExample::SineK: return "SineK";
    case NamedExample::BinomialK: return "BinomialK";
  }
  return "?";
}

inline std::optional<NamedExample> example_from_name(const std::string& s) {
  for (NamedExample e :
       {NamedExample::FallingFactorial, NamedExample::GeometricB, NamedExample::LegendreB,
        NamedExample::SineK, NamedExample::BinomialK})
    if (s == example_name(e)) return e;
  return std::nullopt;
}

struct ExampleParams {
  int k = 2;                          // FallingFactorial, BinomialK, SineK
  Rational B = Rational(2);           // GeometricB, LegendreB
  std::optional<long long> window_lo;
  long long window_width = 64;
};

// One three-term chain instance: lhs <= mid <= rhs with `equality` set by
// the example's grid characterization (never by numeric coincidence).
struct ExampleRow {
  std::string inputs;
  ScalarValue lhs, mid, rhs;
  bool equality = false;
  bool approx = false;  // SineK / LegendreB evaluate in floating point
};

namespace detail {

inline std::string int_inputs(std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ';';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

inline std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace detail

// Evaluates the worked discrete examples over (alpha, a) pairs with
// a >= alpha in the requested window. Rows with a == alpha use the
// cleared-denominator form of the chain, which degenerates to 0 = 0 = 0.
inline std::vector<ExampleRow> example_suite(NamedExample which, const ExampleParams& p) {
  std::vector<ExampleRow> rows;
  const int k = p.k;
  switch (which) {
    case NamedExample::FallingFactorial: {
      if (k < 1) throw Error("FallingFactorial: k must be a positive integer");
      const long long lo = p.window_lo.value_or(k - 1);
      if (lo < k - 1) throw Error("FallingFactorial: window must start at or after k-1");
      const long long hi = lo + p.window_width;
      for (long long alpha = lo; alpha <= hi; ++alpha)
        for (long long a = alpha; a <= hi; ++a) {
          ExampleRow row;
          row.inputs = detail::int_inputs({{"k", std::to_string(k)},
                                           {"alpha", std::to_string(alpha)},
                                           {"a", std::to_string(a)}});
          row.lhs = Rational(a - alpha) * falling_factorial(alpha, k);
          row.mid = (falling_factorial(a, k + 1) - falling_factorial(alpha, k + 1)) /
                    Rational(k + 1);
          row.rhs = Rational(a - alpha) * falling_factorial(a - 1, k);
          row.equality = alpha == a - 1 || alpha == a;
          rows.push_back(std::move(row));
        }
      return rows;
    }
    case NamedExample::GeometricB: {
      if (!(p.B > 1)) throw Error("GeometricB: B must exceed 1");
      const long long lo = p.window_lo.value_or(0);
      const long long hi = lo + p.window_width;
      for (long long alpha = lo; alpha <= hi; ++alpha)
        for (long long a = alpha; a <= hi; ++a) {
          ExampleRow row;
          row.inputs = detail::int_inputs({{"B", detail::rational_str(p.B)},
                                           {"alpha", std::to_string(alpha)},
                                           {"a", std::to_string(a)}});
          if (a == alpha) {
            row.lhs = Rational(0);
            row.mid = Rational(0);
            row.rhs = Rational(0);
          } else {
            row.lhs = int_pow(p.B, alpha);
            row.mid = (int_pow(p.B, a) - int_pow(p.B, alpha)) /
                      (Rational(a - alpha) * (p.B - 1));
            row.rhs = int_pow(p.B, a - 1);
          }
          row.equality = alpha == a - 1 || alpha == a;
          rows.push_back(std::move(row));
        }
      return rows;
    }
    case NamedExample::BinomialK: {
      if (k < 1) throw Error("BinomialK: k must be a positive integer");
      const long long lo = p.window_lo.value_or(k);
      if (lo < k) throw Error("BinomialK: window must start at or after k");
      const long long hi = lo + p.window_width;
      for (long long alpha = lo; alpha <= hi; ++alpha)
        for (long long a = alpha; a <= hi; ++a) {
          ExampleRow row;
          row.inputs = detail::int_inputs({{"k", std::to_string(k)},
                                           {"alpha", std::to_string(alpha)},
                                           {"a", std::to_string(a)}});
          if (a == alpha) {
            row.lhs = Rational(0);
            row.mid = Rational(0);
            row.rhs = Rational(0);
          } else {
            row.lhs = binomial_coefficient(alpha, k);
            row.mid = (Rational(a - k) * binomial_coefficient(a, k) -
                       Rational(alpha - k) * binomial_coefficient(alpha, k)) /
                      (Rational(a - alpha) * Rational(k + 1));
            row.rhs = binomial_coefficient(a - 1, k);
          }
          row.equality = alpha == a - 1 || alpha == a;
          rows.push_back(std::move(row));
        }
      return rows;
    }
    case NamedExample::SineK: {
      if (k < 1) throw Error("SineK: k must be a positive integer");
      const double pi = 3.14159265358979323846;
      const double csc = 1.0 / std::sin(pi / (4.0 * k));
      for (long long alpha = -k; alpha <= k; ++alpha)
        for (long long a = alpha; a <= k; ++a) {
          ExampleRow row;
          row.approx = true;
          row.inputs = detail::int_inputs({{"k", std::to_string(k)},
                                           {"alpha", std::to_string(alpha)},
                                           {"a", std::to_string(a)}});
          if (a == alpha) {
            row.lhs = 0.0;
            row.mid = 0.0;
            row.rhs = 0.0;
          } else {
            row.lhs = std::sin(alpha * pi / (2.0 * k));
            row.mid = (std::cos((2.0 * alpha - 1.0) * pi / (4.0 * k)) -
                       std::cos((2.0 * a - 1.0) * pi / (4.0 * k))) *
                      csc / (2.0 * (a - alpha));
            row.rhs = std::sin((a - 1.0) * pi / (2.0 * k));
          }
          row.equality = alpha == a - 1 || alpha == a;
          rows.push_back(std::move(row));
        }
      return rows;
    }
    case NamedExample::LegendreB: {
      if (!(p.B > 1)) throw Error("LegendreB: B must exceed 1");
      const double B = numeric_traits<Rational>::to_double(p.B);
      const double logB = std::log(B);
      const long long alpha = p.window_lo.value_or(0);
      const long long hi = alpha + p.window_width;
      auto Bpow = [&](long long e) { return std::pow(B, static_cast<double>(e)); };
      for (long long jb = alpha - 1; jb <= alpha + 1; ++jb) {    // beta = B^jb
        const double beta = Bpow(jb);
        for (long long a = alpha; a <= hi; ++a)
          for (long long ib = alpha - 1; ib <= hi; ++ib) {       // b = B^ib
            const double b = Bpow(ib);
            ExampleRow row;
            row.approx = true;
            row.inputs = detail::int_inputs({{"B", detail::rational_str(p.B)},
                                             {"alpha", std::to_string(alpha)},
                                             {"beta", "B^" + std::to_string(jb)},
                                             {"a", std::to_string(a)},
                                             {"b", "B^" + std::to_string(ib)}});
            const double logb = std::log(b) / logB;
            const double logbeta = std::log(beta) / logB;
            row.lhs = (logbeta - alpha) * (Bpow(alpha - 1) - beta);
            row.mid = (Bpow(a) - Bpow(alpha)) / (B - 1.0) + b * logb - b / (B - 1.0) +
                      beta * (alpha + 1.0 / (B - 1.0) - logbeta) - a * b;
            row.rhs = (logb - a) * (b - Bpow(a - 1));
            row.equality = (jb == alpha - 1 || jb == alpha) && (ib == a - 1 || ib == a);
            rows.push_back(std::move(row));
          }
      }
      return rows;
    }
  }
  throw Error("example_suite: unknown example");
}

}  // namespace chronoscale
