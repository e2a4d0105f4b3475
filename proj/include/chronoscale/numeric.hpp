#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace chronoscale {

// Arbitrary-precision rational scalar backing the exact regime.
using Rational = boost::multiprecision::cpp_rational;

// A computed value that may live in either regime. monostate = "no value"
// (e.g. a report column that does not apply to a check).
using ScalarValue = std::variant<std::monostate, double, Rational>;

// Runtime description of the numeric regime a run executes under.
// Exact demands rational inputs and decides every comparison with zero
// tolerance; Approx carries the quadrature/inequality tolerance.
struct ScalarMode {
  enum class Kind { Exact, Approx };
  Kind kind = Kind::Approx;
  double tolerance = 1e-9;

  static ScalarMode exact() { return {Kind::Exact, 0.0}; }
  static ScalarMode approx(double tol = 1e-9) { return {Kind::Approx, tol}; }
  bool is_exact() const { return kind == Kind::Exact; }
};

template <class S>
struct numeric_traits;

template <>
struct numeric_traits<double> {
  static constexpr bool is_exact = false;
  // Absolute tolerance for grid membership and point-identity predicates.
  static double point_tolerance() { return 1e-12; }
  static bool finite(double x) { return std::isfinite(x); }
  static double abs(double x) { return std::fabs(x); }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double to_double(double x) { return x; }
};

template <>
struct numeric_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational point_tolerance() { return Rational(0); }
  static bool finite(const Rational&) { return true; }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static Rational from_int(long long v) { return Rational(v); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
};

template <class S>
bool nearly_equal(const S& a, const S& b) {
  return numeric_traits<S>::abs(a - b) <= numeric_traits<S>::point_tolerance();
}

template <class S>
bool nearly_equal(const S& a, const S& b, const S& tol) {
  return numeric_traits<S>::abs(a - b) <= tol;
}

// base^e by binary exponentiation; negative exponents invert.
template <class S>
S int_pow(const S& base, long long e) {
  if (e < 0) {
    if (base == S(0)) throw std::domain_error("int_pow: 0 to a negative power");
    return S(1) / int_pow(base, -e);
  }
  S acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace chronoscale
