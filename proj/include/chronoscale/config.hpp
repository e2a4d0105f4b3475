#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chronoscale/errors.hpp"
#include "chronoscale/monotone.hpp"
#include "chronoscale/numeric.hpp"
#include "chronoscale/report.hpp"
#include "chronoscale/timescale.hpp"

namespace chronoscale {

// Numbers in configs: JSON numbers, decimal or p/q strings, or
// {"num": p, "den": q}. The exact regime refuses non-integer raw JSON
// numbers (their binary value is almost never the decimal the author
// meant); use a string or num/den instead.
template <class S>
S parse_scalar(const nlohmann::json& v);

namespace detail {

inline Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return parse_rational_text(v.get<std::string>());
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    const auto part = [](const nlohmann::json& x) -> boost::multiprecision::cpp_int {
      if (x.is_number_integer()) return boost::multiprecision::cpp_int(x.get<long long>());
      if (x.is_string()) return boost::multiprecision::cpp_int(x.get<std::string>());
      throw ConfigError("num/den parts must be integers or integer strings");
    };
    boost::multiprecision::cpp_int den = part(v.at("den"));
    if (den == 0) throw ConfigError("rational with zero denominator");
    return Rational(part(v.at("num")), den);
  }
  throw ConfigError("expected an integer, a decimal/fraction string, or num/den: " + v.dump());
}

}  // namespace detail

template <>
inline double parse_scalar<double>(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  return numeric_traits<Rational>::to_double(detail::rational_from_json(v));
}

template <>
inline Rational parse_scalar<Rational>(const nlohmann::json& v) {
  if (v.is_number_float())
    throw ConfigError(
        "exact regime: write non-integer numbers as strings or num/den objects: " + v.dump());
  return detail::rational_from_json(v);
}

// Scale components serialize as [{"interval": [lo, hi]}, {"point": x}, ...].
template <class S>
TimeScale<S> scale_from_json(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.empty())
    throw ConfigError("scale must be a nonempty array of components");
  std::vector<Component<S>> comps;
  for (const auto& c : arr) {
    if (c.is_object() && c.contains("interval")) {
      const auto& iv = c.at("interval");
      if (!iv.is_array() || iv.size() != 2)
        throw ConfigError("interval component needs [lo, hi]");
      comps.push_back(interval(parse_scalar<S>(iv[0]), parse_scalar<S>(iv[1])));
    } else if (c.is_object() && c.contains("point")) {
      comps.push_back(isolated(parse_scalar<S>(c.at("point"))));
    } else {
      throw ConfigError("scale component must be {\"interval\":[lo,hi]} or {\"point\":x}");
    }
  }
  try {
    return build_timescale(std::move(comps));
  } catch (const InvalidScale& e) {
    throw ConfigError(std::string("invalid scale: ") + e.what());
  }
}

template <class S>
nlohmann::json scale_to_json(const TimeScale<S>& ts) {
  nlohmann::json arr = nlohmann::json::array();
  auto num = [](const S& x) -> nlohmann::json {
    if constexpr (numeric_traits<S>::is_exact)
      return format_scalar(ScalarValue(x));
    else
      return x;
  };
  for (const auto& c : ts.components()) {
    if (c.is_point())
      arr.push_back({{"point", num(c.lo)}});
    else
      arr.push_back({{"interval", {num(c.lo), num(c.hi)}}});
  }
  return arr;
}

namespace detail {

inline long long require_int_param(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key) || !spec.at(key).is_number_integer())
    throw ConfigError(std::string("function spec needs integer \"") + key + "\"");
  return spec.at(key).get<long long>();
}

template <class S>
S falling_value(const S& t, int k) {
  S acc(1);
  for (int i = 0; i < k; ++i) acc *= t - numeric_traits<S>::from_int(i);
  return acc;
}

template <class S>
S exp_value(const S& base, const S& t) {
  if constexpr (numeric_traits<S>::is_exact) {
    const Rational& r = t;
    if (boost::multiprecision::denominator(r) != 1)
      throw ExactRegimeError("exp builtin needs integer grid points in the exact regime");
    return int_pow(base, boost::multiprecision::numerator(r).template convert_to<long long>());
  } else {
    return std::pow(base, t);
  }
}

}  // namespace detail

// Named built-in monotone functions. Closed-form inverses are attached in
// the floating regime; the exact regime relies on discrete grid lookup.
template <class S>
MonotoneFn<S> function_from_json(const nlohmann::json& spec, const TimeScale<S>& scale,
                                 const S& lo, const S& hi) {
  if (!spec.is_object() || !spec.contains("name"))
    throw ConfigError("function spec needs a \"name\"");
  const std::string name = spec.at("name").get<std::string>();
  using Fn = std::function<S(const S&)>;
  Fn eval, inverse;
  Direction dir = Direction::Increasing;

  if (name == "identity") {
    eval = [](const S& t) { return t; };
    inverse = [](const S& y) { return y; };
  } else if (name == "affine") {
    const S c1 = parse_scalar<S>(spec.at("scale"));
    const S c0 = spec.contains("offset") ? parse_scalar<S>(spec.at("offset")) : S(0);
    if (c1 == S(0)) throw ConfigError("affine: scale coefficient must be nonzero");
    dir = c1 > S(0) ? Direction::Increasing : Direction::Decreasing;
    eval = [c1, c0](const S& t) { return c1 * t + c0; };
    inverse = [c1, c0](const S& y) { return (y - c0) / c1; };
  } else if (name == "power") {
    const int k = static_cast<int>(detail::require_int_param(spec, "k"));
    if (k < 1) throw ConfigError("power: k must be a positive integer");
    if (k % 2 == 0 && lo < S(0))
      throw ConfigError("power: even k needs a nonnegative window");
    eval = [k](const S& t) { return int_pow(t, k); };
    if constexpr (!numeric_traits<S>::is_exact)
      inverse = [k](const S& y) {
        return y < 0 ? -std::pow(-y, 1.0 / k) : std::pow(y, 1.0 / k);
      };
  } else if (name == "exp") {
    const S base = parse_scalar<S>(spec.at("base"));
    if (!(base > S(0)) || base == S(1))
      throw ConfigError("exp: base must be positive and not 1");
    dir = base > S(1) ? Direction::Increasing : Direction::Decreasing;
    eval = [base](const S& t) { return detail::exp_value(base, t); };
    if constexpr (!numeric_traits<S>::is_exact)
      inverse = [base](const S& y) { return std::log(y) / std::log(base); };
  } else if (name == "falling") {
    const int k = static_cast<int>(detail::require_int_param(spec, "k"));
    if (k < 1) throw ConfigError("falling: k must be a positive integer");
    eval = [k](const S& t) { return detail::falling_value(t, k); };
  } else if (name == "binomial") {
    const int k = static_cast<int>(detail::require_int_param(spec, "k"));
    if (k < 1) throw ConfigError("binomial: k must be a positive integer");
    S kfac(1);
    for (int i = 2; i <= k; ++i) kfac *= numeric_traits<S>::from_int(i);
    eval = [k, kfac](const S& t) { return detail::falling_value(t, k) / kfac; };
  } else if (name == "sine") {
    if constexpr (numeric_traits<S>::is_exact) {
      throw ConfigError("sine builtin is not available in the exact regime");
    } else {
      const int k = static_cast<int>(detail::require_int_param(spec, "k"));
      if (k < 1) throw ConfigError("sine: k must be a positive integer");
      const double pi = 3.14159265358979323846;
      eval = [k, pi](const S& t) { return std::sin(pi * t / (2.0 * k)); };
      inverse = [k, pi](const S& y) { return std::asin(y) * (2.0 * k) / pi; };
    }
  } else {
    throw ConfigError("unknown function builtin: " + name);
  }
  try {
    return make_monotone<S>(std::move(eval), dir, scale, lo, hi, std::move(inverse));
  } catch (const Error& e) {
    throw ConfigError(std::string("function spec rejected: ") + e.what());
  }
}

inline bool function_spec_is_piecewise(const nlohmann::json& spec) {
  return spec.is_object() && spec.contains("piecewise");
}

template <class S>
PiecewiseFn<S> piecewise_from_json(const nlohmann::json& spec, const TimeScale<S>& scale) {
  const auto& p = spec.at("piecewise");
  if (!p.contains("mode") || !p.contains("knots") || !p.contains("pieces"))
    throw ConfigError("piecewise spec needs mode, knots, and pieces");
  const std::string mode_name = p.at("mode").get<std::string>();
  PiecewiseMode mode;
  if (mode_name == "scale_continuous")
    mode = PiecewiseMode::ScaleContinuous;
  else if (mode_name == "real_jumps")
    mode = PiecewiseMode::RealJumps;
  else
    throw ConfigError("piecewise mode must be scale_continuous or real_jumps");
  std::vector<S> knots;
  for (const auto& k : p.at("knots")) knots.push_back(parse_scalar<S>(k));
  const auto& piece_specs = p.at("pieces");
  if (!piece_specs.is_array() || piece_specs.size() + 1 != knots.size())
    throw ConfigError("piecewise: need one piece per knot gap");
  std::vector<MonotoneFn<S>> pieces;
  for (std::size_t i = 0; i < piece_specs.size(); ++i)
    pieces.push_back(function_from_json<S>(piece_specs[i], scale, knots[i], knots[i + 1]));
  try {
    return make_piecewise(scale, std::move(knots), std::move(pieces), mode);
  } catch (const Error& e) {
    throw ConfigError(std::string("piecewise spec rejected: ") + e.what());
  }
}

// True when the spec can run under exact rational arithmetic.
inline bool function_rational_capable(const nlohmann::json& spec) {
  if (function_spec_is_piecewise(spec)) {
    for (const auto& piece : spec.at("piecewise").at("pieces"))
      if (!function_rational_capable(piece)) return false;
    return spec.at("piecewise").at("mode").get<std::string>() == "scale_continuous";
  }
  if (!spec.is_object() || !spec.contains("name")) return false;
  const std::string name = spec.at("name").get<std::string>();
  return name == "identity" || name == "affine" || name == "power" || name == "exp" ||
         name == "falling" || name == "binomial";
}

namespace detail {

// Every raw number in the subtree is exactly representable as a rational
// (integers; strings and num/den objects are always fine).
inline bool json_numbers_exactable(const nlohmann::json& v) {
  if (v.is_number_float()) return false;
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      (void)key;
      if (!json_numbers_exactable(val)) return false;
    }
  } else if (v.is_array()) {
    for (const auto& val : v)
      if (!json_numbers_exactable(val)) return false;
  }
  return true;
}

inline bool scale_json_discrete(const nlohmann::json& arr) {
  if (!arr.is_array()) return false;
  for (const auto& c : arr)
    if (!c.is_object() || !c.contains("point")) return false;
  return true;
}

}  // namespace detail

struct RunConfig {
  nlohmann::json doc;
  ScalarMode mode;
  ReportFormat format = ReportFormat::Csv;
  long long perturb_middle = 0;  // test-only middle offset, release ignores it
};

// Validates the top-level document and resolves the numeric regime. With
// no explicit "regime", exact arithmetic is chosen automatically when the
// scale is purely discrete with rational points and the function can be
// evaluated rationally.
inline RunConfig parse_config(const nlohmann::json& doc,
                              std::optional<bool> force_exact = std::nullopt,
                              std::optional<double> force_tolerance = std::nullopt) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const char* key : {"scale", "function", "checks"})
    if (!doc.contains(key))
      throw ConfigError(std::string("config is missing \"") + key + "\"");
  if (!doc.at("checks").is_array())
    throw ConfigError("\"checks\" must be an array");

  RunConfig cfg;
  cfg.doc = doc;

  const bool exactable = detail::scale_json_discrete(doc.at("scale")) &&
                         function_rational_capable(doc.at("function")) &&
                         detail::json_numbers_exactable(doc.at("scale")) &&
                         detail::json_numbers_exactable(doc.at("checks"));
  std::optional<bool> want_exact = force_exact;
  if (!want_exact && doc.contains("regime")) {
    const std::string r = doc.at("regime").get<std::string>();
    if (r == "exact")
      want_exact = true;
    else if (r == "approx")
      want_exact = false;
    else
      throw ConfigError("regime must be \"exact\" or \"approx\"");
  }
  if (want_exact.value_or(false) && !exactable)
    throw ConfigError("exact regime requested but the config is not rational-capable "
                      "(needs a purely discrete rational scale and a rational function)");
  const bool exact = want_exact.value_or(exactable);

  double tol = 1e-9;
  if (doc.contains("tolerance")) tol = doc.at("tolerance").get<double>();
  if (force_tolerance) tol = *force_tolerance;
  if (!(tol > 0) && !exact) throw ConfigError("tolerance must be positive");
  cfg.mode = exact ? ScalarMode::exact() : ScalarMode::approx(tol);

  if (doc.contains("format")) cfg.format = parse_format(doc.at("format").get<std::string>());

#ifdef CHRONOSCALE_TEST_HOOKS
  if (doc.contains("_test_perturb_middle"))
    cfg.perturb_middle = doc.at("_test_perturb_middle").get<long long>();
#endif
  return cfg;
}

}  // namespace chronoscale
