#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chronoscale/errors.hpp"
#include "chronoscale/numeric.hpp"

namespace chronoscale {

// One verification result. Scalar columns hold values in the regime the
// row was computed under; monostate renders as an empty field.
struct ReportRow {
  std::string check;
  std::string inputs;
  ScalarValue lower, middle, upper;
  bool holds = true;
  bool equality = false;
  bool exact = false;
};

struct Report {
  std::vector<ReportRow> rows;

  bool all_hold() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const ReportRow& r) { return r.holds; });
  }
};

enum class ReportFormat { Csv, Json, Table };

inline ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "table") return ReportFormat::Table;
  throw ConfigError("unknown report format: " + name);
}

inline Rational parse_rational_text(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      boost::multiprecision::cpp_int num(text.substr(0, slash));
      boost::multiprecision::cpp_int den(text.substr(slash + 1));
      if (den == 0) throw ConfigError("rational with zero denominator: " + text);
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(boost::multiprecision::cpp_int(digits), den);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse rational: " + text);
  }
}

// Exact values render as p/q; doubles use the shortest round-trip form.
inline std::string format_scalar(const ScalarValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return "";
  if (const double* d = std::get_if<double>(&v)) return nlohmann::json(*d).dump();
  std::ostringstream os;
  os << std::get<Rational>(v);
  return os.str();
}

namespace detail {

inline nlohmann::ordered_json row_to_json(const ReportRow& r) {
  auto scalar = [&](const ScalarValue& v) -> nlohmann::ordered_json {
    if (std::holds_alternative<std::monostate>(v)) return nullptr;
    if (const double* d = std::get_if<double>(&v)) return *d;
    return format_scalar(v);
  };
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["inputs"] = r.inputs;
  j["lower"] = scalar(r.lower);
  j["middle"] = scalar(r.middle);
  j["upper"] = scalar(r.upper);
  j["holds"] = r.holds;
  j["equality"] = r.equality;
  j["regime"] = r.exact ? "exact" : "approx";
  return j;
}

inline ScalarValue scalar_from_json(const nlohmann::json& v, bool exact) {
  if (v.is_null()) return std::monostate{};
  if (exact) {
    if (!v.is_string()) throw ConfigError("exact report values must be strings");
    return parse_rational_text(v.get<std::string>());
  }
  if (!v.is_number()) throw ConfigError("approx report values must be numbers");
  return v.get<double>();
}

}  // namespace detail

inline std::string render_report(const Report& report, ReportFormat fmt) {
  if (fmt == ReportFormat::Csv) {
    std::string out = "check,inputs,lower,middle,upper,holds,equality,regime\n";
    for (const auto& r : report.rows) {
      out += r.check;
      out += ',';
      out += r.inputs;
      out += ',';
      out += format_scalar(r.lower);
      out += ',';
      out += format_scalar(r.middle);
      out += ',';
      out += format_scalar(r.upper);
      out += ',';
      out += r.holds ? "true" : "false";
      out += ',';
      out += r.equality ? "true" : "false";
      out += ',';
      out += r.exact ? "exact" : "approx";
      out += '\n';
    }
    return out;
  }
  if (fmt == ReportFormat::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) arr.push_back(detail::row_to_json(r));
    return arr.dump(2) + "\n";
  }
  // Aligned text table.
  static const char* headers[] = {"check", "inputs",   "lower",  "middle",
                                  "upper", "holds",    "equality", "regime"};
  std::vector<std::array<std::string, 8>> cells;
  cells.reserve(report.rows.size());
  for (const auto& r : report.rows)
    cells.push_back({r.check, r.inputs, format_scalar(r.lower), format_scalar(r.middle),
                     format_scalar(r.upper), r.holds ? "true" : "false",
                     r.equality ? "true" : "false", r.exact ? "exact" : "approx"});
  std::array<std::size_t, 8> width{};
  for (std::size_t c = 0; c < 8; ++c) {
    width[c] = std::string(headers[c]).size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  auto emit = [&](const std::array<std::string, 8>& row) {
    for (std::size_t c = 0; c < 8; ++c) {
      os << row[c] << std::string(width[c] - row[c].size(), ' ');
      os << (c + 1 == 8 ? "\n" : "  ");
    }
  };
  emit({headers[0], headers[1], headers[2], headers[3], headers[4], headers[5], headers[6],
        headers[7]});
  for (const auto& row : cells) emit(row);
  return os.str();
}

inline Report report_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("report JSON must be an array of rows");
  Report rep;
  for (const auto& j : doc) {
    ReportRow r;
    r.check = j.at("check").get<std::string>();
    r.inputs = j.at("inputs").get<std::string>();
    const std::string regime = j.at("regime").get<std::string>();
    if (regime != "exact" && regime != "approx")
      throw ConfigError("unknown regime in report row: " + regime);
    r.exact = regime == "exact";
    r.lower = detail::scalar_from_json(j.at("lower"), r.exact);
    r.middle = detail::scalar_from_json(j.at("middle"), r.exact);
    r.upper = detail::scalar_from_json(j.at("upper"), r.exact);
    r.holds = j.at("holds").get<bool>();
    r.equality = j.at("equality").get<bool>();
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace chronoscale
