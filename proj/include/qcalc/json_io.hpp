#pragma once

// JSON helpers: complex values as [re, im] pairs, coefficient-grid files, and
// a serializer that prints every double with 17 significant digits.

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "qcalc/core.hpp"
#include "qcalc/operators.hpp"

namespace qcalc {

using Json = nlohmann::ordered_json;

inline Json to_json_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("expected a number or a [re, im] pair");
}

namespace detail {

inline void dump_number(std::string& out, double d) {
  if (!std::isfinite(d)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  out += buf;
}

inline void dump_json(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_json(out, it.value());
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_json(out, v);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      dump_number(out, j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace detail

// Compact single-line JSON with full-precision doubles.
inline std::string dump_json(const Json& j) {
  std::string out;
  detail::dump_json(out, j);
  return out;
}

// Grid files: {"M": m, "N": n, "coeffs": [[re, im], ...]} with coefficients in
// row-major order (index m * (N + 1) + n), or the flat form [M, N, [re, im], ...].
inline BivarSeries grid_from_json(const Json& j) {
  long max_m = 0, max_n = 0;
  std::vector<Complex> coeffs;
  try {
    if (j.is_object()) {
      max_m = j.at("M").get<long>();
      max_n = j.at("N").get<long>();
      for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
    } else if (j.is_array() && j.size() >= 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
      max_m = j[0].get<long>();
      max_n = j[1].get<long>();
      for (std::size_t i = 2; i < j.size(); ++i) coeffs.push_back(complex_from_json(j[i]));
    } else {
      throw DomainError("grid file must be an object {M, N, coeffs} or an array [M, N, ...]");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed grid file: ") + e.what());
  }
  return BivarSeries(max_m, max_n, std::move(coeffs));
}

inline Json grid_to_json(const BivarSeries& g) {
  Json coeffs = Json::array();
  for (const Complex& c : g.data()) coeffs.push_back(to_json_pair(c));
  return Json{{"M", g.max_m()}, {"N", g.max_n()}, {"coeffs", std::move(coeffs)}};
}

}  // namespace qcalc
