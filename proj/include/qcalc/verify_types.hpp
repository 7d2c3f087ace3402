#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcalc/core.hpp"

namespace qcalc {

enum class IdentityId {
  QPDE_HAHN,
  EXPANSION_ROUNDTRIP,
  GEN_FUNC,
  MEHLER,
  ANDREWS_ASKEY,
  MOMENT_W,
  QINT_HAHN_SERIES,
  QINT_3PHI2,
  AL_SALAM_VERMA,
  QGAUSS_STEP,
  QINT_DOUBLE,
  ASKEY_WILSON,
  AW_QINT_EXCHANGE,
  CURIOUS,
  ISV,
  LIU_BETA,
  NASSRALLAH_RAHMAN,
  MULTILINEAR,
  Q_LAURICELLA,
  HK_PARTIAL_FRACTION,
  RS_MULTISUM,
  SRIVASTAVA_JAIN,
};

inline constexpr std::array<std::string_view, 22> identity_names{
    "QPDE_HAHN",        "EXPANSION_ROUNDTRIP", "GEN_FUNC",          "MEHLER",      "ANDREWS_ASKEY",
    "MOMENT_W",         "QINT_HAHN_SERIES",    "QINT_3PHI2",        "AL_SALAM_VERMA", "QGAUSS_STEP",
    "QINT_DOUBLE",      "ASKEY_WILSON",        "AW_QINT_EXCHANGE",  "CURIOUS",     "ISV",
    "LIU_BETA",         "NASSRALLAH_RAHMAN",   "MULTILINEAR",       "Q_LAURICELLA", "HK_PARTIAL_FRACTION",
    "RS_MULTISUM",      "SRIVASTAVA_JAIN",
};

inline std::string_view to_string(IdentityId id) { return identity_names[static_cast<std::size_t>(id)]; }

inline std::optional<IdentityId> parse_identity(std::string_view name) {
  for (std::size_t i = 0; i < identity_names.size(); ++i)
    if (identity_names[i] == name) return static_cast<IdentityId>(i);
  return std::nullopt;
}

// Named parameter values for one identity instance. Integer-valued
// parameters (degrees, fold counts, variant selectors) are stored as
// complex numbers with zero imaginary part.
struct ParamSample {
  IdentityId id = IdentityId::QPDE_HAHN;
  std::uint64_t seed = 0;
  Complex q{0.5, 0.0};
  std::vector<std::pair<std::string, Complex>> values;

  bool has(std::string_view name) const {
    for (const auto& [k, v] : values)
      if (k == name) return true;
    return false;
  }

  Complex get(std::string_view name) const {
    for (const auto& [k, v] : values)
      if (k == name) return v;
    throw DomainError("ParamSample: no parameter named " + std::string(name));
  }

  long get_int(std::string_view name) const { return static_cast<long>(std::lround(get(name).real())); }

  void set(std::string_view name, Complex value) {
    for (auto& [k, v] : values)
      if (k == name) {
        v = value;
        return;
      }
    values.emplace_back(std::string(name), value);
  }

  bool operator==(const ParamSample&) const = default;
};

struct SamplingOptions {
  double radius = 0.5;
  double pole_margin = 0.05;
  std::optional<Complex> q;               // default: uniform real in [0.1, 0.7]
  std::map<std::string, Complex> fixed;   // pinned parameter values
};

struct IdentityReport {
  IdentityId id = IdentityId::QPDE_HAHN;
  std::uint64_t seed = 0;
  long point_index = 0;
  ParamSample params;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_resid = 0.0;
  double rel_resid = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double lhs_err_est = 0.0;
  double rhs_err_est = 0.0;
  std::string reason;
};

}  // namespace qcalc
