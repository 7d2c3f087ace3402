#pragma once

// Randomised numerical verification of the identity registry.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcalc/identities.hpp"
#include "qcalc/json_io.hpp"
#include "qcalc/verify_types.hpp"

namespace qcalc {

inline constexpr int max_sampling_attempts = 10000;
inline constexpr double default_q_low = 0.1;
inline constexpr double default_q_high = 0.7;

inline const std::vector<identities::IdentityDef>& registry() { return identities::table(); }

inline const identities::IdentityDef& identity_def(IdentityId id) { return identities::definition(id); }

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53 random bits scaled to [0, 1); independent of the standard library's
// distribution implementations.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline Complex uniform_disk(std::mt19937_64& g, double radius) {
  const double r = radius * std::sqrt(uniform01(g));
  const double angle = 2.0 * std::numbers::pi * uniform01(g);
  return std::polar(r, angle);
}

inline bool admissible(const identities::Constraints& c, const QContext& ctx, double margin) {
  if (!c.hypotheses) return false;
  for (const Complex& z : c.nonzero)
    if (!(std::abs(z) >= margin)) return false;
  for (const Complex& p : c.factor_bases)
    if (!is_finite(p) || !(min_factor_modulus(p, ctx) >= margin)) return false;
  return true;
}

inline std::string error_kind(const Error& e) {
  if (dynamic_cast<const PoleParameter*>(&e)) return "PoleParameter";
  if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const NotInKernel*>(&e)) return "NotInKernel";
  if (dynamic_cast<const GridInconsistent*>(&e)) return "GridInconsistent";
  if (dynamic_cast<const SamplingExhausted*>(&e)) return "SamplingExhausted";
  if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  return "Error";
}

}  // namespace detail

// Seed of point i of a sweep, so every point can be reproduced on its own.
inline std::uint64_t point_seed(std::uint64_t seed, IdentityId id, long index) {
  std::uint64_t h = detail::splitmix64(seed);
  h = detail::splitmix64(h ^ (static_cast<std::uint64_t>(id) + 1));
  return detail::splitmix64(h ^ static_cast<std::uint64_t>(index));
}

// Draws an admissible parameter point by rejection. Complex parameters are
// uniform in the disk |z| < radius (some identities use their own radius for
// individual parameters), integer parameters uniform over their choices, and
// q uniform in [0.1, 0.7] unless fixed.
inline ParamSample sample_params(IdentityId id, std::uint64_t seed, const SamplingOptions& opts) {
  const auto& def = identity_def(id);
  if (!(opts.radius > 0.0) || !(opts.pole_margin >= 0.0))
    throw DomainError("sample_params: radius must be > 0 and pole margin >= 0");
  for (const auto& [name, value] : opts.fixed) {
    bool known = false;
    for (const auto& p : def.params) known = known || p.name == name;
    if (!known) throw DomainError("sample_params: " + std::string(to_string(id)) + " has no parameter " + name);
  }
  if (opts.q) (void)QContext(*opts.q);

  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < max_sampling_attempts; ++attempt) {
    ParamSample s;
    s.id = id;
    s.seed = seed;
    s.q = opts.q ? *opts.q : Complex{default_q_low + (default_q_high - default_q_low) * detail::uniform01(gen), 0.0};
    long count = 0;
    for (const auto& p : def.params) {
      if (p.needs_count > count) continue;
      if (auto it = opts.fixed.find(p.name); it != opts.fixed.end()) {
        s.set(p.name, it->second);
      } else if (!p.choices.empty()) {
        const auto pick = static_cast<std::size_t>(detail::uniform01(gen) * static_cast<double>(p.choices.size()));
        s.set(p.name, Complex{static_cast<double>(p.choices[pick]), 0.0});
      } else {
        s.set(p.name, detail::uniform_disk(gen, p.fixed_radius > 0.0 ? p.fixed_radius : opts.radius));
      }
      if (p.name == def.count_param) count = s.get_int(p.name);
    }
    const QContext ctx(s.q);
    if (detail::admissible(def.constraints(s), ctx, opts.pole_margin)) return s;
  }
  throw SamplingExhausted("sample_params: no admissible point for " + std::string(to_string(id)) + " after " +
                          std::to_string(max_sampling_attempts) + " attempts");
}

inline ParamSample sample_params(IdentityId id, std::uint64_t seed, double radius = 0.5, double pole_margin = 0.05) {
  SamplingOptions opts;
  opts.radius = radius;
  opts.pole_margin = pole_margin;
  return sample_params(id, seed, opts);
}

// Evaluates both sides at `sample` (with q taken from the sample). Library
// errors do not escape: they are reported as a failed point with a reason.
inline IdentityReport verify_identity(IdentityId id, const ParamSample& sample, const QContext& ctx,
                                      std::optional<double> tolerance = std::nullopt) {
  const auto& def = identity_def(id);
  IdentityReport r;
  r.id = id;
  r.seed = sample.seed;
  r.params = sample;
  r.tolerance = tolerance ? *tolerance : def.tolerance_at(sample);
  try {
    const QContext local = ctx.with_q(sample.q);
    const identities::Sides sides = def.evaluate(sample, local);
    r.lhs = sides.lhs.value;
    r.rhs = sides.rhs.value;
    r.lhs_err_est = sides.lhs.err_est;
    r.rhs_err_est = sides.rhs.err_est;
    r.abs_resid = std::abs(r.lhs - r.rhs);
    r.rel_resid = r.abs_resid / std::max(1e-300, std::max(std::abs(r.lhs), std::abs(r.rhs)));
    const bool finite = is_finite(r.lhs) && is_finite(r.rhs) && std::isfinite(r.rel_resid);
    const bool converged = sides.lhs.converged && sides.rhs.converged;
    const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
    if (!sides.failure.empty()) {
      r.reason = sides.failure;
    } else if (!finite) {
      r.reason = "OverflowError: non-finite side";
    } else if (!converged) {
      r.reason = std::string("NonConvergence: ") + (sides.lhs.converged ? "rhs" : "lhs") +
                 " truncation estimate above eps";
    } else if (!(r.lhs_err_est + r.rhs_err_est <= r.tolerance * scale)) {
      // Both sides converged in absolute terms, but cancellation left fewer
      // significant digits than the tolerance asks for.
      r.reason = "NonConvergence: error estimate exceeds tolerance relative to the values";
    } else if (!(r.rel_resid <= r.tolerance)) {
      r.reason = "relative residual above tolerance";
    }
    r.pass = r.reason.empty();
  } catch (const Error& e) {
    r.pass = false;
    r.reason = detail::error_kind(e) + ": " + e.what();
  }
  return r;
}

// n points drawn from seeds point_seed(seed, id, i).
inline std::vector<IdentityReport> sweep(IdentityId id, long n, std::uint64_t seed, const QContext& ctx,
                                         const SamplingOptions& opts = {},
                                         std::optional<double> tolerance = std::nullopt) {
  std::vector<IdentityReport> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, n)));
  for (long i = 0; i < n; ++i) {
    IdentityReport r;
    try {
      r = verify_identity(id, sample_params(id, point_seed(seed, id, i), opts), ctx, tolerance);
    } catch (const SamplingExhausted& e) {
      r.id = id;
      r.params.id = id;
      r.params.q = opts.q.value_or(Complex{0.0, 0.0});
      r.pass = false;
      r.reason = std::string("SamplingExhausted: ") + e.what();
      r.lhs = r.rhs = Complex{std::nan(""), std::nan("")};
      r.abs_resid = r.rel_resid = std::nan("");
    }
    r.seed = seed;
    r.point_index = i;
    out.push_back(std::move(r));
  }
  return out;
}

inline Json report_to_json(const IdentityReport& r) {
  Json params = Json::object();
  for (const auto& [name, value] : r.params.values) params[name] = to_json_pair(value);
  return Json{{"id", std::string(to_string(r.id))},
              {"seed", r.seed},
              {"point_index", r.point_index},
              {"params", std::move(params)},
              {"q", to_json_pair(r.params.q)},
              {"lhs", to_json_pair(r.lhs)},
              {"rhs", to_json_pair(r.rhs)},
              {"abs_resid", r.abs_resid},
              {"rel_resid", r.rel_resid},
              {"pass", r.pass},
              {"reason", r.reason}};
}

}  // namespace qcalc
