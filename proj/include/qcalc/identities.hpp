#pragma once

// The identity table. Every entry lists its parameters, the admissibility
// constraints used by the sampler, and two evaluation routes that share no
// code beyond the scalar substrate.

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcalc/contour.hpp"
#include "qcalc/core.hpp"
#include "qcalc/expansion.hpp"
#include "qcalc/hyperseries.hpp"
#include "qcalc/operators.hpp"
#include "qcalc/polynomials.hpp"
#include "qcalc/qintegral.hpp"
#include "qcalc/verify_types.hpp"

namespace qcalc::identities {

struct ParamSpec {
  std::string name;
  std::vector<long> choices = {};  // integer parameter when non-empty
  double fixed_radius = -1.0;      // disk radius overriding the sampling radius
  int needs_count = 0;             // drawn only when the count parameter is >= this
};

// A sample is admissible when every base p keeps |1 - p q^k| >= margin for all
// k >= 0, every `nonzero` entry has modulus >= margin, and `hypotheses` holds.
struct Constraints {
  std::vector<Complex> factor_bases;
  std::vector<Complex> nonzero;
  bool hypotheses = true;
};

struct Sides {
  SeriesValue lhs;
  SeriesValue rhs;
  std::string failure;  // set when an auxiliary check fails
};

struct IdentityDef {
  IdentityId id;
  std::string_view summary;
  std::string_view lhs_route;
  std::string_view rhs_route;
  double tolerance;
  int default_points;
  std::string_view count_param;  // name of the fold-count parameter, if any
  std::vector<ParamSpec> params;
  std::function<Constraints(const ParamSample&)> constraints;
  std::function<Sides(const ParamSample&, const QContext&)> evaluate;
  std::function<double(const ParamSample&)> tolerance_for = {};

  double tolerance_at(const ParamSample& s) const { return tolerance_for ? tolerance_for(s) : tolerance; }
};

namespace impl {

using qcalc::detail::PochTable;
using qcalc::detail::PowerTable;

inline constexpr Complex one{1.0, 0.0};

inline double max_abs(std::initializer_list<Complex> zs) {
  double m = 0.0;
  for (const Complex& z : zs) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs(const std::vector<Complex>& zs) {
  double m = 0.0;
  for (const Complex& z : zs) m = std::max(m, std::abs(z));
  return m;
}

inline std::string idx(std::string_view base, int i) { return std::string(base) + std::to_string(i); }

inline std::vector<ParamSpec> complex_params(std::initializer_list<const char*> names) {
  std::vector<ParamSpec> out;
  for (const char* n : names) out.push_back(ParamSpec{n});
  return out;
}

// Appends base1, base2, ... for i = 1..max_count, each needing count >= i.
inline void add_indexed(std::vector<ParamSpec>& p, std::initializer_list<const char*> bases, int max_count) {
  for (int i = 1; i <= max_count; ++i)
    for (const char* b : bases) p.push_back(ParamSpec{idx(b, i), {}, -1.0, i});
}

inline std::vector<Complex> indexed(const ParamSample& s, std::string_view base, long count) {
  std::vector<Complex> out;
  for (int i = 1; i <= count; ++i) out.push_back(s.get(idx(base, i)));
  return out;
}

// (1-q) v (q, u/v, qv/u, nums; q)_inf / (dens; q)_inf
inline SeriesValue aa_prefactor(Complex u, Complex v, std::vector<Complex> nums, const std::vector<Complex>& dens,
                                const QContext& ctx) {
  const Complex q = ctx.q();
  nums.insert(nums.begin(), {q, u / v, q * v / u});
  return (one - q) * v * qpoch_ratio(nums, dens, ctx);
}

// int_u^v x^power (qx/u, qx/v, nums x; q)_inf / (dens x; q)_inf d_q x
inline SeriesValue weighted_jackson(Complex u, Complex v, std::vector<Complex> nums, std::vector<Complex> dens,
                                    const QContext& ctx, long power = 0) {
  PochhammerWeight w(u, v, std::move(nums), std::move(dens), ctx, power);
  w.check_poles();
  return jackson(w, u, v, ctx);
}

// (q; q)_inf / (2 pi) int_0^pi h(cos 2t; 1) extra(t) / h(cos t; as) dt
template <class Extra>
SeriesValue aw_integral(const std::vector<Complex>& as, Extra&& extra, const QContext& ctx) {
  const ThetaIntegralResult r = theta_quadrature(
      [&](double theta) { return askey_wilson_weight(theta, as, ctx) * extra(theta); }, ctx);
  const SeriesValue integral{r.value, r.err_est, r.nodes_used, r.converged};
  return integral * qpoch_inf(ctx.q(), ctx) * Complex{0.5 / std::numbers::pi, 0.0};
}

// Phi_n^{(alpha)}(x, y | q), n = 0, 1, ..., computed on demand.
class HahnTable {
public:
  HahnTable(Complex alpha, Complex x, Complex y, const QContext& ctx) : alpha_(alpha), x_(x), y_(y), ctx_(&ctx) {}

  Complex operator[](long n) {
    while (static_cast<long>(vals_.size()) <= n)
      vals_.push_back(hahn_hom(static_cast<long>(vals_.size()), alpha_, x_, y_, *ctx_));
    return vals_[static_cast<std::size_t>(n)];
  }

private:
  Complex alpha_, x_, y_;
  const QContext* ctx_;
  std::vector<Complex> vals_;
};

// Integrals over [u, v]: endpoints away from zero and the prefactor
// (u/v, qv/u; q)_inf away from zero.
inline Constraints jackson_constraints(const ParamSample& s, std::vector<Complex> bases, bool hypotheses = true) {
  const Complex u = s.get("u"), v = s.get("v");
  bases.push_back(u / v);
  bases.push_back(s.q * v / u);
  return Constraints{std::move(bases), {u, v}, hypotheses};
}

inline double tolerance_by_count(const ParamSample& s, std::string_view count) {
  return s.get_int(count) <= 1 ? 1e-8 : 1e-6;
}

}  // namespace impl

inline std::vector<IdentityDef> build_table() {
  using namespace impl;
  std::vector<IdentityDef> t;

  t.push_back(IdentityDef{
      .id = IdentityId::QPDE_HAHN,
      .summary = "Phi_n^(alpha)(x, y) solves d_{q,x} f = d_{q,y} (1 - alpha eta_x) f",
      .lhs_route = "qpartial_x applied to the coefficient grid of Phi_n",
      .rhs_route = "pointwise q-derivative in y of Phi_n(x, y) - alpha Phi_n(qx, y)",
      .tolerance = 1e-10,
      .default_points = 25,
      .count_param = "",
      .params =
          [] {
            auto p = complex_params({"alpha", "x", "y"});
            p.insert(p.begin(), ParamSpec{"n", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}});
            return p;
          }(),
      .constraints = [](const ParamSample& s) { return Constraints{{}, {s.get("x"), s.get("y")}}; },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const long n = s.get_int("n");
            const Complex alpha = s.get("alpha"), x = s.get("x"), y = s.get("y"), q = ctx.q();
            const BivarSeries grid = hahn_hom_grid(n, alpha, ctx);
            Sides out;
            out.lhs = exact(qpartial_x(grid, q)(x, y));
            auto g = [&](Complex yy) {
              return hahn_hom(n, alpha, x, yy, ctx) - alpha * hahn_hom(n, alpha, q * x, yy, ctx);
            };
            out.rhs = exact(qderiv_point(g, y, q));
            const double resid = qpde_residual_series(grid, alpha, q).residual;
            if (resid > 1e-12) out.failure = "coefficient residual " + std::to_string(resid) + " exceeds 1e-12";
            return out;
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::EXPANSION_ROUNDTRIP,
      .summary = "a grid in the q-PDE kernel equals its own Hahn expansion",
      .lhs_route = "direct evaluation of the coefficient grid",
      .rhs_route = "expand_in_hahn followed by eval_expansion",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params =
          [] {
            auto p = complex_params({"alpha", "x", "y"});
            for (int n = 0; n <= 16; ++n) p.push_back(ParamSpec{idx("lambda", n), {}, std::pow(0.5, n)});
            return p;
          }(),
      .constraints = [](const ParamSample&) { return Constraints{}; },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            HahnExpansion e{s.get("alpha"), {}};
            for (int n = 0; n <= 16; ++n) e.lambdas.push_back(s.get(idx("lambda", n)));
            const Complex x = s.get("x"), y = s.get("y");
            const BivarSeries grid = synthesize_grid(e, ctx);
            const HahnExpansion back = expand_in_hahn(grid, e.alpha, ctx.q());
            Sides out{exact(grid(x, y)), exact(eval_expansion(back, x, y, ctx)), {}};
            double worst = 0.0;
            for (std::size_t n = 0; n < e.lambdas.size(); ++n)
              worst = std::max(worst, std::abs(back.lambdas[n] - e.lambdas[n]));
            if (worst > 1e-10) out.failure = "recovered coefficients differ by " + std::to_string(worst);
            return out;
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::GEN_FUNC,
      .summary = "sum_n Phi_n^(alpha)(x, y) t^n / (q;q)_n = (alpha x t)_inf / (xt, yt)_inf",
      .lhs_route = "series of homogeneous Hahn polynomials",
      .rhs_route = "infinite products",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"alpha", "x", "y", "t"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex x = s.get("x"), y = s.get("y"), t = s.get("t");
            return Constraints{{x * t, y * t}, {}, max_abs({x * t, y * t}) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex alpha = s.get("alpha"), x = s.get("x"), y = s.get("y"), t = s.get("t");
            PowerTable tp(t);
            PochTable qq(ctx.q(), ctx);
            auto term = [&](long n) { return hahn_hom(n, alpha, x, y, ctx) * tp[n] / qq[n]; };
            return Sides{qcalc::detail::sum_series(term, ctx), qpoch_ratio({alpha * x * t}, {x * t, y * t}, ctx), {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::MEHLER,
      .summary = "q-Mehler formula: bilinear Hahn sum equals products times a 3phi2",
      .lhs_route = "bilinear series of homogeneous Hahn polynomials",
      .rhs_route = "infinite products times phi(alpha, beta, ytv; alpha xtv, beta ytu; xtu)",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"alpha", "beta", "x", "y", "u", "v", "t"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex alpha = s.get("alpha"), beta = s.get("beta"), x = s.get("x"), y = s.get("y"),
                          u = s.get("u"), v = s.get("v"), t = s.get("t");
            return Constraints{{x * t * v, y * t * v, y * t * u, alpha * x * t * v, beta * y * t * u},
                               {},
                               max_abs({x * t * u, x * t * v, y * t * u, y * t * v}) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex alpha = s.get("alpha"), beta = s.get("beta"), x = s.get("x"), y = s.get("y"),
                          u = s.get("u"), v = s.get("v"), t = s.get("t");
            PowerTable tp(t);
            PochTable qq(ctx.q(), ctx);
            auto term = [&](long n) {
              return hahn_hom(n, alpha, x, y, ctx) * hahn_hom(n, beta, u, v, ctx) * tp[n] / qq[n];
            };
            const SeriesValue lhs = qcalc::detail::sum_series(term, ctx);
            const SeriesValue rhs =
                qpoch_ratio({alpha * x * t * v, beta * y * t * u}, {x * t * v, y * t * v, y * t * u}, ctx) *
                phi(PhiSpec::balanced({alpha, beta, y * t * v}, {alpha * x * t * v, beta * y * t * u}, x * t * u), ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::ANDREWS_ASKEY,
      .summary = "int_u^v (qx/u, qx/v)_inf / (bx, cx)_inf d_q x in closed form",
      .lhs_route = "Jackson q-integral",
      .rhs_route = "infinite products",
      .tolerance = 1e-7,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"b", "c", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return jackson_constraints(s, {b * u, b * v, c * u, c * v, b * c * u * v});
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return Sides{andrews_askey_lhs(b, c, u, v, ctx),
                         aa_prefactor(u, v, {b * c * u * v}, {b * u, b * v, c * u, c * v}, ctx), {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::MOMENT_W,
      .summary = "moments of the Andrews-Askey weight are the closed form times W_n(b, c, u, v)",
      .lhs_route = "Jackson q-integral with x^n",
      .rhs_route = "infinite products times the W_n polynomial",
      .tolerance = 1e-7,
      .default_points = 25,
      .count_param = "",
      .params =
          [] {
            auto p = complex_params({"b", "c", "u", "v"});
            p.insert(p.begin(), ParamSpec{"n", {0, 1, 2, 3, 4, 5, 6}});
            return p;
          }(),
      .constraints =
          [](const ParamSample& s) {
            const Complex b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return jackson_constraints(s, {b * u, b * v, c * u, c * v, b * c * u * v});
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const long n = s.get_int("n");
            const Complex b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return Sides{andrews_askey_moment(n, b, c, u, v, ctx),
                         aa_prefactor(u, v, {b * c * u * v}, {b * u, b * v, c * u, c * v}, ctx) *
                             w_poly(n, b, c, u, v, ctx),
                         {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::QINT_HAHN_SERIES,
      .summary = "four-parameter Jackson integral as a series in W_n(c, d, u, v) Phi_n^(alpha)(a, b)",
      .lhs_route = "Jackson q-integral",
      .rhs_route = "infinite products times a W_n Phi_n series",
      .tolerance = 1e-7,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"alpha", "a", "b", "c", "d", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d"), u = s.get("u"),
                          v = s.get("v");
            return jackson_constraints(
                s, {a * u, a * v, b * u, b * v, c * u, c * v, d * u, d * v, c * d * u * v});
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex alpha = s.get("alpha"), a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d"),
                          u = s.get("u"), v = s.get("v");
            const SeriesValue lhs = weighted_jackson(u, v, {alpha * a}, {a, b, c, d}, ctx);
            PochTable qq(ctx.q(), ctx);
            auto term = [&](long n) { return w_poly(n, c, d, u, v, ctx) * hahn_hom(n, alpha, a, b, ctx) / qq[n]; };
            const SeriesValue rhs = aa_prefactor(u, v, {c * d * u * v}, {c * u, c * v, d * u, d * v}, ctx) *
                                    qcalc::detail::sum_series(term, ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::QINT_3PHI2,
      .summary = "three-parameter Jackson integral as products times a 3phi2",
      .lhs_route = "Jackson q-integral",
      .rhs_route = "infinite products times phi(alpha, bv, cv; alpha av, bcuv; au)",
      .tolerance = 1e-7,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"alpha", "a", "b", "c", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex alpha = s.get("alpha"), a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"),
                          v = s.get("v");
            return jackson_constraints(s, {a * u, a * v, b * u, b * v, c * u, c * v, alpha * a * v, b * c * u * v},
                                       std::abs(a * u) < 1.0);
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex alpha = s.get("alpha"), a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"),
                          v = s.get("v");
            const SeriesValue lhs = weighted_jackson(u, v, {alpha * a}, {a, b, c}, ctx);
            const SeriesValue rhs =
                aa_prefactor(u, v, {alpha * a * v, b * c * u * v}, {a * v, b * u, b * v, c * u, c * v}, ctx) *
                phi(PhiSpec::balanced({alpha, b * v, c * v}, {alpha * a * v, b * c * u * v}, a * u), ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::AL_SALAM_VERMA,
      .summary = "Jackson integral with (abcuvx)_inf in the numerator is a pure product",
      .lhs_route = "Jackson q-integral",
      .rhs_route = "infinite products",
      .tolerance = 1e-7,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"a", "b", "c", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return jackson_constraints(s, {a * u, a * v, b * u, b * v, c * u, c * v});
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            const Complex uv = u * v;
            return Sides{weighted_jackson(u, v, {a * b * c * uv}, {a, b, c}, ctx),
                         aa_prefactor(u, v, {a * b * uv, a * c * uv, b * c * uv},
                                      {a * u, a * v, b * u, b * v, c * u, c * v}, ctx),
                         {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::QGAUSS_STEP,
      .summary = "q-Gauss sum of the 2phi1(bv, cv; abcuv^2; au)",
      .lhs_route = "basic hypergeometric series",
      .rhs_route = "infinite products",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"a", "b", "c", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return Constraints{{a * b * c * u * v * v, a * u}, {}, std::abs(a * u) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            const Complex big = a * b * c * u * v * v;
            return Sides{phi(PhiSpec{{b * v, c * v}, {big}, a * u}, ctx),
                         qpoch_ratio({a * b * u * v, a * c * u * v}, {big, a * u}, ctx), {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::QINT_DOUBLE,
      .summary = "Jackson integral with two Hahn factors as a double series in h_{m+n}(u, v)",
      .lhs_route = "Jackson q-integral",
      .rhs_route = "double series of Hahn and Rogers-Szego polynomials",
      .tolerance = 1e-6,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"alpha", "beta", "a", "b", "c", "d", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d"), u = s.get("u"),
                          v = s.get("v");
            return jackson_constraints(s, {a * u, a * v, b * u, b * v, c * u, c * v, d * u, d * v});
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex alpha = s.get("alpha"), beta = s.get("beta"), a = s.get("a"), b = s.get("b"),
                          c = s.get("c"), d = s.get("d"), u = s.get("u"), v = s.get("v"), q = ctx.q();
            const SeriesValue lhs = weighted_jackson(u, v, {alpha * a, beta * c}, {a, b, c, d}, ctx);
            HahnTable first(alpha, a, b, ctx), second(beta, c, d, ctx), rs({0.0, 0.0}, u, v, ctx);
            PochTable qq(q, ctx);
            auto term = [&](std::span<const long> mn) {
              const long m = mn[0], n = mn[1];
              return first[m] * second[n] * rs[m + n] / (qq[m] * qq[n]);
            };
            const SeriesValue rhs =
                (one - q) * v * qpoch_multi({q, u / v, q * v / u}, inf, ctx) * multisum(2, term, ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::ASKEY_WILSON,
      .summary = "Askey-Wilson integral in closed form",
      .lhs_route = "Gauss-Legendre quadrature in theta",
      .rhs_route = "infinite products",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"a", "b", "c", "d"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d");
            return Constraints{{a * b, a * c, a * d, b * c, b * d, c * d}, {}, max_abs({a, b, c, d}) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d");
            const ThetaIntegralResult r = askey_wilson(a, b, c, d, ctx);
            const SeriesValue lhs{r.value, r.err_est, r.nodes_used, r.converged};
            const SeriesValue rhs = Complex{2.0 * std::numbers::pi, 0.0} *
                                    qpoch_ratio({a * b * c * d}, {ctx.q(), a * b, a * c, a * d, b * c, b * d, c * d}, ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::AW_QINT_EXCHANGE,
      .summary = "theta integral of an inner Jackson integral equals a single Jackson integral",
      .lhs_route = "Gauss-Legendre quadrature of a Jackson q-integral in x",
      .rhs_route = "single Jackson q-integral times infinite products",
      .tolerance = 1e-6,
      .default_points = 10,
      .count_param = "",
      .params =
          [] {
            auto p = complex_params({"a", "b", "c", "u", "v", "alpha", "d"});
            p.insert(p.begin(), ParamSpec{"f_choice", {0, 1}});
            return p;
          }(),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v"),
                          d = s.get("d");
            return jackson_constraints(
                s, {a * b, a * c, b * c, a * u, a * v, b * u, b * v, c * u, c * v, d * u, d * v},
                max_abs({a, b, c, d, u, v}) < 1.0);
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v"),
                          alpha = s.get("alpha"), d = s.get("d");
            const bool ratio_f = s.get_int("f_choice") == 1;
            // f = 1, or f(x) = (alpha d x)_inf / (d x)_inf
            std::vector<Complex> f_num, f_den;
            if (ratio_f) {
              f_num.push_back(alpha * d);
              f_den.push_back(d);
            }
            auto inner = [&](double theta) {
              const Complex e = std::polar(1.0, theta);
              std::vector<Complex> den = f_den;
              den.push_back(e);
              den.push_back(std::conj(e));
              return weighted_jackson(u, v, f_num, den, ctx);
            };
            const SeriesValue lhs = aw_integral({a, b, c}, inner, ctx);
            std::vector<Complex> num{a * b * c}, den{a, b, c};
            num.insert(num.end(), f_num.begin(), f_num.end());
            den.insert(den.end(), f_den.begin(), f_den.end());
            const SeriesValue rhs =
                weighted_jackson(u, v, num, den, ctx) / qpoch_multi({a * b, a * c, b * c}, inf, ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::CURIOUS,
      .summary = "theta integral of a 3phi2-weighted Askey-Wilson kernel equals a Jackson integral",
      .lhs_route = "Gauss-Legendre quadrature of h-kernels times a 3phi2",
      .rhs_route = "Jackson q-integral times infinite products",
      .tolerance = 1e-6,
      .default_points = 10,
      .count_param = "",
      .params = complex_params({"alpha", "a", "b", "c", "d", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex alpha = s.get("alpha"), a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d"),
                          u = s.get("u"), v = s.get("v");
            return jackson_constraints(s,
                                       {a * b, a * c, b * c, a * u, a * v, b * u, b * v, c * u, c * v, d * u, d * v,
                                        u * v, alpha * d * v},
                                       max_abs({a, b, c, d, u, v}) < 1.0);
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex alpha = s.get("alpha"), a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d"),
                          u = s.get("u"), v = s.get("v"), q = ctx.q();
            auto weight = [&](double theta) {
              const Complex e = std::polar(1.0, theta);
              return phi(PhiSpec::balanced({alpha, v * e, v * std::conj(e)}, {alpha * d * v, u * v}, d * u), ctx);
            };
            const SeriesValue lhs = aw_integral({a, b, c, u, v}, weight, ctx);
            const SeriesValue jac = weighted_jackson(u, v, {a * b * c, alpha * d}, {a, b, c, d}, ctx);
            const SeriesValue rhs =
                jac * qpoch_ratio({d * v}, {q, u / v, q * v / u, alpha * d * v, u * v, a * b, a * c, b * c}, ctx) /
                exact((one - q) * v);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::ISV,
      .summary = "five-parameter Askey-Wilson type integral as products times a 3phi2",
      .lhs_route = "Gauss-Legendre quadrature in theta",
      .rhs_route = "infinite products times phi(bc, bv, cv; abcv, bcuv; au)",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"a", "b", "c", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return Constraints{{a * b, a * c, b * c, a * v, b * u, b * v, c * u, c * v, u * v, a * b * c * v,
                                b * c * u * v},
                               {},
                               max_abs({a, b, c, u, v}) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            const SeriesValue lhs = aw_integral({a, b, c, u, v}, [](double) { return exact(one); }, ctx);
            const SeriesValue rhs =
                qpoch_ratio({a * b * c * v, b * c * u * v},
                            {a * b, a * c, b * c, a * v, b * u, b * v, c * u, c * v, u * v}, ctx) *
                phi(PhiSpec::balanced({b * c, b * v, c * v}, {a * b * c * v, b * c * u * v}, a * u), ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::LIU_BETA,
      .summary = "theta integral with h(cos t; duv) in the numerator equals a Jackson integral",
      .lhs_route = "Gauss-Legendre quadrature in theta",
      .rhs_route = "Jackson q-integral times infinite products",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"a", "b", "c", "d", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d"), u = s.get("u"),
                          v = s.get("v");
            return jackson_constraints(
                s, {a * b, a * c, b * c, a * u, a * v, b * u, b * v, c * u, c * v, d * u, d * v, u * v},
                max_abs({a, b, c, d, u, v}) < 1.0);
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d"), u = s.get("u"),
                          v = s.get("v");
            const Complex duv = d * u * v;
            const SeriesValue integral =
                aw_integral({a, b, c, u, v}, [&](double theta) { return h_kernel(theta, duv, ctx); }, ctx);
            // aw_integral carries (q;q)_inf / (2 pi); the remaining prefactor is
            // (1-q) v (q, u/v, qv/u, uv)_inf / (du, dv)_inf.
            const SeriesValue lhs = integral * aa_prefactor(u, v, {u * v}, {d * u, d * v}, ctx);
            const SeriesValue rhs = weighted_jackson(u, v, {a * b * c, duv}, {a, b, c, d}, ctx) /
                                    qpoch_multi({a * b, a * c, b * c}, inf, ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::NASSRALLAH_RAHMAN,
      .summary = "Nassrallah-Rahman integral in closed form",
      .lhs_route = "Gauss-Legendre quadrature in theta",
      .rhs_route = "infinite products",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = complex_params({"a", "b", "c", "u", "v"}),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            return Constraints{{a * b, a * c, a * u, a * v, b * c, b * u, b * v, c * u, c * v, u * v},
                               {},
                               max_abs({a, b, c, u, v}) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const Complex a = s.get("a"), b = s.get("b"), c = s.get("c"), u = s.get("u"), v = s.get("v");
            const Complex abc = a * b * c, uv = u * v;
            const SeriesValue lhs =
                aw_integral({a, b, c, u, v}, [&](double theta) { return h_kernel(theta, abc * uv, ctx); }, ctx);
            const SeriesValue rhs =
                qpoch_ratio({abc * u, abc * v, a * b * uv, a * c * uv, b * c * uv},
                            {a * b, a * c, a * u, a * v, b * c, b * u, b * v, c * u, c * v, uv}, ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::MULTILINEAR,
      .summary = "k-fold multilinear generating function for homogeneous Hahn polynomials",
      .lhs_route = "k-fold sum of Hahn polynomial products",
      .rhs_route = "infinite products times a (2k+1)phi(2k)",
      .tolerance = 1e-6,
      .default_points = 10,
      .count_param = "k",
      .params =
          [] {
            std::vector<ParamSpec> p{ParamSpec{"k", {1, 2}}, ParamSpec{"a"}, ParamSpec{"c"}};
            add_indexed(p, {"alpha", "x", "y"}, 2);
            return p;
          }(),
      .constraints =
          [](const ParamSample& s) {
            const long k = s.get_int("k");
            const auto al = indexed(s, "alpha", k), xs = indexed(s, "x", k), ys = indexed(s, "y", k);
            const Complex a = s.get("a"), c = s.get("c");
            std::vector<Complex> bases{c};
            std::vector<Complex> all{a, c};
            for (long i = 0; i < k; ++i) {
              bases.insert(bases.end(), {xs[i], ys[i], al[i] * xs[i]});
              all.insert(all.end(), {xs[i], ys[i]});
            }
            return Constraints{std::move(bases), {a}, max_abs(all) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const long k = s.get_int("k");
            const auto al = indexed(s, "alpha", k), xs = indexed(s, "x", k), ys = indexed(s, "y", k);
            const Complex a = s.get("a"), c = s.get("c");
            PochTable pa(a, ctx), pc(c, ctx, true), qq(ctx.q(), ctx);
            std::vector<HahnTable> hahn;
            for (long i = 0; i < k; ++i) hahn.emplace_back(al[i], xs[i], ys[i], ctx);
            auto term = [&](std::span<const long> n) {
              const long total = std::accumulate(n.begin(), n.end(), 0L);
              Complex t = pa[total] / pc[total];
              for (long i = 0; i < k; ++i) t *= hahn[i][n[i]] / qq[n[i]];
              return t;
            };
            const SeriesValue lhs = multisum(static_cast<int>(k), term, ctx);

            std::vector<Complex> num{a}, den{c}, upper{c / a}, lower;
            for (long i = 0; i < k; ++i) {
              num.push_back(al[i] * xs[i]);
              den.insert(den.end(), {xs[i], ys[i]});
              upper.insert(upper.end(), {xs[i], ys[i]});
              lower.push_back(al[i] * xs[i]);
            }
            lower.resize(static_cast<std::size_t>(2 * k), Complex{0.0, 0.0});
            const SeriesValue rhs = qpoch_ratio(num, den, ctx) * phi(PhiSpec{upper, lower, a}, ctx);
            return Sides{lhs, rhs, {}};
          },
      .tolerance_for = [](const ParamSample& s) { return tolerance_by_count(s, "k"); },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::Q_LAURICELLA,
      .summary = "q-Lauricella function as products times a (k+1)phi(k)",
      .lhs_route = "k-fold q-Lauricella sum",
      .rhs_route = "infinite products times phi(c/a, y_i; b_i y_i; a)",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "k",
      .params =
          [] {
            std::vector<ParamSpec> p{ParamSpec{"k", {1, 2}}, ParamSpec{"a"}, ParamSpec{"c"}};
            add_indexed(p, {"b", "y"}, 2);
            return p;
          }(),
      .constraints =
          [](const ParamSample& s) {
            const long k = s.get_int("k");
            const auto bs = indexed(s, "b", k), ys = indexed(s, "y", k);
            const Complex a = s.get("a"), c = s.get("c");
            std::vector<Complex> bases{c};
            std::vector<Complex> all{a};
            for (long i = 0; i < k; ++i) {
              bases.insert(bases.end(), {ys[i], bs[i] * ys[i]});
              all.push_back(ys[i]);
            }
            return Constraints{std::move(bases), {a}, max_abs(all) < 1.0};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const long k = s.get_int("k");
            const auto bs = indexed(s, "b", k), ys = indexed(s, "y", k);
            const Complex a = s.get("a"), c = s.get("c");
            const SeriesValue lhs = qlauricella(a, c, bs, ys, ctx);
            std::vector<Complex> num{a}, den{c}, upper{c / a}, lower;
            for (long i = 0; i < k; ++i) {
              num.push_back(bs[i] * ys[i]);
              den.push_back(ys[i]);
              upper.push_back(ys[i]);
              lower.push_back(bs[i] * ys[i]);
            }
            const SeriesValue rhs = qpoch_ratio(num, den, ctx) * phi(PhiSpec{upper, lower, a}, ctx);
            return Sides{lhs, rhs, {}};
          },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::HK_PARTIAL_FRACTION,
      .summary = "partial-fraction representation of h_k(a, b)",
      .lhs_route = "finite Rogers-Szego sum",
      .rhs_route = "two infinite-product-weighted series",
      .tolerance = 1e-8,
      .default_points = 25,
      .count_param = "",
      .params = {ParamSpec{"k", {0, 1, 2, 3, 4, 5, 6, 7, 8}}, ParamSpec{"a"}, ParamSpec{"b"}},
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b");
            return Constraints{{b / a, a / b}, {a, b, a - b}};
          },
      .evaluate =
          [](const ParamSample& s, const QContext& ctx) {
            const long k = s.get_int("k");
            const Complex a = s.get("a"), b = s.get("b");
            return Sides{exact(rogers_szego(k, a, b, ctx)), rs_partial_fraction(k, a, b, ctx), {}};
          },
  });

  // Shared by the two s-fold identities below: sum over lead in {a, b} of
  //   lead^k (alpha_i lead u_i)_inf / (other/lead, lead u_i, lead v_i)_inf
  //   * phi(lead u_i, lead v_i; q lead/other, alpha_i lead u_i; q^{1+k})
  // with the v_i and alpha_i groups omitted when empty.
  auto rs_closed_form = [](long k, Complex a, Complex b, const std::vector<Complex>& us, const std::vector<Complex>& vs,
                           const std::vector<Complex>& alphas, const QContext& ctx) {
    auto half = [&](Complex lead, Complex other) {
      std::vector<Complex> num, den{other / lead}, upper, lower{ctx.q() * lead / other};
      for (std::size_t i = 0; i < us.size(); ++i) {
        den.push_back(lead * us[i]);
        upper.push_back(lead * us[i]);
        if (!vs.empty()) {
          den.push_back(lead * vs[i]);
          upper.push_back(lead * vs[i]);
        }
        if (!alphas.empty()) {
          num.push_back(alphas[i] * lead * us[i]);
          lower.push_back(alphas[i] * lead * us[i]);
        }
      }
      return ipow(lead, k) * qpoch_ratio(num, den, ctx) * phi(PhiSpec::balanced(upper, lower, ctx.qpow(k + 1)), ctx);
    };
    return half(a, b) + half(b, a);
  };

  t.push_back(IdentityDef{
      .id = IdentityId::RS_MULTISUM,
      .summary = "s-fold generating function of shifted Rogers-Szego polynomials h_{|n|+k}(a, b)",
      .lhs_route = "s-fold sum of Rogers-Szego polynomials",
      .rhs_route = "two infinite-product-weighted basic hypergeometric series",
      .tolerance = 1e-6,
      .default_points = 10,
      .count_param = "s",
      .params =
          [] {
            std::vector<ParamSpec> p{ParamSpec{"s", {1, 2}}, ParamSpec{"k", {0, 1, 3}}, ParamSpec{"a"},
                                     ParamSpec{"b"}};
            add_indexed(p, {"u"}, 2);
            return p;
          }(),
      .constraints =
          [](const ParamSample& s) {
            const Complex a = s.get("a"), b = s.get("b");
            const auto us = indexed(s, "u", s.get_int("s"));
            std::vector<Complex> bases{b / a, a / b}, products;
            for (const Complex& u : us) {
              bases.insert(bases.end(), {a * u, b * u});
              products.insert(products.end(), {a * u, b * u});
            }
            return Constraints{std::move(bases), {a, b, a - b}, max_abs(products) < 1.0};
          },
      .evaluate =
          [rs_closed_form](const ParamSample& s, const QContext& ctx) {
            const long sc = s.get_int("s"), k = s.get_int("k");
            const Complex a = s.get("a"), b = s.get("b");
            const auto us = indexed(s, "u", sc);
            HahnTable h({0.0, 0.0}, a, b, ctx);
            PochTable qq(ctx.q(), ctx);
            std::vector<PowerTable> up;
            for (const Complex& u : us) up.emplace_back(u);
            auto term = [&](std::span<const long> n) {
              Complex t = h[std::accumulate(n.begin(), n.end(), 0L) + k];
              for (long i = 0; i < sc; ++i) t *= up[i][n[i]] / qq[n[i]];
              return t;
            };
            return Sides{multisum(static_cast<int>(sc), term, ctx), rs_closed_form(k, a, b, us, {}, {}, ctx), {}};
          },
      .tolerance_for = [](const ParamSample& s) { return tolerance_by_count(s, "s"); },
  });

  t.push_back(IdentityDef{
      .id = IdentityId::SRIVASTAVA_JAIN,
      .summary = "s-fold generating function of h_{|n|+k}(a, b) times Hahn polynomials",
      .lhs_route = "s-fold sum of Rogers-Szego and Hahn polynomial products",
      .rhs_route = "two infinite-product-weighted basic hypergeometric series",
      .tolerance = 1e-6,
      .default_points = 10,
      .count_param = "s",
      .params =
          [] {
            std::vector<ParamSpec> p{ParamSpec{"s", {1, 2}}, ParamSpec{"k", {0, 1, 3}}, ParamSpec{"a"},
                                     ParamSpec{"b"}};
            add_indexed(p, {"alpha", "u", "v"}, 2);
            return p;
          }(),
      .constraints =
          [](const ParamSample& s) {
            const long sc = s.get_int("s");
            const Complex a = s.get("a"), b = s.get("b");
            const auto al = indexed(s, "alpha", sc), us = indexed(s, "u", sc), vs = indexed(s, "v", sc);
            std::vector<Complex> bases{b / a, a / b}, products;
            for (long i = 0; i < sc; ++i) {
              for (const Complex& lead : {a, b}) {
                bases.insert(bases.end(), {lead * us[i], lead * vs[i], al[i] * lead * us[i]});
                products.insert(products.end(), {lead * us[i], lead * vs[i]});
              }
            }
            return Constraints{std::move(bases), {a, b, a - b}, max_abs(products) < 1.0};
          },
      .evaluate =
          [rs_closed_form](const ParamSample& s, const QContext& ctx) {
            const long sc = s.get_int("s"), k = s.get_int("k");
            const Complex a = s.get("a"), b = s.get("b");
            const auto al = indexed(s, "alpha", sc), us = indexed(s, "u", sc), vs = indexed(s, "v", sc);
            HahnTable h({0.0, 0.0}, a, b, ctx);
            PochTable qq(ctx.q(), ctx);
            std::vector<HahnTable> hahn;
            for (long i = 0; i < sc; ++i) hahn.emplace_back(al[i], us[i], vs[i], ctx);
            auto term = [&](std::span<const long> n) {
              Complex t = h[std::accumulate(n.begin(), n.end(), 0L) + k];
              for (long i = 0; i < sc; ++i) t *= hahn[i][n[i]] / qq[n[i]];
              return t;
            };
            return Sides{multisum(static_cast<int>(sc), term, ctx), rs_closed_form(k, a, b, us, vs, al, ctx), {}};
          },
      .tolerance_for = [](const ParamSample& s) { return tolerance_by_count(s, "s"); },
  });

  return t;
}

inline const std::vector<IdentityDef>& table() {
  static const std::vector<IdentityDef> t = [] {
    auto built = build_table();
    for (std::size_t i = 0; i < built.size(); ++i)
      if (static_cast<std::size_t>(built[i].id) != i) throw Error("identity table out of registry order");
    return built;
  }();
  return t;
}

inline const IdentityDef& definition(IdentityId id) { return table()[static_cast<std::size_t>(id)]; }

}  // namespace qcalc::identities
