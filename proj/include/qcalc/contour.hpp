#pragma once

// Askey-Wilson kernels h(cos theta; a) and Gauss-Legendre integration over
// theta in [0, pi].

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "qcalc/core.hpp"
#include "qcalc/qintegral.hpp"

namespace qcalc {

struct ThetaIntegralResult {
  Complex value{0.0, 0.0};
  double err_est = 0.0;
  long nodes_used = 0;
  bool converged = false;
};

// h(cos theta; a) = (a e^{i theta}, a e^{-i theta}; q)_inf
inline SeriesValue h_kernel(double theta, Complex a, const QContext& ctx) {
  const Complex e = std::polar(1.0, theta);
  return qpoch_inf(a * e, ctx) * qpoch_inf(a * std::conj(e), ctx);
}

// Same kernel through the quadratic factors 1 - 2 a q^k cos(theta) + a^2 q^{2k}.
inline SeriesValue h_kernel_product(double theta, Complex a, const QContext& ctx) {
  const Complex one{1.0, 0.0};
  const double c = std::cos(theta);
  const double abs_a = std::abs(a), abs_q = std::abs(ctx.q());
  Complex p = one;
  double lead = abs_a;
  long k = 0;
  double bound = std::numeric_limits<double>::infinity();
  for (; k < ctx.max_product_terms();) {
    const Complex aq = a * ctx.qpow(k);
    p *= one - 2.0 * c * aq + aq * aq;
    ++k;
    lead *= abs_q;
    if (lead < 1.0) {
      // |log(1 - 2 c z + z^2)| <= 2|z| / (1 - |z|)^2 for each remaining factor.
      bound = 2.0 * lead / (1.0 - abs_q) / ((1.0 - lead) * (1.0 - lead));
      if (bound <= machine_target) break;
    }
  }
  if (!is_finite(p)) throw OverflowError("h_kernel_product: product overflowed");
  SeriesValue r{p, std::isfinite(bound) ? std::abs(p) * std::expm1(bound) : std::numeric_limits<double>::infinity(), k,
                true};
  r.converged = r.meets(ctx);
  return r;
}

// h(cos theta; a_1, ..., a_m)
inline SeriesValue h_kernel(double theta, std::span<const Complex> as, const QContext& ctx) {
  SeriesValue r = exact({1.0, 0.0});
  for (const Complex& a : as) r = r * h_kernel(theta, a, ctx);
  return r;
}

inline SeriesValue h_kernel(double theta, std::initializer_list<Complex> as, const QContext& ctx) {
  return h_kernel(theta, std::span<const Complex>(as.begin(), as.size()), ctx);
}

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule by Newton iteration on P_n, cached per n.
inline std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<GaussLegendreRule>();
  rule->nodes.resize(static_cast<std::size_t>(n));
  rule->weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule->nodes[static_cast<std::size_t>(i)] = -z;
    rule->nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule->weights[static_cast<std::size_t>(i)] = w;
    rule->weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(rule)).first->second;
}

inline constexpr int theta_initial_nodes = 64;
inline constexpr int theta_max_nodes = 4096;

// int_0^pi g(theta) d theta. The node count doubles from 64 until successive
// estimates agree to eps max(1, |value|) or 4096 nodes are reached. `g` may
// return Complex or SeriesValue.
template <class G>
ThetaIntegralResult theta_quadrature(G&& g, const QContext& ctx) {
  const double half_pi = 0.5 * std::numbers::pi;
  ThetaIntegralResult r;
  Complex previous{0.0, 0.0};
  bool have_previous = false;
  for (int n = theta_initial_nodes; n <= theta_max_nodes; n *= 2) {
    const auto rule = gauss_legendre(n);
    Complex sum{0.0, 0.0};
    double inner_err = 0.0;
    bool inner_ok = true;
    for (int i = 0; i < n; ++i) {
      const double theta = half_pi * (rule->nodes[static_cast<std::size_t>(i)] + 1.0);
      const auto gv = g(theta);
      const double w = half_pi * rule->weights[static_cast<std::size_t>(i)];
      sum += w * detail::value_of(gv);
      inner_err += w * detail::err_of(gv);
      inner_ok = inner_ok && detail::converged_of(gv);
    }
    if (!is_finite(sum)) throw OverflowError("theta_quadrature: integrand is not finite");
    r.nodes_used += n;
    r.value = sum;
    if (have_previous) {
      const double diff = std::abs(sum - previous);
      r.err_est = diff + inner_err;
      if (diff <= ctx.eps() * std::max(1.0, std::abs(sum))) {
        r.converged = inner_ok && r.err_est <= ctx.eps() * std::max(1.0, std::abs(sum));
        return r;
      }
    } else {
      r.err_est = std::numeric_limits<double>::infinity();
    }
    previous = sum;
    have_previous = true;
  }
  r.converged = false;
  return r;
}

// Askey-Wilson weight h(cos 2 theta; 1) / h(cos theta; a_1, ..., a_m).
inline SeriesValue askey_wilson_weight(double theta, std::span<const Complex> as, const QContext& ctx) {
  const Complex e = std::polar(1.0, theta);
  for (const Complex& a : as) {
    require_no_zero_factor(a * e, ctx, pole_threshold, "Askey-Wilson weight denominator");
    require_no_zero_factor(a * std::conj(e), ctx, pole_threshold, "Askey-Wilson weight denominator");
  }
  return h_kernel(2.0 * theta, Complex{1.0, 0.0}, ctx) / h_kernel(theta, as, ctx);
}

inline SeriesValue askey_wilson_weight(double theta, std::initializer_list<Complex> as, const QContext& ctx) {
  return askey_wilson_weight(theta, std::span<const Complex>(as.begin(), as.size()), ctx);
}

// int_0^pi h(cos 2 theta; 1) / h(cos theta; a, b, c, d) d theta
inline ThetaIntegralResult askey_wilson(Complex a, Complex b, Complex c, Complex d, const QContext& ctx) {
  for (const Complex& p : {a, b, c, d})
    if (!(std::abs(p) < 1.0)) throw DomainError("askey_wilson: parameters must have modulus < 1");
  const std::vector<Complex> params{a, b, c, d};
  return theta_quadrature([&](double theta) { return askey_wilson_weight(theta, params, ctx); }, ctx);
}

}  // namespace qcalc
