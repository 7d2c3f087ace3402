#pragma once

// Scalar substrate: complex values, the q-context policy, q-shifted
// factorials (finite, infinite, multiple) and Gaussian binomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <sstream>
#include <vector>

#include "qcalc/errors.hpp"

namespace qcalc {

using Complex = std::complex<double>;

// |1 - p q^k| below this is treated as an exact zero of a denominator.
inline constexpr double pole_threshold = 1e-12;

// Partial sums and products stop once the next contribution is below this
// fraction of the running value; `eps` only decides the converged flag.
inline constexpr double machine_target = 1e-17;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// z^n for n >= 0 by binary powering (0^0 = 1).
inline Complex ipow(Complex z, long n) {
  Complex r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

class QContext {
public:
  explicit QContext(Complex q, double eps = 1e-10, int max_series_terms = 10000,
                    int max_product_terms = 2000, int stall_window = 3)
      : q_(q),
        eps_(eps),
        max_series_terms_(max_series_terms),
        max_product_terms_(max_product_terms),
        stall_window_(stall_window) {
    if (!is_finite(q) || !(std::abs(q) < 1.0)) {
      std::ostringstream msg;
      msg << "QContext: |q| must be < 1, got q = " << q;
      throw DomainError(msg.str());
    }
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("QContext: eps must be > 0");
    if (max_series_terms < 1) throw DomainError("QContext: max_series_terms must be >= 1");
    if (max_product_terms < 1) throw DomainError("QContext: max_product_terms must be >= 1");
    if (stall_window < 1) throw DomainError("QContext: stall_window must be >= 1");

    auto table = std::make_shared<std::vector<Complex>>();
    table->reserve(static_cast<std::size_t>(max_product_terms) + 1);
    Complex p{1.0, 0.0};
    for (int k = 0; k <= max_product_terms; ++k) {
      table->push_back(p);
      p *= q;
    }
    powers_ = std::move(table);
  }

  Complex q() const noexcept { return q_; }
  double eps() const noexcept { return eps_; }
  int max_series_terms() const noexcept { return max_series_terms_; }
  int max_product_terms() const noexcept { return max_product_terms_; }
  int stall_window() const noexcept { return stall_window_; }

  // q^k, from the cached table when k is small enough.
  Complex qpow(long k) const {
    if (k >= 0 && static_cast<std::size_t>(k) < powers_->size())
      return (*powers_)[static_cast<std::size_t>(k)];
    return std::pow(q_, static_cast<double>(k));
  }

  QContext with_q(Complex q) const {
    return QContext(q, eps_, max_series_terms_, max_product_terms_, stall_window_);
  }

  QContext with_eps(double eps) const {
    return QContext(q_, eps, max_series_terms_, max_product_terms_, stall_window_);
  }

private:
  Complex q_;
  double eps_;
  int max_series_terms_;
  int max_product_terms_;
  int stall_window_;
  std::shared_ptr<const std::vector<Complex>> powers_;
};

// A truncated sum or product together with its truncation estimate.
struct SeriesValue {
  Complex value{1.0, 0.0};
  double err_est = 0.0;
  long terms_used = 0;
  bool converged = true;

  // Re-derive the flag against a context's tolerance.
  bool meets(const QContext& ctx) const {
    return err_est <= ctx.eps() * std::max(1.0, std::abs(value));
  }
};

inline SeriesValue exact(Complex v) { return SeriesValue{v, 0.0, 0, true}; }

inline SeriesValue operator*(const SeriesValue& a, const SeriesValue& b) {
  SeriesValue r;
  r.value = a.value * b.value;
  r.err_est = std::abs(a.value) * b.err_est + std::abs(b.value) * a.err_est + a.err_est * b.err_est;
  r.terms_used = a.terms_used + b.terms_used;
  r.converged = a.converged && b.converged;
  return r;
}

inline SeriesValue operator*(const SeriesValue& a, Complex c) {
  return SeriesValue{a.value * c, a.err_est * std::abs(c), a.terms_used, a.converged};
}

inline SeriesValue operator*(Complex c, const SeriesValue& a) { return a * c; }

inline SeriesValue operator/(const SeriesValue& a, const SeriesValue& b) {
  const double mb = std::abs(b.value);
  if (mb == 0.0 || b.err_est >= mb) throw PoleParameter("division by a vanishing truncated value");
  SeriesValue r;
  r.value = a.value / b.value;
  r.err_est = (a.err_est + std::abs(r.value) * b.err_est) / (mb - b.err_est);
  r.terms_used = a.terms_used + b.terms_used;
  r.converged = a.converged && b.converged;
  return r;
}

inline SeriesValue operator+(const SeriesValue& a, const SeriesValue& b) {
  return SeriesValue{a.value + b.value, a.err_est + b.err_est, a.terms_used + b.terms_used,
                     a.converged && b.converged};
}

inline SeriesValue operator-(const SeriesValue& a, const SeriesValue& b) {
  return SeriesValue{a.value - b.value, a.err_est + b.err_est, a.terms_used + b.terms_used,
                     a.converged && b.converged};
}

// Tag for the n = infinity overloads.
struct Infinity {};
inline constexpr Infinity inf{};

inline Complex qpoch_finite(Complex a, long n, const QContext& ctx) {
  if (n < 0) throw DomainError("qpoch_finite: n must be nonnegative");
  Complex p{1.0, 0.0};
  for (long k = 0; k < n; ++k) {
    p *= Complex{1.0, 0.0} - a * ctx.qpow(k);
    if (!is_finite(p)) throw OverflowError("qpoch_finite: product overflowed");
  }
  return p;
}

// (a; q)_inf. Factors are accumulated in chunks whose logarithms are summed,
// so long products neither overflow nor underflow; if any factor is within
// pole_threshold of zero the plain product is returned instead.
inline SeriesValue qpoch_inf(Complex a, const QContext& ctx) {
  if (a == Complex{0.0, 0.0}) return SeriesValue{{1.0, 0.0}, 0.0, 0, true};

  const double abs_a = std::abs(a);
  const double abs_q = std::abs(ctx.q());
  constexpr int chunk = 16;

  Complex plain{1.0, 0.0};
  Complex block{1.0, 0.0};
  Complex log_sum{0.0, 0.0};
  bool near_zero = false;
  double bound = std::numeric_limits<double>::infinity();
  double lead = abs_a;
  long m = 0;

  for (; m < ctx.max_product_terms();) {
    const Complex f = Complex{1.0, 0.0} - a * ctx.qpow(m);
    if (std::abs(f) < pole_threshold) near_zero = true;
    plain *= f;
    block *= f;
    ++m;
    if (m % chunk == 0 && !near_zero) {
      log_sum += std::log(block);
      block = Complex{1.0, 0.0};
    }
    // Tail bound on |log prod_{k >= m}(1 - a q^k)|.
    lead *= abs_q;
    if (lead < 1.0) {
      bound = lead / (1.0 - abs_q) / (1.0 - lead);
      if (bound <= machine_target) break;
    }
  }

  Complex value;
  if (near_zero) {
    value = plain;
  } else {
    if (block != Complex{1.0, 0.0}) log_sum += std::log(block);
    if (log_sum.real() > 709.0) throw OverflowError("qpoch_inf: product overflowed");
    value = std::exp(log_sum);
  }
  if (!is_finite(value)) throw OverflowError("qpoch_inf: product overflowed");

  SeriesValue r;
  r.value = value;
  r.err_est = std::isfinite(bound) ? std::abs(value) * std::expm1(bound) : std::numeric_limits<double>::infinity();
  r.terms_used = m;
  r.converged = r.meets(ctx);
  return r;
}

inline Complex qpoch_multi(std::span<const Complex> as, long n, const QContext& ctx) {
  Complex p{1.0, 0.0};
  for (const Complex& a : as) p *= qpoch_finite(a, n, ctx);
  return p;
}

inline Complex qpoch_multi(std::initializer_list<Complex> as, long n, const QContext& ctx) {
  return qpoch_multi(std::span<const Complex>(as.begin(), as.size()), n, ctx);
}

inline SeriesValue qpoch_multi(std::span<const Complex> as, Infinity, const QContext& ctx) {
  SeriesValue r = exact({1.0, 0.0});
  for (const Complex& a : as) r = r * qpoch_inf(a, ctx);
  r.converged = r.converged && r.meets(ctx);
  return r;
}

inline SeriesValue qpoch_multi(std::initializer_list<Complex> as, Infinity, const QContext& ctx) {
  return qpoch_multi(std::span<const Complex>(as.begin(), as.size()), inf, ctx);
}


// Gaussian binomial [n k]_q as prod_{j=1}^{k} (1 - q^{n-k+j}) / (1 - q^j),
// always evaluated with k <= n - k so that [n k] and [n n-k] are the same
// floating-point computation.
inline Complex qbinom(long n, long k, const QContext& ctx) {
  if (n < 0 || k < 0 || k > n) return {0.0, 0.0};
  const long kk = std::min(k, n - k);
  Complex r{1.0, 0.0};
  for (long j = 1; j <= kk; ++j)
    r *= (Complex{1.0, 0.0} - ctx.qpow(n - kk + j)) / (Complex{1.0, 0.0} - ctx.qpow(j));
  return r;
}

// Throws PoleParameter if some factor 1 - p q^k (k >= 0) is smaller than
// `margin` in modulus. Only the finitely many k with |p q^k| >= 1 - margin
// can violate it.
inline void require_no_zero_factor(Complex p, const QContext& ctx, double margin = pole_threshold,
                                   const char* what = "denominator") {
  const double ap = std::abs(p);
  for (long k = 0; k < ctx.max_product_terms(); ++k) {
    const Complex pk = p * ctx.qpow(k);
    if (std::abs(pk) < 1.0 - margin) return;
    if (std::abs(Complex{1.0, 0.0} - pk) < margin) {
      std::ostringstream msg;
      msg << what << " factor (1 - p q^" << k << ") vanishes for p = " << p;
      throw PoleParameter(msg.str());
    }
    if (ap == 0.0) return;
  }
}

// Smallest |1 - p q^k| over k >= 0 (exact enough for sampling checks).
inline double min_factor_modulus(Complex p, const QContext& ctx) {
  double best = std::abs(Complex{1.0, 0.0} - p);
  for (long k = 1; k < ctx.max_product_terms(); ++k) {
    const Complex pk = p * ctx.qpow(k);
    best = std::min(best, std::abs(Complex{1.0, 0.0} - pk));
    if (std::abs(pk) < 1.0 - best) break;
  }
  return best;
}

// (nums; q)_inf / (dens; q)_inf. Throws PoleParameter when a single
// denominator factor 1 - d q^k is within pole_threshold of zero; a product
// that is merely small is not a pole.
inline SeriesValue qpoch_ratio(std::span<const Complex> nums, std::span<const Complex> dens,
                               const QContext& ctx) {
  for (const Complex& d : dens) require_no_zero_factor(d, ctx, pole_threshold, "infinite-product denominator");
  return qpoch_multi(nums, inf, ctx) / qpoch_multi(dens, inf, ctx);
}

inline SeriesValue qpoch_ratio(std::initializer_list<Complex> nums, std::initializer_list<Complex> dens,
                               const QContext& ctx) {
  return qpoch_ratio(std::span<const Complex>(nums.begin(), nums.size()),
                     std::span<const Complex>(dens.begin(), dens.size()), ctx);
}

namespace detail {

// Sums term(0) + term(1) + ... until stall_window consecutive terms are
// negligible, estimating the tail from the observed term ratios.
template <class Term>
SeriesValue sum_series(Term&& term, const QContext& ctx) {
  Complex sum{0.0, 0.0};
  double abs_sum = 0.0;
  double prev_abs = -1.0;
  double worst_ratio = 0.0;
  int stall = 0;
  long n = 0;
  double last_abs = 0.0;
  bool stopped = false;

  for (; n < ctx.max_series_terms(); ++n) {
    const Complex t = term(n);
    if (!is_finite(t)) throw OverflowError("series term is not finite");
    sum += t;
    last_abs = std::abs(t);
    abs_sum += last_abs;
    if (prev_abs > 0.0) {
      const double ratio = last_abs / prev_abs;
      worst_ratio = stall == 0 ? ratio : std::max(worst_ratio, ratio);
    } else {
      worst_ratio = last_abs == 0.0 ? 0.0 : 1.0;
    }
    prev_abs = last_abs;
    if (last_abs <= machine_target * std::abs(sum)) {
      if (++stall >= ctx.stall_window()) {
        ++n;
        stopped = true;
        break;
      }
    } else {
      stall = 0;
    }
  }

  SeriesValue r;
  r.value = sum;
  r.terms_used = n;
  const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  if (!stopped && worst_ratio >= 1.0) {
    r.err_est = std::numeric_limits<double>::infinity();
  } else {
    const double rho = std::min(worst_ratio, 0.999);
    r.err_est = last_abs * rho / (1.0 - rho) + rounding;
  }
  r.converged = r.meets(ctx);
  return r;
}

}  // namespace detail

}  // namespace qcalc
