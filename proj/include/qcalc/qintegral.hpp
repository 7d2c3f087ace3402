#pragma once

// Jackson q-integral on [u, v] and the Pochhammer-ratio integrands used with it.

#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

#include "qcalc/core.hpp"

namespace qcalc {

using QIntegralResult = SeriesValue;

namespace detail {

inline Complex value_of(Complex z) { return z; }
inline Complex value_of(const SeriesValue& s) { return s.value; }
inline double err_of(Complex) { return 0.0; }
inline double err_of(const SeriesValue& s) { return s.err_est; }
inline bool converged_of(Complex) { return true; }
inline bool converged_of(const SeriesValue& s) { return s.converged; }

}  // namespace detail

// (1-q) sum_n [v f(v q^n) - u f(u q^n)] q^n.
//
// The two tails are summed in lockstep and combined only at the end, so
// swapping u and v negates the result exactly. `f` may return Complex or a
// SeriesValue; in the latter case the integrand's own error is accumulated.
template <class F>
QIntegralResult jackson(F&& f, Complex u, Complex v, const QContext& ctx) {
  Complex tail_v{0.0, 0.0}, tail_u{0.0, 0.0};
  double abs_sum = 0.0;
  double inner_err = 0.0;
  bool inner_ok = true;
  double prev = -1.0, worst_ratio = 0.0, last = 0.0;
  int stall = 0;
  long n = 0;
  bool stopped = false;

  for (; n < ctx.max_series_terms(); ++n) {
    const Complex qn = ctx.qpow(n);
    const auto fv = f(v * qn);
    const auto fu = f(u * qn);
    const Complex tv = v * detail::value_of(fv) * qn;
    const Complex tu = u * detail::value_of(fu) * qn;
    if (!is_finite(tv) || !is_finite(tu)) throw OverflowError("jackson: integrand is not finite");
    inner_err += std::abs(v * qn) * detail::err_of(fv) + std::abs(u * qn) * detail::err_of(fu);
    inner_ok = inner_ok && detail::converged_of(fv) && detail::converged_of(fu);
    tail_v += tv;
    tail_u += tu;
    last = std::abs(tv) + std::abs(tu);
    abs_sum += last;
    if (prev > 0.0) {
      const double ratio = last / prev;
      worst_ratio = stall == 0 ? ratio : std::max(worst_ratio, ratio);
    } else {
      worst_ratio = last == 0.0 ? 0.0 : 1.0;
    }
    prev = last;
    const double scale = std::max(std::abs(tail_v), std::abs(tail_u));
    if (last <= machine_target * scale) {
      if (++stall >= ctx.stall_window()) {
        ++n;
        stopped = true;
        break;
      }
    } else {
      stall = 0;
    }
  }

  const Complex one_minus_q = Complex{1.0, 0.0} - ctx.q();
  QIntegralResult r;
  r.value = one_minus_q * (tail_v - tail_u);
  r.terms_used = n;
  double tail;
  if (!stopped && worst_ratio >= 1.0) {
    tail = std::numeric_limits<double>::infinity();
  } else {
    const double rho = std::min(worst_ratio, 0.999);
    tail = last * rho / (1.0 - rho);
  }
  r.err_est = std::abs(one_minus_q) * (tail + inner_err + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum);
  r.converged = inner_ok && r.meets(ctx);
  return r;
}

// Integrand factory for
//   x -> x^power (qx/u, qx/v, n_1 x, ..., n_r x; q)_inf / (d_1 x, ..., d_s x; q)_inf
// which covers every Jackson integrand of the Andrews-Askey family.
class PochhammerWeight {
public:
  PochhammerWeight(Complex u, Complex v, std::vector<Complex> num_scales, std::vector<Complex> den_scales,
                   const QContext& ctx, long power = 0)
      : u_(u), v_(v), nums_(std::move(num_scales)), dens_(std::move(den_scales)), ctx_(ctx), power_(power) {
    if (u == Complex{0.0, 0.0} || v == Complex{0.0, 0.0})
      throw DomainError("PochhammerWeight: endpoints must be nonzero");
  }

  // Throws PoleParameter if a denominator vanishes at some node u q^n or v q^n.
  void check_poles() const {
    for (const Complex& d : dens_) {
      require_no_zero_factor(d * u_, ctx_, pole_threshold, "Jackson integrand denominator");
      require_no_zero_factor(d * v_, ctx_, pole_threshold, "Jackson integrand denominator");
    }
  }

  Complex operator()(Complex x) const {
    const Complex q = ctx_.q();
    Complex num = qpoch_inf(q * x / u_, ctx_).value * qpoch_inf(q * x / v_, ctx_).value;
    for (const Complex& c : nums_) num *= qpoch_inf(c * x, ctx_).value;
    Complex den{1.0, 0.0};
    for (const Complex& d : dens_) den *= qpoch_inf(d * x, ctx_).value;
    if (den == Complex{0.0, 0.0}) throw PoleParameter("Jackson integrand denominator vanishes");
    return ipow(x, power_) * num / den;
  }

private:
  Complex u_, v_;
  std::vector<Complex> nums_, dens_;
  QContext ctx_;
  long power_;
};

// Left-hand side of the Andrews-Askey integral:
//   int_u^v (qx/u, qx/v; q)_inf / (bx, cx; q)_inf d_q x
inline QIntegralResult andrews_askey_lhs(Complex b, Complex c, Complex u, Complex v, const QContext& ctx) {
  PochhammerWeight w(u, v, {}, {b, c}, ctx);
  w.check_poles();
  return jackson(w, u, v, ctx);
}

// Moment variant with an extra x^n in the integrand.
inline QIntegralResult andrews_askey_moment(long n, Complex b, Complex c, Complex u, Complex v,
                                            const QContext& ctx) {
  PochhammerWeight w(u, v, {}, {b, c}, ctx, n);
  w.check_poles();
  return jackson(w, u, v, ctx);
}

}  // namespace qcalc
