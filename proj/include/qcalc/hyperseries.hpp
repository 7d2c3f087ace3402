#pragma once

// Basic hypergeometric series, k-fold multiple sums and the sums built on
// them (q-Lauricella, partial-fraction form of h_k).

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <span>
#include <vector>

#include "qcalc/core.hpp"

namespace qcalc {

// r phi s (num_params; den_params; q, z)
struct PhiSpec {
  std::vector<Complex> num_params;
  std::vector<Complex> den_params;
  Complex z{0.0, 0.0};

  // Pads with zero parameters so that r = s + 1; (0; q)_n = 1, so the sum is
  // unchanged and the (-1)^n q^{n(n-1)/2} factor drops out.
  static PhiSpec balanced(std::vector<Complex> nums, std::vector<Complex> dens, Complex z) {
    while (nums.size() < dens.size() + 1) nums.emplace_back(0.0, 0.0);
    while (dens.size() + 1 < nums.size()) dens.emplace_back(0.0, 0.0);
    return PhiSpec{std::move(nums), std::move(dens), z};
  }
};

// sum_n (a_1..a_r; q)_n / (q, b_1..b_s; q)_n [(-1)^n q^{n(n-1)/2}]^{s-r+1} z^n
inline SeriesValue phi(const PhiSpec& spec, const QContext& ctx) {
  const Complex one{1.0, 0.0};
  const long extra = static_cast<long>(spec.den_params.size()) - static_cast<long>(spec.num_params.size()) + 1;
  Complex term = one;
  long next = 0;
  auto gen = [&](long n) {
    // Advance the running term from index `next` up to n (called in order).
    while (next < n) {
      const Complex qn = ctx.qpow(next);
      Complex ratio = spec.z / (one - ctx.qpow(next + 1));
      for (const Complex& a : spec.num_params) ratio *= one - a * qn;
      for (const Complex& b : spec.den_params) {
        const Complex f = one - b * qn;
        if (std::abs(f) < pole_threshold) throw PoleParameter("phi: lower parameter produces a vanishing factor");
        ratio /= f;
      }
      if (extra != 0) ratio *= std::pow(-qn, static_cast<double>(extra));
      term *= ratio;
      ++next;
    }
    return term;
  };
  return detail::sum_series(gen, ctx);
}

// Sum of term(n_1..n_k) over a growing box [0, N]^k: N starts at 8 and doubles
// until the newly added shell contributes at most eps |partial sum|.
template <class Term>
SeriesValue multisum(int k, Term&& term, const QContext& ctx) {
  if (k < 1) throw DomainError("multisum: k must be positive");
  const long cap = std::max(1L, static_cast<long>(std::floor(
                                    std::pow(static_cast<double>(ctx.max_series_terms()), 1.0 / k) + 1e-9)));
  std::vector<long> idx(static_cast<std::size_t>(k));
  Complex sum{0.0, 0.0};
  double abs_sum = 0.0;
  long evaluated = 0;

  // Adds every index in [0, hi]^k that is not inside [0, lo]^k (lo < 0: none).
  auto add_shell = [&](long lo, long hi) {
    Complex shell{0.0, 0.0};
    std::fill(idx.begin(), idx.end(), 0L);
    while (true) {
      const long mx = *std::max_element(idx.begin(), idx.end());
      if (mx > lo) {
        const Complex t = term(std::span<const long>(idx));
        if (!is_finite(t)) throw OverflowError("multisum: term is not finite");
        shell += t;
        abs_sum += std::abs(t);
        ++evaluated;
      }
      int d = 0;
      for (; d < k; ++d) {
        if (++idx[static_cast<std::size_t>(d)] <= hi) break;
        idx[static_cast<std::size_t>(d)] = 0;
      }
      if (d == k) break;
    }
    return shell;
  };

  long box = std::min(8L, cap);
  sum = add_shell(-1, box);
  SeriesValue r;
  double last_shell = std::abs(sum);
  bool converged = false;
  while (true) {
    const long next = std::min(2 * box, cap);
    if (next == box) break;
    const Complex shell = add_shell(box, next);
    sum += shell;
    box = next;
    last_shell = std::abs(shell);
    if (last_shell <= ctx.eps() * std::abs(sum)) {
      converged = true;
      break;
    }
  }
  r.value = sum;
  r.err_est = last_shell + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  r.terms_used = evaluated;
  r.converged = converged && r.meets(ctx);
  return r;
}

namespace detail {

// Lazily extended table of (a; q)_n, n = 0, 1, ...
class PochTable {
public:
  PochTable(Complex a, const QContext& ctx, bool denominator = false)
      : a_(a), ctx_(&ctx), denominator_(denominator), vals_{Complex{1.0, 0.0}} {}

  Complex operator[](long n) {
    while (static_cast<long>(vals_.size()) <= n) {
      const long m = static_cast<long>(vals_.size()) - 1;
      const Complex f = Complex{1.0, 0.0} - a_ * ctx_->qpow(m);
      if (denominator_ && std::abs(f) < pole_threshold)
        throw PoleParameter("vanishing factor in a denominator q-shifted factorial");
      vals_.push_back(vals_.back() * f);
    }
    return vals_[static_cast<std::size_t>(n)];
  }

private:
  Complex a_;
  const QContext* ctx_;
  bool denominator_;
  std::vector<Complex> vals_;
};

// z^n, lazily extended.
class PowerTable {
public:
  explicit PowerTable(Complex z) : z_(z), vals_{Complex{1.0, 0.0}} {}

  Complex operator[](long n) {
    while (static_cast<long>(vals_.size()) <= n) vals_.push_back(vals_.back() * z_);
    return vals_[static_cast<std::size_t>(n)];
  }

private:
  Complex z_;
  std::vector<Complex> vals_;
};

}  // namespace detail

// sum over n_1..n_k of (a; q)_{|n|} prod (b_i; q)_{n_i} y_i^{n_i}
//                    / ((c; q)_{|n|} prod (q; q)_{n_i})
inline SeriesValue qlauricella(Complex a, Complex c, std::span<const Complex> bs, std::span<const Complex> ys,
                               const QContext& ctx) {
  if (bs.empty() || bs.size() != ys.size()) throw DomainError("qlauricella: need k >= 1 matching b and y lists");
  for (const Complex& y : ys)
    if (!(std::abs(y) < 1.0)) throw DomainError("qlauricella: requires |y_i| < 1");
  const int k = static_cast<int>(bs.size());
  detail::PochTable pa(a, ctx), pc(c, ctx, true), pq(ctx.q(), ctx);
  std::vector<detail::PochTable> pb;
  std::vector<detail::PowerTable> py;
  for (int i = 0; i < k; ++i) {
    pb.emplace_back(bs[static_cast<std::size_t>(i)], ctx);
    py.emplace_back(ys[static_cast<std::size_t>(i)]);
  }
  auto term = [&](std::span<const long> n) {
    const long total = std::accumulate(n.begin(), n.end(), 0L);
    Complex t = pa[total] / pc[total];
    for (int i = 0; i < k; ++i) {
      const long ni = n[static_cast<std::size_t>(i)];
      t *= pb[static_cast<std::size_t>(i)][ni] * py[static_cast<std::size_t>(i)][ni] / pq[ni];
    }
    return t;
  };
  return multisum(k, term, ctx);
}

inline SeriesValue qlauricella(Complex a, Complex c, std::initializer_list<Complex> bs,
                               std::initializer_list<Complex> ys, const QContext& ctx) {
  return qlauricella(a, c, std::span<const Complex>(bs.begin(), bs.size()),
                     std::span<const Complex>(ys.begin(), ys.size()), ctx);
}

// h_k(a, b | q) in partial-fraction form:
//   a^k/(b/a; q)_inf sum_n q^{n(k+1)}/(q, qa/b; q)_n  +  (a <-> b)
inline SeriesValue rs_partial_fraction(long k, Complex a, Complex b, const QContext& ctx) {
  if (k < 0) throw DomainError("rs_partial_fraction: k must be nonnegative");
  if (a == Complex{0.0, 0.0} || b == Complex{0.0, 0.0}) throw DomainError("rs_partial_fraction: a and b must be nonzero");
  if (a == b) throw DomainError("rs_partial_fraction: requires a != b");
  require_no_zero_factor(b / a, ctx, pole_threshold, "(b/a; q)_inf");
  require_no_zero_factor(a / b, ctx, pole_threshold, "(a/b; q)_inf");

  const Complex z = ctx.qpow(k + 1);
  auto half = [&](Complex lead, Complex other) {
    const SeriesValue sum = phi(PhiSpec{{{0.0, 0.0}, {0.0, 0.0}}, {ctx.q() * lead / other}, z}, ctx);
    const SeriesValue den = qpoch_inf(other / lead, ctx);
    return ipow(lead, k) * (sum / den);
  };
  SeriesValue r = half(a, b) + half(b, a);
  r.converged = r.converged && r.meets(ctx);
  return r;
}

}  // namespace qcalc
