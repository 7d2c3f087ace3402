#pragma once

// Hahn-family polynomials: Hahn, homogeneous Hahn, homogeneous Rogers-Szego
// and the W_n family appearing in the Jackson-integral moment formula.

#include <vector>

#include "qcalc/core.hpp"

namespace qcalc {

struct PolyEval {
  Complex value;
  long n = 0;
};

namespace detail {

// z^0, z^1, ..., z^n by repeated multiplication (0^0 = 1).
inline std::vector<Complex> powers(Complex z, long n) {
  std::vector<Complex> p(static_cast<std::size_t>(n) + 1);
  p[0] = Complex{1.0, 0.0};
  for (long k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k) - 1] * z;
  return p;
}

// Coefficients [n k]_q (alpha; q)_k, k = 0..n, built incrementally.
inline std::vector<Complex> hahn_coefficients(long n, Complex alpha, const QContext& ctx) {
  const Complex one{1.0, 0.0};
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  Complex binom = one;
  Complex poch = one;
  for (long k = 0; k <= n; ++k) {
    if (k > 0) binom *= (one - ctx.qpow(n - k + 1)) / (one - ctx.qpow(k));
    c[static_cast<std::size_t>(k)] = binom * poch;
    poch *= one - alpha * ctx.qpow(k);
  }
  return c;
}

}  // namespace detail

// Phi_n^{(alpha)}(x, y | q) = sum_k [n k] (alpha; q)_k x^k y^{n-k}
inline Complex hahn_hom(long n, Complex alpha, Complex x, Complex y, const QContext& ctx) {
  if (n < 0) throw DomainError("hahn_hom: n must be nonnegative");
  const auto coeff = detail::hahn_coefficients(n, alpha, ctx);
  const auto xp = detail::powers(x, n);
  const auto yp = detail::powers(y, n);
  Complex s{0.0, 0.0};
  for (long k = 0; k <= n; ++k)
    s += coeff[static_cast<std::size_t>(k)] * xp[static_cast<std::size_t>(k)] * yp[static_cast<std::size_t>(n - k)];
  return s;
}

// Phi_n^{(alpha)}(x | q)
inline Complex hahn(long n, Complex alpha, Complex x, const QContext& ctx) {
  return hahn_hom(n, alpha, x, Complex{1.0, 0.0}, ctx);
}

// h_n(x, y | q)
inline Complex rogers_szego(long n, Complex x, Complex y, const QContext& ctx) {
  return hahn_hom(n, Complex{0.0, 0.0}, x, y, ctx);
}

// W_n(a, b, u, v | q) = sum_j [n j] (av, bv; q)_j / (abuv; q)_j u^j v^{n-j}.
// Throws PoleParameter when a factor of (abuv; q)_j vanishes.
inline Complex w_poly(long n, Complex a, Complex b, Complex u, Complex v, const QContext& ctx) {
  if (n < 0) throw DomainError("w_poly: n must be nonnegative");
  const Complex one{1.0, 0.0};
  const auto up = detail::powers(u, n);
  const auto vp = detail::powers(v, n);
  Complex ratio = one;
  Complex binom = one;
  Complex s{0.0, 0.0};
  for (long j = 0; j <= n; ++j) {
    if (j > 0) binom *= (one - ctx.qpow(n - j + 1)) / (one - ctx.qpow(j));
    s += binom * ratio * up[static_cast<std::size_t>(j)] * vp[static_cast<std::size_t>(n - j)];
    if (j == n) break;
    const Complex qj = ctx.qpow(j);
    const Complex den = one - a * b * u * v * qj;
    if (std::abs(den) < pole_threshold) throw PoleParameter("w_poly: (abuv; q)_j has a vanishing factor");
    ratio *= (one - a * v * qj) * (one - b * v * qj) / den;
  }
  return s;
}

}  // namespace qcalc
