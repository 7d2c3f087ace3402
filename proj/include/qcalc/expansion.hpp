#pragma once

// Expansion of a bivariate series in homogeneous Hahn polynomials.
//
// A grid lambda_{m,n} solves d_{q,x} f = d_{q,y}(1 - alpha eta_x) f exactly
// when every row is fixed by the x = 0 slice:
//
//   lambda_{m,j} = (alpha; q)_m [m+j m]_q lambda_{0,m+j},
//
// and then f = sum_n lambda_{0,n} Phi_n^{(alpha)}(x, y | q). Only entries of
// total degree m + n <= min(M, N) are treated as determined by a truncated grid.

#include <algorithm>
#include <sstream>
#include <vector>

#include "qcalc/core.hpp"
#include "qcalc/operators.hpp"
#include "qcalc/polynomials.hpp"

namespace qcalc {

struct HahnExpansion {
  Complex alpha{0.0, 0.0};
  std::vector<Complex> lambdas;  // coefficient of Phi_n^{(alpha)}(x, y | q)

  long order() const noexcept { return static_cast<long>(lambdas.size()) - 1; }
};

inline constexpr double default_expansion_tol = 1e-9;

inline HahnExpansion expand_in_hahn(const BivarSeries& s, Complex alpha, Complex q,
                                    double tol = default_expansion_tol) {
  if (s.empty()) return HahnExpansion{alpha, {}};
  const QContext ctx(q);
  const long determined = std::min(s.max_m(), s.max_n());

  const QpdeResidual res = qpde_residual_series(s, alpha, q, determined);
  if (res.residual > tol) {
    std::ostringstream msg;
    msg << "grid does not satisfy the q-PDE: residual " << res.residual << " exceeds tolerance " << tol;
    throw NotInKernel(msg.str(), res.residual);
  }

  HahnExpansion e{alpha, std::vector<Complex>(static_cast<std::size_t>(s.cols()))};
  for (long n = 0; n < s.cols(); ++n) e.lambdas[static_cast<std::size_t>(n)] = s(0, n);

  double mismatch = 0.0;
  Complex poch{1.0, 0.0};
  for (long m = 0; m < s.rows() && m <= determined; ++m) {
    for (long j = 0; j < s.cols() && m + j <= determined; ++j) {
      const Complex predicted = poch * qbinom(m + j, m, ctx) * e.lambdas[static_cast<std::size_t>(m + j)];
      mismatch = std::max(mismatch, std::abs(s(m, j) - predicted));
    }
    poch *= Complex{1.0, 0.0} - alpha * ctx.qpow(m);
  }
  if (mismatch > tol) {
    std::ostringstream msg;
    msg << "grid rows disagree with the x = 0 slice by " << mismatch;
    throw GridInconsistent(msg.str(), mismatch);
  }
  return e;
}

// sum_n lambda_n Phi_n^{(alpha)}(x, y | q)
inline Complex eval_expansion(const HahnExpansion& e, Complex x, Complex y, const QContext& ctx) {
  Complex s{0.0, 0.0};
  for (long n = 0; n <= e.order(); ++n) s += e.lambdas[static_cast<std::size_t>(n)] * hahn_hom(n, e.alpha, x, y, ctx);
  return s;
}

// Coefficient grid of sum_n lambda_n Phi_n on [0, M] x [0, N]; defaults to
// the square grid of the expansion order.
inline BivarSeries synthesize_grid(const HahnExpansion& e, const QContext& ctx, long max_m = -1, long max_n = -1) {
  if (max_m < 0) max_m = e.order();
  if (max_n < 0) max_n = e.order();
  BivarSeries g(max_m, max_n);
  for (long n = 0; n <= e.order(); ++n) {
    const Complex lambda = e.lambdas[static_cast<std::size_t>(n)];
    if (lambda == Complex{0.0, 0.0}) continue;
    g = g + lambda * hahn_hom_grid(n, e.alpha, ctx, max_m, max_n);
  }
  return g;
}

}  // namespace qcalc
