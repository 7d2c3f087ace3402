#pragma once

// q-derivative, q-partial derivatives and the q-shift operator, both as
// pointwise operators on callables and as exact maps on truncated power
// series coefficients.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "qcalc/core.hpp"
#include "qcalc/polynomials.hpp"

namespace qcalc {

// sum_k coeffs[k] x^k, k = 0..N. An empty coefficient list is the zero series.
struct UniSeries {
  std::vector<Complex> coeffs;

  long trunc_order() const noexcept { return static_cast<long>(coeffs.size()) - 1; }

  Complex operator()(Complex x) const {
    Complex s{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
    return s;
  }
};

// Rectangular grid of coefficients lambda_{m,n} of x^m y^n, 0 <= m <= M,
// 0 <= n <= N, stored row-major in m. A grid with no rows or no columns is
// the zero series.
class BivarSeries {
public:
  BivarSeries() = default;

  BivarSeries(long max_m, long max_n)
      : rows_(std::max(0L, max_m + 1)),
        cols_(std::max(0L, max_n + 1)),
        data_(static_cast<std::size_t>(rows_ * cols_)) {}

  BivarSeries(long max_m, long max_n, std::vector<Complex> row_major)
      : rows_(max_m + 1), cols_(max_n + 1), data_(std::move(row_major)) {
    if (max_m < 0 || max_n < 0 || data_.size() != static_cast<std::size_t>(rows_ * cols_))
      throw DomainError("BivarSeries: coefficient count does not match (M+1)(N+1)");
    for (const Complex& c : data_)
      if (!is_finite(c)) throw DomainError("BivarSeries: coefficients must be finite");
  }

  long rows() const noexcept { return rows_; }
  long cols() const noexcept { return cols_; }
  long max_m() const noexcept { return rows_ - 1; }
  long max_n() const noexcept { return cols_ - 1; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(long m, long n) { return data_[static_cast<std::size_t>(m * cols_ + n)]; }
  const Complex& operator()(long m, long n) const { return data_[static_cast<std::size_t>(m * cols_ + n)]; }

  // Zero outside the stored rectangle.
  Complex at(long m, long n) const {
    if (m < 0 || n < 0 || m >= rows_ || n >= cols_) return {0.0, 0.0};
    return (*this)(m, n);
  }

  const std::vector<Complex>& data() const noexcept { return data_; }

  double max_abs() const {
    double r = 0.0;
    for (const Complex& c : data_) r = std::max(r, std::abs(c));
    return r;
  }

  Complex operator()(Complex x, Complex y) const {
    Complex s{0.0, 0.0};
    for (long m = rows_ - 1; m >= 0; --m) {
      Complex row{0.0, 0.0};
      for (long n = cols_ - 1; n >= 0; --n) row = row * y + (*this)(m, n);
      s = s * x + row;
    }
    return s;
  }

  friend BivarSeries operator+(const BivarSeries& a, const BivarSeries& b) {
    return combine(a, b, Complex{1.0, 0.0});
  }
  friend BivarSeries operator-(const BivarSeries& a, const BivarSeries& b) {
    return combine(a, b, Complex{-1.0, 0.0});
  }
  friend BivarSeries operator*(Complex c, const BivarSeries& a) {
    BivarSeries r = a;
    for (Complex& v : r.data_) v *= c;
    return r;
  }

private:
  static BivarSeries combine(const BivarSeries& a, const BivarSeries& b, Complex sign) {
    BivarSeries r(std::max(a.rows_, b.rows_) - 1, std::max(a.cols_, b.cols_) - 1);
    for (long m = 0; m < r.rows_; ++m)
      for (long n = 0; n < r.cols_; ++n) r(m, n) = a.at(m, n) + sign * b.at(m, n);
    return r;
  }

  long rows_ = 0;
  long cols_ = 0;
  std::vector<Complex> data_;
};

namespace detail {

inline std::vector<Complex> power_table(Complex q, long n) {
  std::vector<Complex> p(static_cast<std::size_t>(std::max(0L, n)) + 1);
  p[0] = Complex{1.0, 0.0};
  for (std::size_t k = 1; k < p.size(); ++k) p[k] = p[k - 1] * q;
  return p;
}

}  // namespace detail

// (f(x) - f(qx)) / x. Singular at x = 0; use qderiv_series there.
inline Complex qderiv_point(const std::function<Complex(Complex)>& f, Complex x, Complex q) {
  if (std::abs(x) < 1e-14) throw DomainError("qderiv_point: x is too close to 0");
  return (f(x) - f(q * x)) / x;
}

inline UniSeries qderiv_series(const UniSeries& s, Complex q) {
  UniSeries r;
  if (s.coeffs.size() <= 1) return r;
  const auto qp = detail::power_table(q, s.trunc_order());
  r.coeffs.resize(s.coeffs.size() - 1);
  for (std::size_t k = 1; k < s.coeffs.size(); ++k) r.coeffs[k - 1] = s.coeffs[k] * (Complex{1.0, 0.0} - qp[k]);
  return r;
}

inline BivarSeries qpartial_x(const BivarSeries& s, Complex q) {
  if (s.rows() <= 1) return BivarSeries(-1, s.max_n());
  const auto qp = detail::power_table(q, s.max_m());
  BivarSeries r(s.max_m() - 1, s.max_n());
  for (long m = 1; m < s.rows(); ++m)
    for (long n = 0; n < s.cols(); ++n)
      r(m - 1, n) = s(m, n) * (Complex{1.0, 0.0} - qp[static_cast<std::size_t>(m)]);
  return r;
}

inline BivarSeries qpartial_y(const BivarSeries& s, Complex q) {
  if (s.cols() <= 1) return BivarSeries(s.max_m(), -1);
  const auto qp = detail::power_table(q, s.max_n());
  BivarSeries r(s.max_m(), s.max_n() - 1);
  for (long m = 0; m < s.rows(); ++m)
    for (long n = 1; n < s.cols(); ++n)
      r(m, n - 1) = s(m, n) * (Complex{1.0, 0.0} - qp[static_cast<std::size_t>(n)]);
  return r;
}

// eta_x: f(x, y) -> f(qx, y)
inline BivarSeries qshift_x(const BivarSeries& s, Complex q) {
  BivarSeries r = s;
  const auto qp = detail::power_table(q, s.max_m());
  for (long m = 0; m < s.rows(); ++m)
    for (long n = 0; n < s.cols(); ++n) r(m, n) *= qp[static_cast<std::size_t>(m)];
  return r;
}

struct QpdeResidual {
  double residual = 0.0;     // max |coefficient| of the residual grid
  double input_scale = 0.0;  // max |coefficient| of the input grid
};

// Residual of d_{q,x} f - d_{q,y} (1 - alpha eta_x) f on the indices both
// sides determine: m <= M-1, n <= N-1, and, when max_total_degree >= 0, only
// entries whose source monomials have total degree m + n + 1 <= max_total_degree.
inline QpdeResidual qpde_residual_series(const BivarSeries& s, Complex alpha, Complex q,
                                         long max_total_degree = -1) {
  QpdeResidual r;
  r.input_scale = s.max_abs();
  if (s.rows() <= 1 || s.cols() <= 1) return r;
  const BivarSeries lhs = qpartial_x(s, q);
  const BivarSeries rhs = qpartial_y(s - alpha * qshift_x(s, q), q);
  for (long m = 0; m < s.rows() - 1; ++m)
    for (long n = 0; n < s.cols() - 1; ++n) {
      if (max_total_degree >= 0 && m + n + 1 > max_total_degree) continue;
      r.residual = std::max(r.residual, std::abs(lhs(m, n) - rhs(m, n)));
    }
  return r;
}

// Coefficient grid of Phi_n^{(alpha)}(x, y | q) on [0, M] x [0, N]
// (defaults to the exact (n+1) x (n+1) support).
inline BivarSeries hahn_hom_grid(long n, Complex alpha, const QContext& ctx, long max_m = -1, long max_n = -1) {
  if (max_m < 0) max_m = n;
  if (max_n < 0) max_n = n;
  BivarSeries g(max_m, max_n);
  const auto c = detail::hahn_coefficients(n, alpha, ctx);
  for (long k = 0; k <= n; ++k)
    if (k <= max_m && n - k <= max_n) g(k, n - k) = c[static_cast<std::size_t>(k)];
  return g;
}

}  // namespace qcalc
