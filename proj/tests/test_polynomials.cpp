#include <gtest/gtest.h>

#include "qcalc/polynomials.hpp"
#include "test_support.hpp"

using qcalc::Complex;
using qcalc::QContext;

namespace {

// Direct transcription of the W_n sum with an independent q-binomial and
// Pochhammer implementation.
Complex w_oracle(long n, Complex a, Complex b, Complex u, Complex v, Complex q) {
  Complex s{0.0, 0.0};
  for (long j = 0; j <= n; ++j)
    s += qtest::pascal_qbinom(n, j, q) * qtest::naive_qpoch(a * v, q, j) * qtest::naive_qpoch(b * v, q, j) /
         qtest::naive_qpoch(a * b * u * v, q, j) * std::pow(u, static_cast<double>(j)) *
         std::pow(v, static_cast<double>(n - j));
  return s;
}

}  // namespace

TEST(Hahn, YPowerRuleAtXZero) {
  const QContext ctx(Complex{0.3, 0.0});
  EXPECT_NEAR(std::abs(qcalc::hahn_hom(3, Complex{0.2, 0.0}, {0.0, 0.0}, {0.4, 0.0}, ctx) - 0.064), 0.0, 1e-16);
  qtest::Gen gen(21);
  for (int i = 0; i < 50; ++i) {
    const QContext c(gen.q());
    const long n = gen.integer(0, 15);
    const Complex y = gen.disk(1.0);
    EXPECT_LT(std::abs(qcalc::hahn_hom(n, gen.disk(1.0), {0.0, 0.0}, y, c) - std::pow(y, static_cast<double>(n))),
              1e-14);
  }
}

TEST(Hahn, YZeroGivesPochhammerTimesXPower) {
  qtest::Gen gen(22);
  for (int i = 0; i < 50; ++i) {
    const QContext ctx(gen.q());
    const long n = gen.integer(0, 15);
    const Complex alpha = gen.disk(1.0), x = gen.disk(1.0);
    const Complex expected = qtest::naive_qpoch(alpha, ctx.q(), n) * std::pow(x, static_cast<double>(n));
    EXPECT_LT(std::abs(qcalc::hahn_hom(n, alpha, x, {0.0, 0.0}, ctx) - expected), 1e-13);
  }
}

TEST(Hahn, InhomogeneousIsHomogeneousAtYOne) {
  const QContext ctx(Complex{0.45, 0.05});
  const Complex alpha{0.3, -0.2}, x{0.7, 0.1};
  for (long n = 0; n <= 10; ++n)
    EXPECT_EQ(qcalc::hahn(n, alpha, x, ctx), qcalc::hahn_hom(n, alpha, x, {1.0, 0.0}, ctx));
}

TEST(Hahn, NegativeDegreeRejected) {
  const QContext ctx(Complex{0.5, 0.0});
  EXPECT_THROW(qcalc::hahn_hom(-1, {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, ctx), qcalc::DomainError);
}

TEST(RogersSzego, ThreeTermRecurrence) {
  // h_{n+1} = (x + y) h_n - x y (1 - q^n) h_{n-1}
  qtest::Gen gen(23);
  for (int i = 0; i < 100; ++i) {
    const QContext ctx(gen.q());
    const Complex x = gen.disk(1.0), y = gen.disk(1.0);
    const long n = gen.integer(1, 20);
    const Complex lhs = qcalc::rogers_szego(n + 1, x, y, ctx);
    const Complex rhs = (x + y) * qcalc::rogers_szego(n, x, y, ctx) -
                        x * y * (1.0 - ctx.qpow(n)) * qcalc::rogers_szego(n - 1, x, y, ctx);
    EXPECT_LT(std::abs(lhs - rhs), 1e-13);
  }
}

TEST(RogersSzego, SymmetricInArguments) {
  qtest::Gen gen(24);
  for (int i = 0; i < 50; ++i) {
    const QContext ctx(gen.q());
    const Complex x = gen.disk(1.0), y = gen.disk(1.0);
    const long n = gen.integer(0, 20);
    EXPECT_LT(std::abs(qcalc::rogers_szego(n, x, y, ctx) - qcalc::rogers_szego(n, y, x, ctx)), 1e-14);
  }
}

TEST(WPoly, MatchesDirectSum) {
  qtest::Gen gen(25);
  for (int i = 0; i < 100; ++i) {
    const QContext ctx(gen.q());
    const long n = gen.integer(0, 12);
    const Complex a = gen.disk(0.9), b = gen.disk(0.9), u = gen.disk(0.9), v = gen.disk(0.9);
    const Complex got = qcalc::w_poly(n, a, b, u, v, ctx);
    EXPECT_LT(std::abs(got - w_oracle(n, a, b, u, v, ctx.q())), 1e-12 * std::max(1.0, std::abs(got)));
  }
}

TEST(WPoly, LowDegreeClosedForms) {
  const QContext ctx(Complex{0.5, 0.0});
  const Complex a{0.2, 0.0}, b{0.3, 0.0}, u{0.4, 0.0}, v{0.5, 0.0};
  EXPECT_EQ(qcalc::w_poly(0, a, b, u, v, ctx), Complex(1.0, 0.0));
  // W_1 = v + (1 - av)(1 - bv)/(1 - abuv) u
  const Complex w1 = v + (1.0 - a * v) * (1.0 - b * v) / (1.0 - a * b * u * v) * u;
  EXPECT_LT(std::abs(qcalc::w_poly(1, a, b, u, v, ctx) - w1), 1e-16);
}

TEST(WPoly, PoleRaises) {
  const QContext ctx(Complex{0.5, 0.0});
  // abuv = 1
  EXPECT_THROW(qcalc::w_poly(3, {2.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {1.0, 0.0}, ctx), qcalc::PoleParameter);
}
