#include <gtest/gtest.h>

#include <numbers>

#include "qcalc/contour.hpp"
#include "test_support.hpp"

using qcalc::Complex;
using qcalc::QContext;

namespace {

Complex aw_closed(Complex a, Complex b, Complex c, Complex d, Complex q) {
  using qtest::naive_qpoch_inf;
  return 2.0 * std::numbers::pi * naive_qpoch_inf(a * b * c * d, q) /
         (naive_qpoch_inf(q, q) * naive_qpoch_inf(a * b, q) * naive_qpoch_inf(a * c, q) * naive_qpoch_inf(a * d, q) *
          naive_qpoch_inf(b * c, q) * naive_qpoch_inf(b * d, q) * naive_qpoch_inf(c * d, q));
}

}  // namespace

TEST(HKernel, DualEvaluationPathsAgree) {
  qtest::Gen gen(61);
  for (int i = 0; i < 100; ++i) {
    const QContext ctx(gen.q());
    const Complex a = gen.disk(0.95);
    const double theta = gen.uniform(0.0, std::numbers::pi);
    const auto direct = qcalc::h_kernel(theta, a, ctx);
    const auto quad = qcalc::h_kernel_product(theta, a, ctx);
    EXPECT_LT(qtest::rel_err(direct.value, quad.value), 1e-12);
  }
}

TEST(HKernel, ZeroParameterIsOne) {
  const QContext ctx(Complex{0.5, 0.0});
  EXPECT_EQ(qcalc::h_kernel(0.7, Complex{0.0, 0.0}, ctx).value, Complex(1.0, 0.0));
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto rule = qcalc::gauss_legendre(8);
  double w = 0.0, x14 = 0.0;
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    w += rule->weights[i];
    x14 += rule->weights[i] * std::pow(rule->nodes[i], 14);
  }
  EXPECT_NEAR(w, 2.0, 1e-14);
  EXPECT_NEAR(x14, 2.0 / 15.0, 1e-14);
}

TEST(ThetaQuadrature, SmoothPeriodicIntegrand) {
  const QContext ctx(Complex{0.5, 0.0});
  // int_0^pi 1/(1.25 - cos t) dt = pi / sqrt(1.25^2 - 1)
  const auto r = qcalc::theta_quadrature([](double t) { return Complex{1.0 / (1.25 - std::cos(t)), 0.0}; }, ctx);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), std::numbers::pi / 0.75, 1e-10);
}

TEST(AskeyWilson, ZeroParametersFrozen) {
  for (double qv : {0.2, 0.5, 0.7}) {
    const QContext ctx(Complex{qv, 0.0});
    const auto r = qcalc::askey_wilson({0, 0}, {0, 0}, {0, 0}, {0, 0}, ctx);
    EXPECT_TRUE(r.converged);
    const Complex expected = 2.0 * std::numbers::pi / qtest::naive_qpoch_inf(ctx.q(), ctx.q());
    EXPECT_LT(qtest::rel_err(r.value, expected), 1e-10) << "q=" << qv;
  }
}

TEST(AskeyWilson, ClosedFormOnRandomPoints) {
  qtest::Gen gen(62);
  for (int i = 0; i < 15; ++i) {
    const QContext ctx(Complex{gen.uniform(0.1, 0.7), 0.0});
    const Complex a = gen.disk(0.5), b = gen.disk(0.5), c = gen.disk(0.5), d = gen.disk(0.5);
    const auto r = qcalc::askey_wilson(a, b, c, d, ctx);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(qtest::rel_err(r.value, aw_closed(a, b, c, d, ctx.q())), 1e-9);
  }
}

TEST(AskeyWilson, ParameterOutsideDiskRejected) {
  const QContext ctx(Complex{0.5, 0.0});
  EXPECT_THROW(qcalc::askey_wilson({1.1, 0}, {0, 0}, {0, 0}, {0, 0}, ctx), qcalc::DomainError);
}
