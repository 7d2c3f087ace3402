#include <gtest/gtest.h>

#include "qcalc/core.hpp"
#include "test_support.hpp"

using qcalc::Complex;
using qcalc::QContext;

TEST(QContext, RejectsInvalidArguments) {
  EXPECT_THROW(QContext(Complex{1.0, 0.0}), qcalc::DomainError);
  EXPECT_THROW(QContext(Complex{0.0, 1.2}), qcalc::DomainError);
  EXPECT_THROW(QContext(Complex{std::nan(""), 0.0}), qcalc::DomainError);
  EXPECT_THROW(QContext(Complex{0.5, 0.0}, 0.0), qcalc::DomainError);
  EXPECT_THROW(QContext(Complex{0.5, 0.0}, 1e-10, 0), qcalc::DomainError);
  EXPECT_NO_THROW(QContext(Complex{-0.9, 0.1}));
}

TEST(QContext, PowersMatchStdPow) {
  const QContext ctx(Complex{0.6, 0.3});
  for (long k : {0L, 1L, 7L, 500L, 2000L, 5000L})
    EXPECT_LT(std::abs(ctx.qpow(k) - std::pow(ctx.q(), static_cast<double>(k))),
              1e-12 * std::max(1e-300, std::abs(ctx.qpow(k))) + 1e-300);
}

TEST(QPochhammer, FiniteSmallCases) {
  const QContext ctx(Complex{0.5, 0.0});
  EXPECT_EQ(qcalc::qpoch_finite(Complex{0.3, 0.0}, 0, ctx), Complex(1.0, 0.0));
  // (0.5; 0.5)_3 = 0.5 * 0.75 * 0.875
  EXPECT_NEAR(std::abs(qcalc::qpoch_finite(Complex{0.5, 0.0}, 3, ctx) - 0.328125), 0.0, 1e-15);
  EXPECT_EQ(qcalc::qpoch_finite(Complex{4.0, 0.0}, 5, ctx), Complex(0.0, 0.0));
}

TEST(QPochhammer, InfiniteProductKnownValue) {
  // (1/2; 1/2)_inf
  const QContext ctx(Complex{0.5, 0.0});
  const auto v = qcalc::qpoch_inf(Complex{0.5, 0.0}, ctx);
  EXPECT_TRUE(v.converged);
  EXPECT_NEAR(v.value.real(), 0.288788095086602421, 1e-15);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-15);
}

TEST(QPochhammer, InfiniteMatchesNaiveLoop) {
  qtest::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const Complex q = gen.q(0.05, 0.9);
    const Complex a = gen.disk(3.0);
    const QContext ctx(q);
    const auto v = qcalc::qpoch_inf(a, ctx);
    ASSERT_TRUE(v.converged);
    EXPECT_LT(std::abs(v.value - qtest::naive_qpoch_inf(a, q)), 1e-11 * std::max(1.0, std::abs(v.value)))
        << "q=" << q << " a=" << a;
  }
}

TEST(QPochhammer, SplittingProperty) {
  // (a; q)_inf = (a; q)_n (a q^n; q)_inf
  qtest::Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const QContext ctx(gen.q());
    const Complex a = gen.disk(1.5);
    const long n = gen.integer(0, 30);
    const Complex whole = qcalc::qpoch_inf(a, ctx).value;
    const Complex split = qcalc::qpoch_finite(a, n, ctx) * qcalc::qpoch_inf(a * ctx.qpow(n), ctx).value;
    EXPECT_LT(std::abs(whole - split), 1e-12 * std::max(1.0, std::abs(whole)));
  }
}

TEST(QPochhammer, MultiIsProductOfSingles) {
  const QContext ctx(Complex{0.4, 0.1});
  const Complex a{0.2, 0.1}, b{-0.5, 0.3};
  EXPECT_LT(std::abs(qcalc::qpoch_multi({a, b}, 6, ctx) - qcalc::qpoch_finite(a, 6, ctx) * qcalc::qpoch_finite(b, 6, ctx)),
            1e-15);
  const auto inf_pair = qcalc::qpoch_multi({a, b}, qcalc::inf, ctx);
  EXPECT_LT(std::abs(inf_pair.value - qtest::naive_qpoch_inf(a, ctx.q()) * qtest::naive_qpoch_inf(b, ctx.q())), 1e-14);
}

TEST(QBinomial, FrozenValues) {
  const QContext ctx(Complex{0.5, 0.0});
  EXPECT_NEAR(qcalc::qbinom(2, 1, ctx).real(), 1.5, 1e-15);
  EXPECT_NEAR(qcalc::qbinom(4, 2, ctx).real(), 2.1875, 1e-15);
  EXPECT_EQ(qcalc::qbinom(3, 5, ctx), Complex(0.0, 0.0));
  EXPECT_EQ(qcalc::qbinom(3, -1, ctx), Complex(0.0, 0.0));
}

TEST(QBinomial, SymmetryAndPascalOracle) {
  qtest::Gen gen(13);
  for (int i = 0; i < 100; ++i) {
    const QContext ctx(gen.q());
    const long n = gen.integer(0, 20);
    const long k = gen.integer(0, n);
    const Complex b = qcalc::qbinom(n, k, ctx);
    EXPECT_LT(qtest::rel_err(b, qcalc::qbinom(n, n - k, ctx)), 1e-13);
    EXPECT_LT(qtest::rel_err(b, qtest::pascal_qbinom(n, k, ctx.q())), 1e-12);
  }
}

TEST(QPochRatio, RaisesOnVanishingDenominatorFactor) {
  const QContext ctx(Complex{0.5, 0.0});
  // 1 - 4 q^2 = 0
  EXPECT_THROW(qcalc::qpoch_ratio({Complex{0.1, 0.0}}, {Complex{4.0, 0.0}}, ctx), qcalc::PoleParameter);
  const auto r = qcalc::qpoch_ratio({Complex{0.3, 0.0}}, {Complex{0.2, 0.0}}, ctx);
  EXPECT_LT(qtest::rel_err(r.value, qtest::naive_qpoch_inf(Complex{0.3, 0.0}, ctx.q()) /
                                        qtest::naive_qpoch_inf(Complex{0.2, 0.0}, ctx.q())),
            1e-14);
}

TEST(SumSeries, GeometricSeriesConverges) {
  const QContext ctx(Complex{0.5, 0.0});
  const Complex z{0.3, 0.4};
  const auto s = qcalc::detail::sum_series([&](long n) { return std::pow(z, static_cast<double>(n)); }, ctx);
  EXPECT_TRUE(s.converged);
  EXPECT_LT(std::abs(s.value - 1.0 / (1.0 - z)), 1e-14);
  EXPECT_LE(s.err_est, 1e-14);
}

TEST(SumSeries, DivergentSeriesIsFlagged) {
  const QContext ctx(Complex{0.5, 0.0}, 1e-10, 200);
  const auto s = qcalc::detail::sum_series([](long) { return Complex{1.0, 0.0}; }, ctx);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.terms_used, 200);
}

TEST(SeriesValue, ErrorPropagates) {
  const qcalc::SeriesValue a{Complex{2.0, 0.0}, 1e-3, 5, true};
  const qcalc::SeriesValue b{Complex{3.0, 0.0}, 2e-3, 7, true};
  const auto p = a * b;
  EXPECT_EQ(p.value, Complex(6.0, 0.0));
  EXPECT_GE(p.err_est, 3e-3 + 4e-3 - 1e-12);
  EXPECT_GE((a + b).err_est, 3e-3 - 1e-15);
}
