#include <gtest/gtest.h>

#include <fstream>

#include "qcalc/expansion.hpp"
#include "qcalc/json_io.hpp"
#include "test_support.hpp"

using qcalc::BivarSeries;
using qcalc::Complex;
using qcalc::QContext;

namespace {

qcalc::Json read_json(const std::string& name) {
  std::ifstream in(std::string(QCALC_DATA_DIR) + "/" + name);
  return qcalc::Json::parse(in);
}

std::vector<Complex> random_lambdas(qtest::Gen& gen, long order) {
  std::vector<Complex> l;
  for (long n = 0; n <= order; ++n) l.push_back(gen.disk(std::pow(0.5, static_cast<double>(n))));
  return l;
}

}  // namespace

TEST(Expansion, SingleHahnGridGivesUnitVector) {
  const Complex alpha{0.3, 0.0}, q{0.5, 0.0};
  const auto e = qcalc::expand_in_hahn(qcalc::grid_from_json(read_json("phi2_alpha0.3_q0.5.json")), alpha, q);
  ASSERT_EQ(e.lambdas.size(), 3u);
  EXPECT_LT(std::abs(e.lambdas[0]), 1e-15);
  EXPECT_LT(std::abs(e.lambdas[1]), 1e-15);
  EXPECT_LT(std::abs(e.lambdas[2] - 1.0), 1e-15);
}

TEST(Expansion, MonomialXYNotInKernel) {
  const BivarSeries g = qcalc::grid_from_json(read_json("xy.json"));
  try {
    qcalc::expand_in_hahn(g, {0.0, 0.0}, {0.5, 0.0});
    FAIL() << "expected NotInKernel";
  } catch (const qcalc::NotInKernel& e) {
    EXPECT_NEAR(e.residual(), 0.5, 1e-15);
  }
}

TEST(Expansion, RoundtripRecoversLambdas) {
  qtest::Gen gen(71);
  for (int i = 0; i < 30; ++i) {
    const QContext ctx(gen.q());
    const Complex alpha = gen.disk(1.0);
    const qcalc::HahnExpansion e{alpha, random_lambdas(gen, 16)};
    const auto back = qcalc::expand_in_hahn(qcalc::synthesize_grid(e, ctx), alpha, ctx.q());
    ASSERT_EQ(back.lambdas.size(), e.lambdas.size());
    for (std::size_t n = 0; n < e.lambdas.size(); ++n) EXPECT_LT(std::abs(back.lambdas[n] - e.lambdas[n]), 1e-10);
  }
}

TEST(Expansion, EvaluationMatchesGrid) {
  qtest::Gen gen(72);
  for (int i = 0; i < 20; ++i) {
    const QContext ctx(gen.q());
    const qcalc::HahnExpansion e{gen.disk(1.0), random_lambdas(gen, 10)};
    const BivarSeries g = qcalc::synthesize_grid(e, ctx);
    const Complex x = gen.disk(0.8), y = gen.disk(0.8);
    EXPECT_LT(std::abs(qcalc::eval_expansion(e, x, y, ctx) - g(x, y)), 1e-13);
  }
}

TEST(Expansion, PerturbedGridRejected) {
  qtest::Gen gen(73);
  for (int i = 0; i < 30; ++i) {
    const QContext ctx(gen.q());
    const Complex alpha = gen.disk(1.0);
    BivarSeries g = qcalc::synthesize_grid(qcalc::HahnExpansion{alpha, random_lambdas(gen, 8)}, ctx);
    const long m = gen.integer(1, 4), n = gen.integer(0, 3);
    g(m, n) += std::polar(1e-5, gen.uniform(0.0, 6.28));
    EXPECT_THROW(qcalc::expand_in_hahn(g, alpha, ctx.q()), qcalc::NotInKernel) << "m=" << m << " n=" << n;
  }
}

TEST(Expansion, WrongRowScaleRejected) {
  const QContext ctx(Complex{0.5, 0.0});
  BivarSeries g(2, 2);
  g(0, 2) = Complex{1.0, 0.0};
  g(2, 0) = Complex{5.0, 0.0};
  EXPECT_THROW(qcalc::expand_in_hahn(g, {0.3, 0.0}, ctx.q()), qcalc::Error);
}

TEST(Expansion, EmptyGridIsZeroExpansion) {
  EXPECT_TRUE(qcalc::expand_in_hahn(BivarSeries{}, {0.2, 0.0}, {0.5, 0.0}).lambdas.empty());
}

TEST(GridJson, FlatAndObjectFormsAgree) {
  const BivarSeries flat = qcalc::grid_from_json(read_json("xy.json"));
  const BivarSeries obj = qcalc::grid_from_json(qcalc::grid_to_json(flat));
  EXPECT_EQ(flat.data(), obj.data());
  EXPECT_EQ(flat.max_m(), 2);
  EXPECT_THROW(qcalc::grid_from_json(qcalc::Json::parse("[1, 1, [0, 0]]")), qcalc::Error);
}
