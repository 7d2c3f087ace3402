#include <gtest/gtest.h>

#include <set>

#include "qcalc/qcalc.hpp"
#include "test_support.hpp"

using qcalc::Complex;
using qcalc::IdentityId;
using qcalc::QContext;

namespace {

const QContext& default_ctx() {
  static const QContext ctx(Complex{0.5, 0.0});
  return ctx;
}

std::vector<IdentityId> all_ids() {
  std::vector<IdentityId> ids;
  for (const auto& d : qcalc::registry()) ids.push_back(d.id);
  return ids;
}

}  // namespace

TEST(Registry, HasAllEntriesInOrder) {
  const auto& reg = qcalc::registry();
  ASSERT_EQ(reg.size(), 22u);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    EXPECT_EQ(static_cast<std::size_t>(reg[i].id), i);
    EXPECT_EQ(qcalc::parse_identity(qcalc::to_string(reg[i].id)), reg[i].id);
  }
  EXPECT_FALSE(qcalc::parse_identity("NO_SUCH_ID").has_value());
}

TEST(Registry, SidesUseDifferentRoutes) {
  for (const auto& d : qcalc::registry()) {
    EXPECT_FALSE(d.lhs_route.empty());
    EXPECT_NE(d.lhs_route, d.rhs_route) << qcalc::to_string(d.id);
  }
}

TEST(Registry, ToleranceTiers) {
  using qcalc::identity_def;
  EXPECT_EQ(identity_def(IdentityId::GEN_FUNC).tolerance, 1e-8);
  EXPECT_EQ(identity_def(IdentityId::ANDREWS_ASKEY).tolerance, 1e-7);
  EXPECT_EQ(identity_def(IdentityId::QINT_DOUBLE).tolerance, 1e-6);
  EXPECT_EQ(identity_def(IdentityId::CURIOUS).tolerance, 1e-6);
  qcalc::ParamSample s;
  s.set("k", Complex{1.0, 0.0});
  EXPECT_EQ(identity_def(IdentityId::MULTILINEAR).tolerance_at(s), 1e-8);
  s.set("k", Complex{2.0, 0.0});
  EXPECT_EQ(identity_def(IdentityId::MULTILINEAR).tolerance_at(s), 1e-6);
}

TEST(Sampling, DeterministicPerSeed) {
  for (IdentityId id : all_ids()) {
    const auto a = qcalc::sample_params(id, 99);
    const auto b = qcalc::sample_params(id, 99);
    EXPECT_EQ(a, b) << qcalc::to_string(id);
  }
  EXPECT_NE(qcalc::sample_params(IdentityId::MEHLER, 1), qcalc::sample_params(IdentityId::MEHLER, 2));
}

TEST(Sampling, QInDefaultRangeAndParamsInDisk) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = qcalc::sample_params(IdentityId::CURIOUS, seed, 0.5);
    EXPECT_GE(s.q.real(), 0.1);
    EXPECT_LE(s.q.real(), 0.7);
    EXPECT_EQ(s.q.imag(), 0.0);
    double m = 0.0;
    for (const char* n : {"a", "b", "c", "d", "u", "v"}) m = std::max(m, std::abs(s.get(n)));
    EXPECT_LT(m, 0.5);
  }
}

TEST(Sampling, CountGatesIndexedParameters) {
  qcalc::SamplingOptions opts;
  opts.fixed["k"] = Complex{1.0, 0.0};
  const auto s = qcalc::sample_params(IdentityId::MULTILINEAR, 5, opts);
  EXPECT_TRUE(s.has("alpha1"));
  EXPECT_FALSE(s.has("alpha2"));
  opts.fixed["k"] = Complex{2.0, 0.0};
  EXPECT_TRUE(qcalc::sample_params(IdentityId::MULTILINEAR, 5, opts).has("y2"));
}

TEST(Sampling, FixedValuesAndUnknownNames) {
  qcalc::SamplingOptions opts;
  opts.q = Complex{0.3, 0.0};
  opts.fixed["b"] = Complex{0.25, 0.0};
  const auto s = qcalc::sample_params(IdentityId::ANDREWS_ASKEY, 3, opts);
  EXPECT_EQ(s.q, Complex(0.3, 0.0));
  EXPECT_EQ(s.get("b"), Complex(0.25, 0.0));
  opts.fixed["zeta"] = Complex{0.1, 0.0};
  EXPECT_THROW(qcalc::sample_params(IdentityId::ANDREWS_ASKEY, 3, opts), qcalc::DomainError);
}

TEST(Sampling, ExhaustedUnderInfeasibleConstraints) {
  // every parameter within 0.01 of zero, but a and b must stay 0.5 apart
  EXPECT_THROW(qcalc::sample_params(IdentityId::HK_PARTIAL_FRACTION, 1, 0.01, 0.5), qcalc::SamplingExhausted);
  qcalc::SamplingOptions opts;
  opts.radius = 0.01;
  opts.pole_margin = 0.5;
  const auto reports = qcalc::sweep(IdentityId::HK_PARTIAL_FRACTION, 2, 1, default_ctx(), opts);
  ASSERT_EQ(reports.size(), 2u);
  for (const auto& r : reports) {
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.reason.rfind("SamplingExhausted:", 0), 0u) << r.reason;
  }
}

TEST(Verify, ForcedPoleIsReportedNotThrown) {
  qcalc::ParamSample s;
  s.id = IdentityId::ANDREWS_ASKEY;
  s.q = Complex{0.5, 0.0};
  s.set("b", Complex{2.0, 0.0});
  s.set("c", Complex{0.1, 0.0});
  s.set("u", Complex{0.5, 0.0});
  s.set("v", Complex{0.3, 0.0});
  const auto r = qcalc::verify_identity(IdentityId::ANDREWS_ASKEY, s, default_ctx());
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.reason.rfind("PoleParameter", 0), 0u) << r.reason;
}

TEST(Verify, QpdeHahnDegreeFive) {
  qcalc::SamplingOptions opts;
  opts.fixed["n"] = Complex{5.0, 0.0};
  const auto s = qcalc::sample_params(IdentityId::QPDE_HAHN, 17, opts);
  const auto r = qcalc::verify_identity(IdentityId::QPDE_HAHN, s, default_ctx());
  EXPECT_TRUE(r.pass) << r.reason;
  EXPECT_LE(r.abs_resid, 1e-12);
}

TEST(Verify, GenFuncPassesAtRandomPoints) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto r = qcalc::verify_identity(IdentityId::GEN_FUNC, qcalc::sample_params(IdentityId::GEN_FUNC, seed),
                                          default_ctx());
    EXPECT_TRUE(r.pass) << r.reason;
    EXPECT_LE(r.rel_resid, 1e-8);
  }
}

TEST(Verify, MutatedIdentityIsCaught) {
  // A right-hand side taken at a slightly different t must not match.
  const auto& def = qcalc::identity_def(IdentityId::GEN_FUNC);
  const auto s = qcalc::sample_params(IdentityId::GEN_FUNC, 4);
  const QContext ctx = default_ctx().with_q(s.q);
  const auto sides = def.evaluate(s, ctx);
  auto mutated = s;
  mutated.set("t", s.get("t") * 1.001);
  const auto shifted = def.evaluate(mutated, ctx);
  EXPECT_GT(qtest::rel_err(sides.lhs.value, shifted.rhs.value), def.tolerance);
  EXPECT_LE(qtest::rel_err(sides.lhs.value, sides.rhs.value), def.tolerance);
}

TEST(Verify, ToleranceOverrideIsApplied) {
  const auto s = qcalc::sample_params(IdentityId::ANDREWS_ASKEY, 8);
  const auto strict = qcalc::verify_identity(IdentityId::ANDREWS_ASKEY, s, default_ctx(), 1e-30);
  EXPECT_EQ(strict.tolerance, 1e-30);
  if (strict.rel_resid > 0.0) {
    EXPECT_FALSE(strict.pass);
  }
}

TEST(Verify, MultilinearDegeneratesToLauricella) {
  // k = 1: sum_n (a)_n/(c)_n Phi_n(x, y)/(q)_n is the two-variable q-Lauricella
  // sum with b = (alpha, 0) and y = (x, y).
  qcalc::SamplingOptions opts;
  opts.fixed["k"] = Complex{1.0, 0.0};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = qcalc::sample_params(IdentityId::MULTILINEAR, seed, opts);
    const QContext ctx = default_ctx().with_q(s.q);
    const auto sides = qcalc::identity_def(IdentityId::MULTILINEAR).evaluate(s, ctx);
    const auto lau =
        qcalc::qlauricella(s.get("a"), s.get("c"), {s.get("alpha1"), Complex{0.0, 0.0}}, {s.get("x1"), s.get("y1")}, ctx);
    EXPECT_LT(qtest::rel_err(sides.lhs.value, lau.value), 1e-8);
    EXPECT_LT(qtest::rel_err(sides.rhs.value, lau.value), 1e-8);
  }
}

TEST(Sweep, EmptyAndDeterministic) {
  EXPECT_TRUE(qcalc::sweep(IdentityId::MEHLER, 0, 1, default_ctx()).empty());
  const auto a = qcalc::sweep(IdentityId::MEHLER, 5, 42, default_ctx());
  const auto b = qcalc::sweep(IdentityId::MEHLER, 5, 42, default_ctx());
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].point_index, static_cast<long>(i));
    EXPECT_EQ(a[i].params, b[i].params);
    EXPECT_EQ(a[i].lhs, b[i].lhs);
    EXPECT_EQ(a[i].rhs, b[i].rhs);
    EXPECT_TRUE(a[i].pass) << a[i].reason;
  }
}

TEST(Sweep, PointsReproducibleIndividually) {
  const auto reports = qcalc::sweep(IdentityId::QGAUSS_STEP, 3, 9, default_ctx());
  const auto again = qcalc::verify_identity(
      IdentityId::QGAUSS_STEP, qcalc::sample_params(IdentityId::QGAUSS_STEP, qcalc::point_seed(9, IdentityId::QGAUSS_STEP, 2)),
      default_ctx());
  EXPECT_EQ(reports[2].lhs, again.lhs);
}

TEST(Sweep, CheapIdentitiesPassAtDefaults) {
  for (IdentityId id : {IdentityId::QPDE_HAHN, IdentityId::EXPANSION_ROUNDTRIP, IdentityId::GEN_FUNC,
                        IdentityId::QGAUSS_STEP, IdentityId::HK_PARTIAL_FRACTION, IdentityId::ANDREWS_ASKEY,
                        IdentityId::MOMENT_W, IdentityId::AL_SALAM_VERMA, IdentityId::Q_LAURICELLA}) {
    for (const auto& r : qcalc::sweep(id, 10, 1, default_ctx())) EXPECT_TRUE(r.pass) << qcalc::to_string(id) << ": " << r.reason;
  }
}

TEST(Sweep, EveryIdentityPassesTwentyFivePoints) {
  for (IdentityId id : all_ids())
    for (const auto& r : qcalc::sweep(id, 25, 2, default_ctx()))
      EXPECT_TRUE(r.pass) << qcalc::to_string(id) << " #" << r.point_index << ": " << r.reason;
}

TEST(ReportJson, ExactFieldSet) {
  const auto r = qcalc::sweep(IdentityId::GEN_FUNC, 1, 3, default_ctx()).front();
  const auto j = qcalc::report_to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"id", "seed", "point_index", "params", "q", "lhs", "rhs", "abs_resid",
                                            "rel_resid", "pass", "reason"}));
  EXPECT_EQ(j["id"], "GEN_FUNC");
  EXPECT_EQ(j["params"]["t"].size(), 2u);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(ReportJson, NonFiniteValuesBecomeNull) {
  qcalc::IdentityReport r;
  r.lhs = Complex{std::nan(""), 0.0};
  r.rel_resid = std::nan("");
  const std::string text = qcalc::dump_json(qcalc::report_to_json(r));
  EXPECT_NE(text.find("\"rel_resid\":null"), std::string::npos) << text;
}
