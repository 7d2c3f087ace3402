// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcalc/cli.hpp"
#include "qcalc/qcalc.hpp"

namespace {

using qcalc::Complex;
using qcalc::IdentityId;
using qcalc::QContext;

constexpr double qpde_abs_tol = 1e-12;
constexpr double roundtrip_tol = 1e-10;
constexpr double injected_residual = 1e-6;
constexpr double cross_oracle_tol = 1e-10;
constexpr double aw_zero_tol = 1e-10;
constexpr std::uint64_t sweep_seed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<Outcome()> check;
};

class Rng {
public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(g_() >> 11) * 0x1.0p-53); }
  Complex disk(double r) { return std::polar(r * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi)); }
  long integer(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
  std::mt19937_64 g_;
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Runs sweeps and folds them into one outcome; `worst` tracks the largest
// relative residual seen among passing points.
struct SweepTally {
  long points = 0, passed = 0;
  double worst = 0.0;
  std::string first_failure;

  void run(IdentityId id, long n, const qcalc::SamplingOptions& opts, std::optional<double> tol = std::nullopt,
           const std::string& label = "") {
    static const QContext ctx(Complex{0.5, 0.0});
    for (const auto& r : qcalc::sweep(id, n, sweep_seed, ctx, opts, tol)) {
      ++points;
      if (r.pass) {
        ++passed;
        worst = std::max(worst, r.rel_resid);
      } else if (first_failure.empty()) {
        first_failure = std::string(qcalc::to_string(id)) + label + " point " + std::to_string(r.point_index) + ": " +
                        r.reason;
      }
    }
  }

  void run(IdentityId id, long n, std::optional<double> tol = std::nullopt) { run(id, n, {}, tol); }

  Outcome outcome() const {
    Outcome o;
    o.pass = passed == points;
    o.detail = std::to_string(passed) + "/" + std::to_string(points) + " points, worst rel " + fmt(worst);
    if (!first_failure.empty()) o.detail += "; first failure " + first_failure;
    return o;
  }
};

qcalc::SamplingOptions pinned(std::initializer_list<std::pair<const char*, double>> values) {
  qcalc::SamplingOptions o;
  for (const auto& [k, v] : values) o.fixed[k] = Complex{v, 0.0};
  return o;
}

Outcome qpde_exact() {
  double worst = 0.0;
  for (Complex alpha : {Complex{0.0, 0.0}, Complex{0.3, 0.0}, Complex{0.7, 0.1}})
    for (double qv : {0.2, 0.5, 0.8}) {
      const QContext ctx(Complex{qv, 0.0});
      for (long n = 0; n <= 12; ++n)
        worst = std::max(worst, qcalc::qpde_residual_series(qcalc::hahn_hom_grid(n, alpha, ctx), alpha, ctx.q()).residual);
    }
  return {worst <= qpde_abs_tol, "117 grids, max abs residual " + fmt(worst)};
}

Outcome expansion_roundtrip() {
  Rng rng(7001);
  constexpr long order = 16;
  double worst = 0.0;
  int rejected = 0, perturbed = 0;
  std::string problem;
  for (int i = 0; i < 50; ++i) {
    const QContext ctx(Complex{rng.uniform(0.1, 0.9), 0.0});
    const Complex alpha = rng.disk(1.0);
    qcalc::HahnExpansion e{alpha, {}};
    for (long n = 0; n <= order; ++n) e.lambdas.push_back(rng.disk(std::pow(0.5, static_cast<double>(n))));
    const qcalc::BivarSeries grid = qcalc::synthesize_grid(e, ctx);
    try {
      const auto back = qcalc::expand_in_hahn(grid, alpha, ctx.q());
      for (std::size_t n = 0; n < e.lambdas.size(); ++n)
        worst = std::max(worst, std::abs(back.lambdas.at(n) - e.lambdas[n]));
    } catch (const qcalc::Error& err) {
      worst = std::numeric_limits<double>::infinity();
      if (problem.empty()) problem = std::string("roundtrip threw: ") + err.what();
    }
  }
  for (int i = 0; i < 50; ++i) {
    const QContext ctx(Complex{rng.uniform(0.1, 0.9), 0.0});
    const Complex alpha = rng.disk(1.0);
    qcalc::HahnExpansion e{alpha, {}};
    for (long n = 0; n <= order; ++n) e.lambdas.push_back(rng.disk(std::pow(0.5, static_cast<double>(n))));
    qcalc::BivarSeries grid = qcalc::synthesize_grid(e, ctx);
    qcalc::BivarSeries bumped = grid;
    double injected = 0.0;
    // Redraw the bump until the residual it injects is at least the threshold.
    while (injected < injected_residual) {
      bumped = grid;
      const long m = rng.integer(1, order / 2), n = rng.integer(0, order / 2 - 1);
      bumped(m, n) += rng.disk(1e-4) + std::polar(1e-5, rng.uniform(0.0, 6.3));
      injected = qcalc::qpde_residual_series(bumped, alpha, ctx.q(), order).residual;
    }
    ++perturbed;
    try {
      (void)qcalc::expand_in_hahn(bumped, alpha, ctx.q());
      if (problem.empty()) problem = "perturbed grid accepted (injected " + fmt(injected) + ")";
    } catch (const qcalc::NotInKernel&) {
      ++rejected;
    } catch (const qcalc::Error& err) {
      if (problem.empty()) problem = std::string("perturbed grid raised the wrong error: ") + err.what();
    }
  }
  Outcome o;
  o.pass = worst <= roundtrip_tol && rejected == perturbed;
  o.detail = "50 roundtrips max |dlambda| " + fmt(worst) + ", " + std::to_string(rejected) + "/" +
             std::to_string(perturbed) + " perturbed grids rejected";
  if (!problem.empty()) o.detail += "; " + problem;
  return o;
}

Outcome series_products() {
  SweepTally t;
  for (IdentityId id : {IdentityId::GEN_FUNC, IdentityId::MEHLER, IdentityId::QGAUSS_STEP,
                        IdentityId::HK_PARTIAL_FRACTION})
    t.run(id, 25, 1e-8);
  t.run(IdentityId::Q_LAURICELLA, 25, pinned({{"k", 2}}), 1e-8, " k=2");
  return t.outcome();
}

Outcome jackson_integrals() {
  SweepTally t;
  for (IdentityId id : {IdentityId::ANDREWS_ASKEY, IdentityId::MOMENT_W, IdentityId::QINT_HAHN_SERIES,
                        IdentityId::QINT_3PHI2, IdentityId::AL_SALAM_VERMA})
    t.run(id, 25, 1e-7);
  t.run(IdentityId::QINT_DOUBLE, 25, 1e-6);
  return t.outcome();
}

Outcome quadrature() {
  SweepTally t;
  for (IdentityId id : {IdentityId::ASKEY_WILSON, IdentityId::ISV, IdentityId::LIU_BETA,
                        IdentityId::NASSRALLAH_RAHMAN})
    t.run(id, 25, 1e-8);
  Outcome o = t.outcome();
  double worst_zero = 0.0;
  for (double qv : {0.1, 0.3, 0.5, 0.7}) {
    const QContext ctx(Complex{qv, 0.0});
    const auto r = qcalc::askey_wilson({0, 0}, {0, 0}, {0, 0}, {0, 0}, ctx);
    const Complex closed = 2.0 * std::numbers::pi / qcalc::qpoch_inf(ctx.q(), ctx).value;
    worst_zero = std::max(worst_zero, r.converged ? rel(r.value, closed) : std::numeric_limits<double>::infinity());
  }
  o.pass = o.pass && worst_zero <= aw_zero_tol;
  o.detail += "; a=b=c=d=0 rel " + fmt(worst_zero);
  return o;
}

Outcome exchange() {
  SweepTally t;
  t.run(IdentityId::AW_QINT_EXCHANGE, 10, pinned({{"f_choice", 0}}), 1e-6, " f=1");
  t.run(IdentityId::AW_QINT_EXCHANGE, 10, pinned({{"f_choice", 1}}), 1e-6, " f=ratio");
  t.run(IdentityId::CURIOUS, 10, 1e-6);
  return t.outcome();
}

Outcome multilinear() {
  SweepTally t;
  t.run(IdentityId::MULTILINEAR, 10, pinned({{"k", 1}}), 1e-8, " k=1");
  t.run(IdentityId::MULTILINEAR, 10, pinned({{"k", 2}}), 1e-6, " k=2");
  for (IdentityId id : {IdentityId::RS_MULTISUM, IdentityId::SRIVASTAVA_JAIN})
    for (double s : {1.0, 2.0})
      for (double k : {0.0, 1.0, 3.0})
        t.run(id, 10, pinned({{"s", s}, {"k", k}}), s == 1.0 ? 1e-8 : 1e-6,
              " s=" + std::to_string(static_cast<int>(s)) + " k=" + std::to_string(static_cast<int>(k)));
  return t.outcome();
}

Outcome cross_oracles() {
  Rng rng(7002);
  double split = 0.0, kernel = 0.0, separable = 0.0;
  for (int i = 0; i < 100; ++i) {
    const QContext ctx(std::polar(rng.uniform(0.1, 0.8), rng.uniform(-0.3, 0.3)));
    const Complex a = rng.disk(1.5);
    const long n = rng.integer(0, 40);
    const Complex whole = qcalc::qpoch_inf(a, ctx).value;
    const Complex parts = qcalc::qpoch_finite(a, n, ctx) * qcalc::qpoch_inf(a * ctx.qpow(n), ctx).value;
    split = std::max(split, std::abs(whole - parts) / std::max(1.0, std::abs(whole)));
  }
  for (int i = 0; i < 100; ++i) {
    const QContext ctx(std::polar(rng.uniform(0.1, 0.8), rng.uniform(-0.3, 0.3)));
    const Complex a = rng.disk(0.95);
    const double theta = rng.uniform(0.0, std::numbers::pi);
    kernel = std::max(kernel, rel(qcalc::h_kernel(theta, a, ctx).value, qcalc::h_kernel_product(theta, a, ctx).value));
  }
  for (int i = 0; i < 100; ++i) {
    const QContext ctx(Complex{rng.uniform(0.1, 0.7), 0.0});
    const Complex x = rng.disk(0.6), y = rng.disk(0.6);
    const auto joint = qcalc::multisum(
        2,
        [&](std::span<const long> idx) {
          return std::pow(x, static_cast<double>(idx[0])) / qcalc::qpoch_finite(ctx.q(), idx[0], ctx) *
                 std::pow(y, static_cast<double>(idx[1])) / qcalc::qpoch_finite(ctx.q(), idx[1], ctx);
        },
        ctx);
    const Complex product = qcalc::phi(qcalc::PhiSpec{{{0.0, 0.0}}, {}, x}, ctx).value *
                            qcalc::phi(qcalc::PhiSpec{{{0.0, 0.0}}, {}, y}, ctx).value;
    separable = std::max(separable, joint.converged ? rel(joint.value, product) : std::numeric_limits<double>::infinity());
  }
  return {split <= cross_oracle_tol && kernel <= cross_oracle_tol && separable <= cross_oracle_tol,
          "splitting " + fmt(split) + ", h-kernel paths " + fmt(kernel) + ", separability " + fmt(separable)};
}

Outcome cli_determinism() {
  auto run = [](int& code) {
    const char* argv[] = {"qcalc", "verify", "--all", "--points", "3", "--seed", "1"};
    std::ostringstream out, err;
    code = qcalc::cli::run_cli(7, argv, out, err);
    return out.str();
  };
  int first_code = -1, second_code = -1;
  const std::string first = run(first_code);
  const std::string second = run(second_code);
  const bool same = first == second;
  return {same && first_code == 0 && second_code == 0,
          std::string(same ? "identical" : "different") + " output (" + std::to_string(first.size()) +
              " bytes), exit codes " + std::to_string(first_code) + "," + std::to_string(second_code)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"q-PDE coefficient exactness", 1.0, qpde_exact},
      {"expansion roundtrip and rejection", 5.0, expansion_roundtrip},
      {"series/product identities", 10.0, series_products},
      {"Jackson-integral identities", 30.0, jackson_integrals},
      {"quadrature identities", 60.0, quadrature},
      {"exchange identities", 120.0, exchange},
      {"multilinear identities", 60.0, multilinear},
      {"cross-oracle checks", 5.0, cross_oracles},
      {"CLI determinism", 120.0, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s  %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(),
                secs, c.time_limit_s, in_time ? "" : ", too slow");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
