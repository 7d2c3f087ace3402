#pragma once

// Command-line front end. `run_cli` is the whole program; the executable only
// forwards argv and the standard streams, which keeps it testable in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 numerical non-evaluability, 4 grid not in the q-PDE kernel.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcalc/qcalc.hpp"

namespace qcalc::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage = 2, numeric = 3, not_in_kernel = 4 };

// Accepts "re" or "re,im".
inline Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d))
      throw DomainError("cannot parse '" + text + "' as a number or re,im pair");
    return d;
  };
  if (comma == std::string::npos) return {number(text), 0.0};
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

inline std::vector<Complex> parse_complex_list(const std::vector<std::string>& items) {
  std::vector<Complex> out;
  for (const auto& s : items) out.push_back(parse_complex(s));
  return out;
}

// NAME=VALUE
inline std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
    throw DomainError("expected NAME=VALUE, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("QCALC_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env != '\0' && *end == '\0') return static_cast<std::uint64_t>(v);
  }
  return 1;
}

inline Json value_json(const SeriesValue& v) {
  return Json{{"value", to_json_pair(v.value)},
              {"err_est", v.err_est},
              {"terms_used", v.terms_used},
              {"converged", v.converged}};
}

struct Options {
  // shared numerics
  std::string q = "0.5";
  double eps = 1e-10;
  std::string output;

  // verify
  std::string id;
  bool all = false;
  long points = -1;
  std::uint64_t seed = default_seed();
  double radius = 0.5;
  double pole_margin = 0.05;
  std::string sample_q;
  std::vector<std::string> tol;
  std::vector<std::string> fix;

  // eval
  std::string kind;
  long n = 0;
  long k = 0;
  std::string n_text;
  std::string a = "0", b = "0", c = "0", d = "0", alpha = "0", x = "0", y = "0", u = "0", v = "0", z = "0";
  std::vector<std::string> num, den;
  long power = 0;

  // expand
  std::string grid_file;
  std::vector<std::string> at;
};

inline int cmd_list(std::ostream& out) {
  for (const auto& def : registry()) {
    std::ostringstream line;
    line << to_string(def.id) << "  tol=" << def.tolerance << "  points=" << def.default_points << "  "
         << def.summary;
    out << line.str() << '\n';
  }
  return ok;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<IdentityId> ids;
  if (o.all) {
    for (const auto& def : registry()) ids.push_back(def.id);
  } else {
    const auto id = parse_identity(o.id);
    if (!id) {
      err << "unknown identity id: " << o.id << '\n';
      return usage;
    }
    ids.push_back(*id);
  }

  std::map<IdentityId, double> tol_override;
  SamplingOptions sampling;
  try {
    for (const auto& t : o.tol) {
      const auto [name, value] = split_assignment(t);
      const auto id = parse_identity(name);
      if (!id) throw DomainError("unknown identity id in --tol: " + name);
      const double tol = parse_complex(value).real();
      if (!(tol > 0.0)) throw DomainError("--tol values must be positive");
      tol_override[*id] = tol;
    }
    for (const auto& f : o.fix) {
      const auto [name, value] = split_assignment(f);
      sampling.fixed[name] = parse_complex(value);
    }
    sampling.radius = o.radius;
    sampling.pole_margin = o.pole_margin;
    if (!o.sample_q.empty()) sampling.q = parse_complex(o.sample_q);
    if (!(o.radius > 0.0) || !(o.pole_margin >= 0.0)) throw DomainError("--radius must be > 0, --pole-margin >= 0");
    if (o.points == 0 || o.points < -1) throw DomainError("--points must be positive");
    if (sampling.q) (void)QContext(*sampling.q);
    // Pinned parameters must exist for every identity being swept.
    for (IdentityId id : ids)
      for (const auto& [name, value] : sampling.fixed) {
        bool known = false;
        for (const auto& p : identity_def(id).params) known = known || p.name == name;
        if (!known) throw DomainError(std::string(to_string(id)) + " has no parameter " + name);
      }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  const QContext ctx(Complex{0.5, 0.0}, o.eps);
  Json summary = Json::array();
  long total_pass = 0, total_points = 0;
  for (IdentityId id : ids) {
    const auto& def = identity_def(id);
    const long points = o.points > 0 ? o.points : def.default_points;
    std::optional<double> tol;
    if (auto it = tol_override.find(id); it != tol_override.end()) tol = it->second;
    long passed = 0;
    for (const auto& r : sweep(id, points, o.seed, ctx, sampling, tol)) {
      out << dump_json(report_to_json(r)) << '\n';
      passed += r.pass ? 1 : 0;
    }
    summary.push_back(Json{{"id", std::string(to_string(id))},
                           {"points", points},
                           {"pass", passed},
                           {"fail", points - passed}});
    total_pass += passed;
    total_points += points;
  }
  if (o.all)
    out << dump_json(Json{{"summary", summary},
                          {"total_pass", total_pass},
                          {"total_fail", total_points - total_pass},
                          {"total_points", total_points}})
        << '\n';
  return total_pass == total_points ? ok : verification_failed;
}

inline int cmd_eval(const Options& o, std::ostream& out) {
  const QContext ctx(parse_complex(o.q), o.eps);
  const Complex a = parse_complex(o.a), b = parse_complex(o.b), c = parse_complex(o.c), d = parse_complex(o.d),
                alpha = parse_complex(o.alpha), x = parse_complex(o.x), y = parse_complex(o.y),
                u = parse_complex(o.u), v = parse_complex(o.v), z = parse_complex(o.z);
  Json result{{"kind", o.kind}};
  bool converged = true;
  auto put = [&](const SeriesValue& s) {
    const Json fields = value_json(s);
    for (const auto& [key, value] : fields.items()) result[key] = value;
    converged = s.converged;
  };
  auto put_exact = [&](Complex value) { result["value"] = to_json_pair(value); };

  if (o.kind == "qpoch") {
    if (o.n_text == "inf" || o.n_text == "infinity") {
      put(qpoch_inf(a, ctx));
    } else {
      put_exact(qpoch_finite(a, std::stol(o.n_text.empty() ? "0" : o.n_text), ctx));
    }
  } else if (o.kind == "qbinom") {
    put_exact(qbinom(o.n, o.k, ctx));
  } else if (o.kind == "hahn") {
    put_exact(hahn(o.n, alpha, x, ctx));
  } else if (o.kind == "hahn_hom") {
    put_exact(hahn_hom(o.n, alpha, x, y, ctx));
  } else if (o.kind == "rs") {
    put_exact(rogers_szego(o.n, x, y, ctx));
  } else if (o.kind == "w") {
    put_exact(w_poly(o.n, a, b, u, v, ctx));
  } else if (o.kind == "phi") {
    put(phi(PhiSpec{parse_complex_list(o.num), parse_complex_list(o.den), z}, ctx));
  } else if (o.kind == "jackson") {
    PochhammerWeight w(u, v, parse_complex_list(o.num), parse_complex_list(o.den), ctx, o.power);
    w.check_poles();
    put(jackson(w, u, v, ctx));
  } else if (o.kind == "aw") {
    const ThetaIntegralResult r = askey_wilson(a, b, c, d, ctx);
    put(SeriesValue{r.value, r.err_est, r.nodes_used, r.converged});
  } else {
    throw DomainError("unknown eval kind '" + o.kind + "'");
  }
  out << dump_json(result) << '\n';
  return converged ? ok : numeric;
}

inline int cmd_expand(const Options& o, std::ostream& out, std::ostream& err) {
  BivarSeries grid;
  Complex alpha, q;
  std::optional<std::pair<Complex, Complex>> at;
  try {
    std::ifstream in(o.grid_file);
    if (!in) throw DomainError("cannot open grid file " + o.grid_file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("grid file is not valid JSON: ") + e.what());
    }
    grid = grid_from_json(j);
    alpha = parse_complex(o.alpha);
    q = parse_complex(o.q);
    (void)QContext(q);
    if (!o.at.empty()) at = std::make_pair(parse_complex(o.at[0]), parse_complex(o.at[1]));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    const HahnExpansion e = expand_in_hahn(grid, alpha, q, default_expansion_tol);
    Json lambdas = Json::array();
    for (const Complex& l : e.lambdas) lambdas.push_back(to_json_pair(l));
    Json result{{"alpha", to_json_pair(alpha)}, {"q", to_json_pair(q)}, {"lambda", std::move(lambdas)}};
    if (at) {
      const QContext ctx(q);
      result["at"] = Json::array({to_json_pair(at->first), to_json_pair(at->second)});
      result["expansion_value"] = to_json_pair(eval_expansion(e, at->first, at->second, ctx));
      result["grid_value"] = to_json_pair(grid(at->first, at->second));
    }
    out << dump_json(result) << '\n';
    return ok;
  } catch (const NotInKernel& e) {
    out << dump_json(Json{{"error", "NotInKernel"}, {"residual", e.residual()}, {"message", e.what()}}) << '\n';
    return not_in_kernel;
  } catch (const GridInconsistent& e) {
    out << dump_json(Json{{"error", "GridInconsistent"}, {"mismatch", e.mismatch()}, {"message", e.what()}})
        << '\n';
    return not_in_kernel;
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcalc: numerical q-calculus and identity verification"};
  app.require_subcommand(1);
  Options o;

  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--q", o.q, "base q as re or re,im (|q| < 1)");
    sub->add_option("--eps", o.eps, "convergence tolerance")->check(CLI::PositiveNumber);
  };

  app.add_subcommand("list", "list registered identities");

  auto* verify = app.add_subcommand("verify", "verify identities at sampled parameter points");
  verify->add_option("id", o.id, "identity id");
  verify->add_flag("--all", o.all, "sweep every registered identity");
  verify->add_option("--points", o.points, "points per identity (default: per-identity)");
  verify->add_option("--seed", o.seed, "sweep seed (default: $QCALC_SEED or 1)");
  verify->add_option("--radius", o.radius, "sampling disk radius");
  verify->add_option("--pole-margin", o.pole_margin, "minimum distance of denominator factors from zero");
  verify->add_option("--eps", o.eps, "convergence tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--q", o.sample_q, "fix q instead of sampling it");
  verify->add_option("--tol", o.tol, "tolerance override ID=VALUE (repeatable)");
  verify->add_option("--fix", o.fix, "pin a parameter NAME=VALUE (repeatable)");
  verify->add_option("--output", o.output, "write JSON lines to this file");

  auto* eval = app.add_subcommand("eval", "evaluate a primitive");
  eval->add_option("kind", o.kind, "qpoch | qbinom | hahn | hahn_hom | rs | w | phi | jackson | aw")->required();
  add_numeric(eval);
  eval->add_option("--n", o.n_text, "degree or length (qpoch accepts 'inf')");
  eval->add_option("--k", o.k, "lower index for qbinom");
  for (auto [flag, target] : std::initializer_list<std::pair<const char*, std::string*>>{
           {"--a", &o.a}, {"--b", &o.b}, {"--c", &o.c}, {"--d", &o.d}, {"--alpha", &o.alpha}, {"--x", &o.x},
           {"--y", &o.y}, {"--u", &o.u}, {"--v", &o.v}, {"--z", &o.z}})
    eval->add_option(flag, *target, "complex parameter (re or re,im)");
  eval->add_option("--num", o.num, "numerator parameter (repeatable)");
  eval->add_option("--den", o.den, "denominator parameter (repeatable)");
  eval->add_option("--power", o.power, "power of x in the jackson integrand");
  eval->add_option("--output", o.output, "write the result to this file");

  auto* expand = app.add_subcommand("expand", "expand a coefficient grid in homogeneous Hahn polynomials");
  expand->add_option("grid", o.grid_file, "grid JSON file")->required();
  expand->add_option("--alpha", o.alpha, "alpha as re or re,im")->required();
  add_numeric(expand);
  expand->add_option("--at", o.at, "also evaluate both forms at the point X Y")->expected(2);
  expand->add_option("--output", o.output, "write the result to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "error: cannot write " << o.output << '\n';
      return usage;
    }
    sink = &file;
  }

  if (app.got_subcommand("list")) return cmd_list(*sink);
  if (app.got_subcommand("verify")) {
    if (o.all == !o.id.empty()) {
      err << "error: give exactly one of an identity id or --all\n";
      return usage;
    }
    return cmd_verify(o, *sink, err);
  }
  if (app.got_subcommand("eval")) {
    try {
      if (o.kind != "qpoch" && !o.n_text.empty()) {
        o.n = std::stol(o.n_text);
      }
      return cmd_eval(o, *sink);
    } catch (const PoleParameter& e) {
      err << "PoleParameter: " << e.what() << '\n';
      return numeric;
    } catch (const NonConvergence& e) {
      err << "NonConvergence: " << e.what() << '\n';
      return numeric;
    } catch (const OverflowError& e) {
      err << "OverflowError: " << e.what() << '\n';
      return numeric;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return usage;
    } catch (const std::logic_error& e) {  // std::stol
      err << "error: malformed integer argument\n";
      return usage;
    }
  }
  return cmd_expand(o, *sink, err);
}

}  // namespace qcalc::cli
