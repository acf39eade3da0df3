// Command-line front end: family inspection, the four-step pipeline,
// connection/curvature/distance/flow evaluation, composition laws, algebra
// checks, and the verification suite.
//
// Exit codes: 0 pass, 1 check failure, 2 usage/config error, 3 solver failure.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "ghs/pipeline.hpp"
#include "ghs/symmetry.hpp"

using namespace ghs;

namespace {

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad number in list: " + item);
    }
  }
  return out;
}

VecN<double> parse_vec(const std::string& s, int n) {
  std::vector<double> v = parse_numbers(s);
  if (static_cast<int>(v.size()) != n)
    throw ConfigError("expected " + std::to_string(n) + " components, got " +
                      std::to_string(v.size()) + " in \"" + s + "\"");
  VecN<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = v[static_cast<size_t>(i)];
  return out;
}

// "x0,x1;k0,k1"
PhasePoint parse_point(const std::string& s, int n) {
  size_t semi = s.find(';');
  if (semi == std::string::npos) throw ConfigError("point must be \"x...;k...\": " + s);
  return PhasePoint(parse_vec(s.substr(0, semi), n), parse_vec(s.substr(semi + 1), n));
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
}

std::string tensor_json(const TensorValue& t, const char* name) {
  nlohmann::ordered_json j;
  j["tensor"] = name;
  j["shape"] = t.shape_string();
  j["components"] = t.components();
  return j.dump(2) + "\n";
}

std::string tensor_csv(const TensorValue& t, const char* name) {
  std::ostringstream os;
  os << name << ",index,value\n";
  const int n = t.dim(), rank = t.rank();
  const auto& c = t.components();
  char buf[40];
  for (size_t f = 0; f < c.size(); ++f) {
    size_t rem = f;
    std::string ix(static_cast<size_t>(rank), '0');
    for (int d = rank - 1; d >= 0; --d) {
      ix[static_cast<size_t>(d)] = static_cast<char>('0' + static_cast<int>(rem % static_cast<size_t>(n)));
      rem /= static_cast<size_t>(n);
    }
    std::snprintf(buf, sizeof buf, "%.17g", c[f]);
    os << name << "," << ix << "," << buf << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical engine for generalized Hamilton spaces on the cotangent bundle"};
  app.require_subcommand(1);

  std::string config_path, point_str, target_str, p0_str, fmt = "csv", output, json_path;
  std::string family_str, law, kind, suite = "all";
  std::string pstr, qstr, rstr;
  double tau = 1.0, lambda = 1.0, tolerance = 0;
  uint64_t seed = 42;
  bool massless = true;
  double mass = 1.0;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", config_path, "run configuration file");
    if (needs_config) opt->required();
    cmd->add_option("--format", fmt, "output format: csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", output, "write the result to this path (default stdout)");
    cmd->add_option("--tolerance", tolerance, "override the default tolerance where applicable");
  };

  auto* cmd_describe = app.add_subcommand("describe", "describe a metric family");
  cmd_describe->add_option("family", family_str, "family id")->required();

  auto* cmd_pipeline = app.add_subcommand("pipeline", "run the four-step construction");
  add_common(cmd_pipeline, true);

  auto* cmd_conn = app.add_subcommand("connections", "N, H, C blocks at a phase-space point");
  add_common(cmd_conn, true);
  cmd_conn->add_option("--point", point_str, "phase-space point \"x...;k...\"")->required();

  auto* cmd_dist = app.add_subcommand("distance", "squared momentum distance to a target");
  add_common(cmd_dist, true);
  cmd_dist->add_option("--target", target_str, "momentum target \"k...\"")->required();
  cmd_dist->add_option("--x", point_str, "base point \"x...\" (default 0)");

  auto* cmd_flow = app.add_subcommand("flow", "integrate the Hamilton flow");
  add_common(cmd_flow, true);
  cmd_flow->add_option("--p0", p0_str, "initial phase-space point \"x...;k...\"")->required();
  cmd_flow->add_option("--tau", tau, "flow time")->required();
  cmd_flow->add_flag("--massless,!--massive", massless, "massless (N=1/2) or massive (N=1/(2m))");
  cmd_flow->add_option("--mass", mass, "particle mass for the massive multiplier");

  auto* cmd_curv = app.add_subcommand("curvature", "curvature tensors at a point");
  add_common(cmd_curv, true);
  cmd_curv->add_option("--point", point_str, "phase-space point \"x...;k...\"")->required();

  auto* cmd_compose = app.add_subcommand("compose", "deformed momentum composition");
  cmd_compose->add_option("--law", law, "snyder|kappa")->required()->check(CLI::IsMember({"snyder", "kappa"}));
  cmd_compose->add_option("--p", pstr, "left momentum \"k...\"")->required();
  cmd_compose->add_option("--q", qstr, "right momentum \"k...\"")->required();
  cmd_compose->add_option("--r", rstr, "optional third momentum for the associativity defect");
  cmd_compose->add_option("--lambda", lambda, "deformation scale (flat metric)");
  cmd_compose->add_option("--format", fmt, "output format: csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd_compose->add_option("--output", output, "write the result to this path");

  auto* cmd_algebra = app.add_subcommand("algebra", "bracket-closure residuals");
  cmd_algebra->add_option("--kind", kind, "snyder|kappa|gr")->required()->check(CLI::IsMember({"snyder", "kappa", "gr"}));
  cmd_algebra->add_option("--seed", seed, "sample seed");
  cmd_algebra->add_option("--format", fmt, "output format: csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd_algebra->add_option("--output", output, "write the result to this path");
  cmd_algebra->add_option("--tolerance", tolerance, "closure tolerance (default 1e-8)");

  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->add_option("--suite", suite, "suite name (see --list)");
  cmd_verify->add_option("--seed", seed, "sample seed");
  cmd_verify->add_option("--tolerance", tolerance,
                         "blanket tolerance for checks without a config override");
  cmd_verify->add_option("--json", json_path, "write the JSON report to this path");
  cmd_verify->add_option("--config", config_path, "run configuration file");
  cmd_verify->add_option("--format", fmt, "stdout format: csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd_verify->add_option("--output", output, "write the report to this path");
  bool list_suites = false;
  cmd_verify->add_flag("--list", list_suites, "list known suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_describe->parsed()) {
      FamilySpec spec;
      spec.id = family_from_string(family_str);
      std::cout << describe(spec);
      std::cout << "configure with metric.family/n/lambda/alpha/branch/f1..f4/nvec\n";
      return 0;
    }

    if (cmd_pipeline->parsed()) {
      RunConfig cfg = parse_config_file(config_path);
      PipelineResult res = run_pipeline(cfg);
      for (const StepRecord& s : res.steps)
        std::cout << "step " << s.index << " (" << s.name << "): " << s.status
                  << "  residual=" << s.residual << "\n";
      std::cout << "hamiltonian mode: " << res.hamiltonian_mode << "\n";
      if (!output.empty()) {
        if (fmt == "json") {
          write_output(output, pipeline_json(res));
        } else {
          for (int step = 1; step <= 4; ++step)
            write_output(output + ".step" + std::to_string(step) + ".csv", pipeline_csv(res, step));
        }
      }
      if (!res.ok) return 3;
      std::cout << (res.ok ? "pipeline ok\n" : "pipeline failed\n");
      return 0;
    }

    if (cmd_conn->parsed()) {
      RunConfig cfg = parse_config_file(config_path);
      MetricFamily fam = build_family(cfg.metric);
      PhasePoint p = parse_point(point_str, fam.spec.n);
      ConnectionContext ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
      ConnectionSet cs = connections_at(ctx, p);
      std::cout << "asymmetry diagnostics: N " << cs.asym_n << ", H " << cs.asym_h << ", C "
                << cs.asym_c << "\n";
      if (fmt == "json") {
        nlohmann::ordered_json j;
        j["N"] = cs.N.components();
        j["H"] = cs.H.components();
        j["C"] = cs.C.components();
        j["asymmetry"] = {{"N", cs.asym_n}, {"H", cs.asym_h}, {"C", cs.asym_c}};
        write_output(output, j.dump(2) + "\n");
      } else {
        write_output(output, tensor_csv(cs.N, "N") + tensor_csv(cs.H, "H") + tensor_csv(cs.C, "C"));
      }
      return 0;
    }

    if (cmd_dist->parsed()) {
      RunConfig cfg = parse_config_file(config_path);
      MetricFamily fam = build_family(cfg.metric);
      VecN<double> k_target = parse_vec(target_str, fam.spec.n);
      VecN<double> x0(fam.spec.n);
      if (!point_str.empty()) x0 = parse_vec(point_str, fam.spec.n);
      ShootOptions so;
      if (tolerance > 0) so.tol = tolerance;
      ShootResult sr = shoot_momentum_distance(fam.metric, x0, k_target, so);
      nlohmann::ordered_json j;
      j["d2"] = sr.d2;
      j["iterations"] = sr.iterations;
      j["endpoint_residual"] = sr.residual;
      if (fam.distance_hamiltonian)
        j["closed_form"] = fam.distance_hamiltonian->value(PhasePoint(x0, k_target));
      char buf[40];
      std::snprintf(buf, sizeof buf, "d2,%.17g\n", sr.d2);
      write_output(output, fmt == "json" ? j.dump(2) + "\n" : std::string(buf));
      return 0;
    }

    if (cmd_flow->parsed()) {
      RunConfig cfg = parse_config_file(config_path);
      MetricFamily fam = build_family(cfg.metric);
      PhasePoint p0 = parse_point(p0_str, fam.spec.n);
      FlowConfig fc;
      fc.lagrange_multiplier = massless ? 0.5 : 0.5 / mass;
      if (tolerance > 0) fc.ode.abs_tol = fc.ode.rel_tol = tolerance;
      ScalarField H = fam.distance_hamiltonian ? *fam.distance_hamiltonian
                                               : bvp_hamiltonian(fam.metric);
      FlowResult fr = integrate_hamilton_flow(H, fc, p0, tau);
      std::cout << "samples: " << fr.samples.size() << "  H drift: " << fr.h_drift << "\n";
      std::ostringstream os;
      char buf[40];
      os << "tau";
      for (int i = 0; i < fam.spec.n; ++i) os << ",x" << i;
      for (int i = 0; i < fam.spec.n; ++i) os << ",k" << i;
      os << ",H\n";
      for (const FlowSample& s : fr.samples) {
        std::snprintf(buf, sizeof buf, "%.17g", s.tau);
        os << buf;
        for (int i = 0; i < fam.spec.n; ++i) {
          std::snprintf(buf, sizeof buf, ",%.17g", s.p.x[i]);
          os << buf;
        }
        for (int i = 0; i < fam.spec.n; ++i) {
          std::snprintf(buf, sizeof buf, ",%.17g", s.p.k[i]);
          os << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g", s.h_value);
        os << buf << "\n";
      }
      write_output(output, os.str());
      return 0;
    }

    if (cmd_curv->parsed()) {
      RunConfig cfg = parse_config_file(config_path);
      MetricFamily fam = build_family(cfg.metric);
      PhasePoint p = parse_point(point_str, fam.spec.n);
      ConnectionContext ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
      CurvatureReport rep = curvature_report(ctx, p);
      MaxSymResult ms = maximal_symmetry_residual(rep.S, fam.metric.upper_at(p),
                                                  fam.metric.lower_at(p), fam.spec.lambda);
      std::cout << "max |R_d| " << rep.R_d.max_abs() << "  |R_h| " << rep.R_h.max_abs() << "  |S| "
                << rep.S.max_abs() << "  |P| " << rep.P_big.max_abs() << "  |P_small| "
                << rep.P_small.max_abs() << "\n";
      std::cout << "momentum curvature scalar: " << ms.scalar << " (dS-form residual "
                << ms.residual << ")\n";
      if (fmt == "json") {
        nlohmann::ordered_json j;
        j["R_d"] = rep.R_d.components();
        j["R_h"] = rep.R_h.components();
        j["S"] = rep.S.components();
        j["P_big"] = rep.P_big.components();
        j["P_small"] = rep.P_small.components();
        j["maxsym"] = {{"residual", ms.residual}, {"scalar", ms.scalar}};
        write_output(output, j.dump(2) + "\n");
      } else if (!output.empty()) {
        write_output(output, tensor_csv(rep.R_d, "R_d") + tensor_csv(rep.R_h, "R_h") +
                                 tensor_csv(rep.S, "S") + tensor_csv(rep.P_big, "P_big") +
                                 tensor_csv(rep.P_small, "P_small"));
      }
      return 0;
    }

    if (cmd_compose->parsed()) {
      std::vector<double> pv = parse_numbers(pstr);
      const int n = static_cast<int>(pv.size());
      if (n != 2 && n != 4) throw ConfigError("momenta must have 2 or 4 components");
      VecN<double> p = parse_vec(pstr, n), q = parse_vec(qstr, n);
      MatN<double> eta = MatN<double>::identity(n);
      for (int i = 1; i < n; ++i) eta(i, i) = -1;
      VecN<double> z(n);
      z[0] = 1;
      auto compose = [&](const VecN<double>& a, const VecN<double>& b) {
        return law == "snyder" ? snyder_compose(a, b, eta, lambda)
                               : kappa_compose(a, b, eta, z, lambda);
      };
      VecN<double> c = compose(p, q);
      nlohmann::ordered_json j;
      j["law"] = law;
      j["lambda"] = lambda;
      std::vector<double> cv(c.c.begin(), c.c.begin() + n);
      j["p_plus_q"] = cv;
      if (!rstr.empty()) {
        VecN<double> w = parse_vec(rstr, n);
        VecN<double> lhs = compose(compose(p, q), w);
        VecN<double> rhs = compose(p, compose(q, w));
        j["associativity_defect"] = max_abs(lhs - rhs);
      }
      if (fmt == "json") {
        write_output(output, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        char buf[40];
        for (int i = 0; i < n; ++i) {
          std::snprintf(buf, sizeof buf, "%.17g", c[i]);
          os << (i ? "," : "") << buf;
        }
        os << "\n";
        write_output(output, os.str());
      }
      return 0;
    }

    if (cmd_algebra->parsed()) {
      RunConfig cfg;
      cfg.seed = seed;
      const double tol = tolerance > 0 ? tolerance : 1e-8;
      VerificationReport rep;
      if (kind == "gr") {
        rep = run_verification("casimir", cfg);
      } else {
        rep = run_verification(kind == "snyder" ? "algebra.snyder" : "algebra.kappa", cfg);
      }
      bool ok = true;
      for (const CheckResult& c : rep.checks) {
        std::cout << c.id << ": max residual " << c.max_residual << " (tolerance "
                  << (tolerance > 0 ? tol : c.tolerance) << ")\n";
        ok = ok && c.max_residual < (tolerance > 0 ? tol : c.tolerance);
      }
      if (!output.empty())
        write_output(output, fmt == "json" ? report_json(rep) : report_csv(rep));
      return ok ? 0 : 1;
    }

    if (cmd_verify->parsed()) {
      if (list_suites) {
        for (const std::string& s : known_suites()) std::cout << s << "\n";
        return 0;
      }
      RunConfig cfg;
      if (!config_path.empty()) cfg = parse_config_file(config_path);
      cfg.seed = seed;
      if (tolerance > 0) cfg.blanket_tolerance = tolerance;
      if (!cmd_verify->get_option("--suite")->empty()) cfg.suite = suite;
      VerificationReport rep = run_verification(cfg.suite, cfg);
      for (const CheckResult& c : rep.checks) {
        std::cout << (c.ok ? "PASS " : "FAIL ") << c.id << "  residual " << c.max_residual
                  << (c.negative_control ? " > " : " < ") << c.tolerance << "  [" << c.identity
                  << "]\n";
      }
      std::cout << (rep.ok ? "suite ok" : "suite FAILED") << " (" << rep.checks.size()
                << " checks)\n";
      if (!json_path.empty()) write_output(json_path, report_json(rep));
      if (!output.empty())
        write_output(output, fmt == "json" ? report_json(rep) : report_csv(rep));
      return rep.ok ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NoGeodesicError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateMetricError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
