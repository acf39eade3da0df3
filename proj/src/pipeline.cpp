#include "ghs/pipeline.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ghs {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

HamiltonianField select_hamiltonian(const MetricFamily& fam,
                                    const std::vector<PhasePoint>& probes,
                                    double closed_form_tol) {
  HamiltonianField out;
  if (fam.distance_hamiltonian) {
    double worst = 0;
    for (const PhasePoint& p : probes)
      worst = std::max(worst,
                       std::fabs(hamiltonian_residual(*fam.distance_hamiltonian, fam.metric, p)));
    if (worst < closed_form_tol) {
      out.field = *fam.distance_hamiltonian;
      out.closed_form = true;
      out.validation_residual = worst;
      return out;
    }
  }
  out.field = bvp_hamiltonian(fam.metric);
  out.closed_form = false;
  double worst = 0;
  for (const PhasePoint& p : probes)
    worst = std::max(worst, std::fabs(hamiltonian_residual(out.field, fam.metric, p)));
  out.validation_residual = worst;
  return out;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  PipelineResult res;
  MetricFamily fam = build_family(cfg.metric);
  res.family = fam.spec;
  PointSampler sampler(cfg.seed, cfg.x_box, cfg.k_box);
  for (int i = 0; i < cfg.count; ++i) res.points.push_back(sampler.sample(fam));

  // step 1: vertical affine connection directly from the metric
  try {
    for (const PhasePoint& p : res.points) res.c_samples.push_back(vertical_connection(fam.metric, p));
    res.steps.push_back({1, "vertical connection C from the metric", "ok", 0});
  } catch (const Error& e) {
    res.steps.push_back({1, "vertical connection C from the metric", e.what(), 0});
    return res;
  }

  // step 2: squared momentum distance -> Hamiltonian
  ScalarField H;
  try {
    HamiltonianField hf = select_hamiltonian(fam, res.points);
    H = hf.field;
    res.hamiltonian_mode = hf.closed_form ? "closed-form" : "bvp-numeric";
    res.casimir_residual = hf.validation_residual;
    for (const PhasePoint& p : res.points) res.h_samples.push_back(H.value(p));
    res.steps.push_back({2, "squared momentum distance (" + res.hamiltonian_mode + ")", "ok",
                         res.casimir_residual});
  } catch (const Error& e) {
    res.steps.push_back({2, "squared momentum distance", e.what(), 0});
    return res;
  }

  // step 3: nonlinear connection from the (autoparallel) Hamiltonian
  ConnectionContext ctx;
  try {
    ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
    double worst = 0;
    for (const PhasePoint& p : res.points) {
      res.n_samples.push_back(nonlinear_connection(fam.seed_hamiltonian, p));
      worst = std::max(worst,
                       autoparallel_residual(H, ctx.N, p).max_abs());
    }
    res.autoparallel_residual = worst;
    res.steps.push_back({3, "nonlinear connection N from the Hamiltonian", "ok", worst});
  } catch (const Error& e) {
    res.steps.push_back({3, "nonlinear connection N from the Hamiltonian", e.what(), 0});
    return res;
  }

  // step 4: horizontal connection, dbar N route vs metrical route
  try {
    double worst = 0;
    for (const PhasePoint& p : res.points) {
      TensorValue hn = horizontal_connection_from_N(ctx.N, p);
      TensorValue hm = horizontal_connection_metrical(fam.metric, ctx.N, p);
      for (size_t i = 0; i < hn.components().size(); ++i)
        worst = std::max(worst, std::fabs(hn.components()[i] - hm.components()[i]));
      res.hconn_samples.push_back(std::move(hn));
    }
    res.tworoute_residual = worst;
    res.steps.push_back({4, "horizontal connection H = dbar N (vs metrical route)", "ok", worst});
  } catch (const Error& e) {
    res.steps.push_back({4, "horizontal connection H = dbar N", e.what(), 0});
    return res;
  }

  res.ok = true;
  return res;
}

std::string pipeline_csv(const PipelineResult& r, int step) {
  std::ostringstream os;
  const int n = r.family.n;
  auto point_header = [&]() {
    for (int i = 0; i < n; ++i) os << "x" << i << ",";
    for (int i = 0; i < n; ++i) os << "k" << i << ",";
  };
  auto point_row = [&](const PhasePoint& p) {
    for (int i = 0; i < n; ++i) os << g17(p.x[i]) << ",";
    for (int i = 0; i < n; ++i) os << g17(p.k[i]) << ",";
  };
  auto tensor3_table = [&](const std::vector<TensorValue>& ts, const char* sym) {
    point_header();
    bool first = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          if (!first) os << ",";
          first = false;
          os << sym << "_" << a << b << c;
        }
    os << "\n";
    for (size_t i = 0; i < ts.size(); ++i) {
      point_row(r.points[i]);
      const auto& comp = ts[i].components();
      for (size_t j = 0; j < comp.size(); ++j) os << (j ? "," : "") << g17(comp[j]);
      os << "\n";
    }
  };
  switch (step) {
    case 1:
      tensor3_table(r.c_samples, "C");
      break;
    case 2: {
      point_header();
      os << "H\n";
      for (size_t i = 0; i < r.h_samples.size(); ++i) {
        point_row(r.points[i]);
        os << g17(r.h_samples[i]) << "\n";
      }
      break;
    }
    case 3: {
      point_header();
      bool first = true;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (!first) os << ",";
          first = false;
          os << "N_" << a << b;
        }
      os << "\n";
      for (size_t i = 0; i < r.n_samples.size(); ++i) {
        point_row(r.points[i]);
        const auto& comp = r.n_samples[i].components();
        for (size_t j = 0; j < comp.size(); ++j) os << (j ? "," : "") << g17(comp[j]);
        os << "\n";
      }
      break;
    }
    case 4:
      tensor3_table(r.hconn_samples, "H");
      break;
    default:
      throw ConfigError("pipeline_csv: step must be 1..4");
  }
  return os.str();
}

std::string pipeline_json(const PipelineResult& r) {
  nlohmann::ordered_json j;
  j["family"] = to_string(r.family.id);
  j["n"] = r.family.n;
  j["lambda"] = r.family.lambda;
  j["alpha"] = r.family.alpha;
  j["hamiltonian_mode"] = r.hamiltonian_mode;
  j["points"] = r.points.size();
  j["residuals"] = {{"casimir", r.casimir_residual},
                    {"two_route", r.tworoute_residual},
                    {"autoparallel", r.autoparallel_residual}};
  auto& steps = j["steps"] = nlohmann::ordered_json::array();
  for (const StepRecord& s : r.steps)
    steps.push_back({{"index", s.index}, {"name", s.name}, {"status", s.status}, {"residual", s.residual}});
  j["ok"] = r.ok;
  return j.dump(2) + "\n";
}

}  // namespace ghs
