#pragma once

// Orchestration: the four-step construction for a configured family, and the
// machine-checkable verification suite with deterministic JSON reports.

#include <string>
#include <vector>

#include "ghs/config.hpp"
#include "ghs/curvature.hpp"
#include "ghs/geodesic.hpp"

namespace ghs {

// ---- four-step pipeline ----

struct StepRecord {
  int index = 0;
  std::string name;
  std::string status;  // "ok" or an error summary
  double residual = 0;
};

struct PipelineResult {
  FamilySpec family;
  std::string hamiltonian_mode;  // "closed-form" or "bvp-numeric"
  std::vector<PhasePoint> points;
  std::vector<TensorValue> c_samples;      // step 1
  std::vector<double> h_samples;           // step 2
  std::vector<TensorValue> n_samples;      // step 3
  std::vector<TensorValue> hconn_samples;  // step 4
  double casimir_residual = 0;      // max |H - 1/4 dH g dH|
  double tworoute_residual = 0;     // max |dbar N - metrical route|
  double autoparallel_residual = 0; // max |delta_mu H|
  std::vector<StepRecord> steps;
  bool ok = false;
};

PipelineResult run_pipeline(const RunConfig& cfg);

// Step-2 selection: validated closed form if available, else shooting.
HamiltonianField select_hamiltonian(const MetricFamily& fam,
                                    const std::vector<PhasePoint>& probes,
                                    double closed_form_tol = 1e-9);

// CSV table of the per-point connection samples (header row, %.17g numerics).
std::string pipeline_csv(const PipelineResult& r, int step);
std::string pipeline_json(const PipelineResult& r);

// ---- verification ----

struct CheckResult {
  std::string id;
  std::string identity;  // the equation this check evaluates
  int points = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool negative_control = false;  // expected to exceed the tolerance
  bool ok = false;                // behaved as expected
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool ok = false;
};

std::vector<std::string> known_suites();
VerificationReport run_verification(const std::string& suite, const RunConfig& cfg);
std::string report_json(const VerificationReport& rep);
std::string report_csv(const VerificationReport& rep);

// Acceptance criteria: fixed groups of verification checks, one line each.
struct CriterionResult {
  int index = 0;
  std::string title;
  bool ok = false;
  std::vector<CheckResult> checks;
};
std::vector<CriterionResult> run_acceptance(uint64_t seed);

}  // namespace ghs
