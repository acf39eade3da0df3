#pragma once

// Vertical geodesics, the momentum-space boundary-value problem defining the
// Hamiltonian as squared distance, Hamilton flow, and the residuals that make
// the construction machine-checkable.

#include <optional>

#include "ghs/connections.hpp"
#include "ghs/fields.hpp"
#include "ghs/ode.hpp"

namespace ghs {

// ---- vertical geodesics ----

struct GeodesicSample {
  double tau;
  VecN<double> k;
  VecN<double> kdot;
  double speed;  // g^{mu nu}(x0,k) kdot_mu kdot_nu
};

struct GeodesicSolution {
  std::vector<GeodesicSample> samples;
  double speed_drift = 0;        // max |speed(tau) - speed(0)|
  double endpoint_residual = 0;  // set by the shooting solver
};

GeodesicSolution integrate_vertical_geodesic(const MetricField& g, const VecN<double>& x0,
                                             const VecN<double>& k0, const VecN<double>& kdot0,
                                             double tau1, const OdeOptions& opts = {});

// ---- shooting: squared momentum distance ----

struct ShootOptions {
  OdeOptions ode{1e-12, 1e-12, 200000};
  int max_newton = 50;
  double tol = 1e-12;  // endpoint residual, max-norm
  std::optional<VecN<double>> origin;  // default: k = 0
};

struct ShootResult {
  double d2 = 0;          // signed squared distance (no square root taken)
  VecN<double> v0;        // initial covelocity kdot(0)
  int iterations = 0;
  double residual = 0;
  std::vector<double> residual_history;
};

ShootResult shoot_momentum_distance(const MetricField& g, const VecN<double>& x0,
                                    const VecN<double>& k_target, const ShootOptions& opts = {});

double momentum_distance_squared(const MetricField& g, const VecN<double>& x0,
                                 const VecN<double>& k_target, const ShootOptions& opts = {});

// Squared distance as a numeric-only scalar field (derivatives via finite
// differences with Richardson; step chosen for the solver noise floor).
ScalarField bvp_hamiltonian(const MetricField& g, const ShootOptions& opts = {});

// The Hamiltonian actually used for a family: the closed form when the family
// supplies one and it passes the defining identity at the probe points,
// otherwise the shooting field.
struct HamiltonianField {
  ScalarField field;
  bool closed_form = false;
  double validation_residual = 0;  // max |H - 1/4 dH g dH| over the probes
};

// ---- Hamiltonian-side residuals ----

// Gradient that uses forward mode for analytic fields and FD+Richardson with
// the given step for numeric ones.
VecN<double> hamiltonian_gradient(const ScalarField& H, const PhasePoint& p, Slot slot,
                                  double fd_step = 1e-2);

// H - (1/4) dbar^mu H g_{mu nu} dbar^nu H
double hamiltonian_residual(const ScalarField& H, const MetricField& g, const PhasePoint& p,
                            double fd_step = 1e-2);

// delta_mu H with N evaluated from the supplied field.
TensorValue autoparallel_residual(const ScalarField& H, const MatrixField& N, const PhasePoint& p,
                                  double fd_step = 1e-2);

// ---- Hamilton flow ----

struct FlowConfig {
  double lagrange_multiplier = 0.5;  // 1/2 massless, 1/(2m) massive
  OdeOptions ode{1e-10, 1e-10, 200000};
  double fd_step = 1e-2;  // used only for numeric Hamiltonians
};

struct FlowSample {
  double tau;
  PhasePoint p;
  double h_value;
};

struct FlowResult {
  std::vector<FlowSample> samples;
  double h_drift = 0;  // max |H(tau) - H(0)|
};

FlowResult integrate_hamilton_flow(const ScalarField& H, const FlowConfig& cfg,
                                   const PhasePoint& p0, double tau_end);

// max over samples of |kdot_lambda - N_{sigma lambda} xdot^sigma| with the
// flow velocities taken from the Hamilton equations at each sample.
double flow_horizontality_residual(const ScalarField& H, const MatrixField& N,
                                   const FlowConfig& cfg, const FlowResult& flow);

}  // namespace ghs
