#pragma once

// Poisson and Lie brackets, isometry residuals in spacetime and momentum
// space, the 1+1 de Sitter isometry algebra with its Casimir, Snyder and
// kappa-Poincare generators/algebras/composition laws, and the two
// noncommutative-spacetime constructions.

#include <string>
#include <vector>

#include "ghs/geodesic.hpp"
#include "ghs/metric_zoo.hpp"

namespace ghs {

// ---- brackets ----

// {f,g} with the sign convention {k_nu, x^mu} = delta^mu_nu:
// {f,g} = dbar^l f d_l g - d_l f dbar^l g
double poisson_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& p);

// Vector field on the fiber, X = comps_lambda * d/dk_lambda; x is frozen.
struct FiberVectorField {
  int n = 0;
  VectorField comps;

  template <class S>
  VecN<S> eval(const VecN<S>& x, const VecN<S>& k) const {
    return comps(x, k);
  }
};

// [u,v]_lambda = u_sigma dbar^sigma v_lambda - v_sigma dbar^sigma u_lambda
template <class S>
VecN<S> lie_bracket_eval(const FiberVectorField& u, const FiberVectorField& v, const VecN<S>& x,
                         const VecN<S>& k) {
  const int n = x.n;
  VecN<S> uv = u.comps(x, k), vv = v.comps(x, k);
  VecN<S> out(n);
  for (int sg = 0; sg < n; ++sg) {
    VecN<S> dv = d_dir(v.comps, x, k, Slot::Fiber, sg);
    VecN<S> du = d_dir(u.comps, x, k, Slot::Fiber, sg);
    for (int l = 0; l < n; ++l) out[l] += uv[sg] * dv[l] - vv[sg] * du[l];
  }
  return out;
}

VecN<double> lie_bracket(const FiberVectorField& u, const FiberVectorField& v, const PhasePoint& p);

// ---- generator sets ----

enum class KinematicsKind { snyder, kappa };

// Translation and Lorentz generators of the maximally symmetric momentum
// metric g = a(x) + k k / Lambda^2, lifted pointwise to the curved base.
struct GeneratorSet {
  int n = 2;
  double lambda = 1;
  KinematicsKind kind = KinematicsKind::snyder;
  std::vector<FiberVectorField> T;               // T[alpha]
  std::vector<std::vector<FiberVectorField>> J;  // J[mu][nu] = -J[nu][mu]
};

GeneratorSet snyder_generators(int n, double alpha, double lambda);
GeneratorSet kappa_generators(int n, double alpha, double lambda, const Tetrad& tetrad,
                              const std::array<double, 4>& nvec);

struct AlgebraCheck {
  std::string relation;
  double residual;
};

// Bracket-closure residuals of the full Snyder / kappa algebra at one point.
std::vector<AlgebraCheck> algebra_residuals(const GeneratorSet& gen, double alpha,
                                            const std::array<double, 4>& nvec, const Tetrad& tetrad,
                                            const PhasePoint& p);

// ---- 1+1 de Sitter spacetime algebra ----

struct GrDsGenerators {
  ScalarField E, P, Nb;     // time translation, space translation, boost
  ScalarField casimir;      // E^2 - P^2 + 2 alpha Nb P
  double alpha = 0;
};
GrDsGenerators gr_ds_generators(double alpha);

// Killing vector fields of the three generators (x-flow components).
std::vector<VectorField> gr_ds_killing_fields(double alpha);

// ---- isometries ----

struct SpacetimeFlow {
  VecN<double> x1;     // x'(x0)
  MatN<double> jac;    // dx'/dx
};

// Integrate xdot = xi(x) together with its variational equation.
SpacetimeFlow integrate_spacetime_flow(const VectorField& xi, const VecN<double>& x0, double eps,
                                       const OdeOptions& opts = {});

// max | (dx'/dx)^T g(x',k') (dx'/dx) - g(x,k) | with k' = (dx'/dx)^{-T} k
double spacetime_isometry_residual(const MetricField& g, const SpacetimeFlow& flow,
                                   const PhasePoint& p);

struct MomentumMap {
  VecN<double> k1;   // k'(k)
  MatN<double> jac;  // dk'_mu / dk_rho
};

MomentumMap integrate_momentum_flow(const FiberVectorField& gen, const VecN<double>& x,
                                    const VecN<double>& k0, double eps, const OdeOptions& opts = {});

// max | (dk'/dk) g(x,k) (dk'/dk)^T - g(x,k') |
double momentum_isometry_residual(const MetricField& g, const VecN<double>& x,
                                  const VecN<double>& k, const MomentumMap& map);

// ---- composition laws ----

VecN<double> snyder_compose(const VecN<double>& p, const VecN<double>& q, const MatN<double>& a_up,
                            double lambda);

VecN<double> kappa_compose(const VecN<double>& p, const VecN<double>& q, const MatN<double>& a_up,
                           const VecN<double>& z, double lambda);

// ---- noncommutative spacetime ----

// Signature-aware tetrad of the full metric, etilde^alpha_mu with
// etilde^T eta etilde = g; deterministic triangular gauge.
TensorValue cotangent_tetrad(const MetricField& g, const PhasePoint& p);

// Lorentz-covariant (symmetric) tetrad gauge for metrics of the form
// g = a f1(w) + k k f2(w)/Lambda^2:
//   etilde^alpha_mu = (sqrt(f1) delta^alpha_beta + d(u) kbar^alpha kbar_beta) e^beta_mu,
//   d = (sqrt(f1 + u f2/Lambda^2) - sqrt(f1)) / u.
// This is the gauge in which the tetrad-mode noncommutativity closes on the
// Lorentz generators.
MatrixField symmetric_cotangent_tetrad_field(const FamilySpec& spec, const Tetrad& tetrad);

enum class NoncommMode { generators, tetrad };

struct NoncommResult {
  TensorValue bracket;  // [X^alpha, X^beta]_lambda laid out (alpha, beta, lambda)
  double fit_factor = 0;   // least-squares f in  bracket = f J^{alpha beta}/Lambda^2
  double fit_defect = 0;   // max |bracket - f J/Lambda^2|
};

NoncommResult noncommutativity_bracket(NoncommMode mode, KinematicsKind kind,
                                       const MetricFamily& fam, const PhasePoint& p);

}  // namespace ghs
