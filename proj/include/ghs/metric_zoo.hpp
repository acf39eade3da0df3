#pragma once

// Catalog of built-in phase-space metric families on a de Sitter (flat
// slicing) or Minkowski base, their tetrads, and closed-form squared
// momentum distances where the defining ODE has one.

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "ghs/derivative.hpp"
#include "ghs/fields.hpp"

namespace ghs {

// ---- base spacetime: ds^2 = (dx^0)^2 - e^{2 alpha x^0} dx_i^2 ----

template <class S>
MatN<S> base_lower(int n, double alpha, const VecN<S>& x) {
  MatN<S> a(n);
  a(0, 0) = S(1.0);
  S w = exp((2.0 * alpha) * x[0]);
  for (int i = 1; i < n; ++i) a(i, i) = -w;
  return a;
}

template <class S>
MatN<S> base_upper(int n, double alpha, const VecN<S>& x) {
  MatN<S> a(n);
  a(0, 0) = S(1.0);
  S w = exp((-2.0 * alpha) * x[0]);
  for (int i = 1; i < n; ++i) a(i, i) = -w;
  return a;
}

// squared momentum norm of the base, kbar^2 = k_mu a^{mu nu}(x) k_nu
template <class S>
S base_kbar2(int n, double alpha, const VecN<S>& x, const VecN<S>& k) {
  S s = k[0] * k[0];
  S w = exp((-2.0 * alpha) * x[0]);
  for (int i = 1; i < n; ++i) s -= k[i] * k[i] * w;
  return s;
}

// ---- tetrads ----

// e(mu, alpha) = e^mu_alpha with a^{mu nu} = e^mu_alpha eta^{alpha beta} e^nu_beta;
// einv(alpha, mu) = e^alpha_mu, the inverse frame. Both depend on x only.
struct Tetrad {
  int n = 2;
  MatrixField e;
  MatrixField einv;

  template <class S>
  MatN<S> frame(const VecN<S>& x) const {
    VecN<S> kzero(x.n);
    return e(x, kzero);
  }
  template <class S>
  MatN<S> coframe(const VecN<S>& x) const {
    VecN<S> kzero(x.n);
    return einv(x, kzero);
  }
  // kbar_alpha = e^mu_alpha k_mu
  template <class S>
  VecN<S> flat_momentum(const VecN<S>& x, const VecN<S>& k) const {
    auto f = frame(x);
    VecN<S> kb(x.n);
    for (int a = 0; a < x.n; ++a) {
      S s{};
      for (int mu = 0; mu < x.n; ++mu) s += f(mu, a) * k[mu];
      kb[a] = s;
    }
    return kb;
  }
  // Z_mu = n_alpha e^alpha_mu
  template <class S>
  VecN<S> z_vector(const VecN<S>& x, const std::array<double, 4>& nvec) const {
    auto ci = coframe(x);
    VecN<S> z(x.n);
    for (int mu = 0; mu < x.n; ++mu) {
      S s{};
      for (int a = 0; a < x.n; ++a) s += nvec[static_cast<size_t>(a)] * ci(a, mu);
      z[mu] = s;
    }
    return z;
  }
};

Tetrad base_tetrad(int n, double alpha);
// Same spacetime metric, different local frame: e' = e L with L a boost of
// the given rapidity in the (0,1) flat plane.
Tetrad boosted_tetrad(const Tetrad& t, double rapidity);

// ---- f-function selectors, arguments w = kbar^2 / Lambda^2 ----

enum class FSel { zero, one, one_plus_w, maxsym_plus, maxsym_minus };

template <class S>
S fsel_eval(FSel f, const S& w) {
  switch (f) {
    case FSel::zero: return S(0.0);
    case FSel::one: return S(1.0);
    case FSel::one_plus_w: return 1.0 + w;
    case FSel::maxsym_plus: return sq(1.0 + 0.25 * w);
    case FSel::maxsym_minus: return sq(1.0 - 0.25 * w);
  }
  throw ConfigError("unknown f selector");
}

FSel fsel_from_string(const std::string& s);
std::string to_string(FSel f);

// ---- family specification ----

enum class FamilyId {
  minkowski,
  gr_desitter_2d,
  momentum_desitter,
  lorentz_invariant,
  conformal,
  conformal_maxsym,
  generic_dgr,
  hamilton_from_h,
};

FamilyId family_from_string(const std::string& s);
std::string to_string(FamilyId id);

struct FamilySpec {
  FamilyId id = FamilyId::minkowski;
  int n = 2;
  double lambda = 1.0;
  double alpha = 0.0;
  int branch = +1;  // +1 AdS, -1 dS where the family distinguishes them
  FSel f1 = FSel::one_plus_w;
  FSel f2 = FSel::one;
  FSel f3 = FSel::one;   // generic_dgr only
  FSel f4 = FSel::zero;  // generic_dgr only
  std::array<double, 4> nvec = {1, 0, 0, 0};

  void validate() const;
};

// ---- analytic extensions used by the closed-form distances ----

// asinh(sqrt(u))^2 continued through u=0 (equals -asin(sqrt(-u))^2 for u<0).
template <class S>
S asinh_sq(const S& u) {
  if (std::fabs(val(u)) < 1e-3) {
    return u * (1.0 + u * (-1.0 / 3 + u * (8.0 / 45 + u * (-4.0 / 35 + u * (128.0 / 1575)))));
  }
  if (val(u) > 0) {
    S s = sqrt(u);
    return sq(asinh(s));
  }
  S s = sqrt(-u);
  return -sq(asin(s));
}

// atan(sqrt(u))^2 continued through u=0 (equals -atanh(sqrt(-u))^2 for u<0).
template <class S>
S atan_sq(const S& u) {
  if (std::fabs(val(u)) < 1e-3) {
    return u * (1.0 + u * (-2.0 / 3 + u * (23.0 / 45 + u * (-44.0 / 105 + u * (563.0 / 1575)))));
  }
  if (val(u) > 0) {
    S s = sqrt(u);
    return sq(atan(s));
  }
  S s = sqrt(-u);
  return -sq(atanh(s));
}

// The Hamiltonian generating the maximally symmetric momentum-space metric
// via g_H = (1/2) dbar dbar H:
//   H(u) = +Lambda sqrt(u) - (Lambda^2/2) log(1 + 2 sqrt(u)/Lambda)   (branch +1, AdS)
//   H(u) = -Lambda sqrt(u) - (Lambda^2/2) log(1 - 2 sqrt(u)/Lambda)   (branch -1, dS)
// Timelike domain only: u > 0, and 2 sqrt(u) < Lambda on the minus branch.
template <class S>
S maxsym_hamiltonian(const S& u, double lambda, int branch) {
  if (!(val(u) > 0)) throw DomainError("maxsym Hamiltonian needs kbar^2 > 0");
  S s = sqrt(u);
  if (branch >= 0) return lambda * s - (0.5 * lambda * lambda) * log1p((2.0 / lambda) * s);
  if (!(2 * val(s) < lambda)) throw DomainError("maxsym Hamiltonian: outside minus-branch domain");
  return -(lambda * s) - (0.5 * lambda * lambda) * log1p((-2.0 / lambda) * s);
}

// Squared geodesic distance of the metric generated by maxsym_hamiltonian:
// solving d = d'(u)^2 u (h' + 2u h'')^{-1}... gives
//   D(u) = (Lambda^2/4) ln^2(1 + sign * 2 sqrt(u)/Lambda).
// The distance is a function of the generator (both are conserved along
// horizontal curves) but does not coincide with it.
template <class S>
S maxsym_distance(const S& u, double lambda, int branch) {
  if (!(val(u) > 0)) throw DomainError("maxsym distance needs kbar^2 > 0");
  S s = sqrt(u);
  const double sign = branch >= 0 ? 1.0 : -1.0;
  if (branch < 0 && !(2 * val(s) < lambda))
    throw DomainError("maxsym distance: outside minus-branch domain");
  return (0.25 * lambda * lambda) * sq(log1p((sign * 2.0 / lambda) * s));
}

// ---- built family ----

struct MetricFamily {
  FamilySpec spec;
  MetricField metric;
  Tetrad tetrad;
  ScalarField casimir_base;  // kbar^2 of the base spacetime
  ScalarField seed_hamiltonian;  // autoparallel Hamiltonian used to build N
  std::optional<ScalarField> distance_hamiltonian;  // closed-form squared distance
  std::optional<ScalarField> generator_hamiltonian;  // for hamilton_from_h: the metric's source
  std::function<bool(const PhasePoint&)> in_domain;
};

MetricFamily build_family(const FamilySpec& spec);
MetricField build_metric(const FamilySpec& spec);
std::optional<ScalarField> closed_form_hamiltonian(const FamilySpec& spec);

// generic_dgr with an explicit frame choice (the Z-terms are frame-dependent;
// used by the tetrad-dependence controls).
MetricField generic_dgr_metric(const FamilySpec& spec, const Tetrad& tetrad);

// g^{mu nu}(x,k) = e^mu_alpha zeta^{alpha beta}(kbar) e^nu_beta for a
// momentum-only metric zeta; returned as a lower-component evaluator.
MetricField tetrad_lift(const MetricField& zeta, const Tetrad& tetrad);

std::string describe(const FamilySpec& spec);

}  // namespace ghs
