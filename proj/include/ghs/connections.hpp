#pragma once

// Affine and nonlinear connections of a generalized Hamilton space, plus the
// horizontal/vertical covariant derivatives. Construction order:
//   1. C_rho^{mu nu} directly from the metric,
//   2. squared momentum distance -> Hamiltonian (geodesic module),
//   3. N_{mu nu} from the Hamiltonian,
//   4. H^rho_{mu nu} = dbar^rho N_{mu nu}, cross-checked against the metrical
//      Levi-Civita-pattern formula.

#include <vector>

#include "ghs/derivative.hpp"
#include "ghs/fields.hpp"
#include "ghs/tensor_value.hpp"

namespace ghs {

// ---- generic pointwise evaluators ----

// g_H^{mu nu} = (1/2) dbar^mu dbar^nu H
template <class S>
MatN<S> hamilton_metric_eval(const ScalarField& H, const VecN<S>& x, const VecN<S>& k) {
  MatN<S> m = sgrad2(H, x, k, Slot::Fiber, Slot::Fiber);
  for (int i = 0; i < m.n * m.n; ++i) m.c[static_cast<size_t>(i)] = 0.5 * m.c[static_cast<size_t>(i)];
  return m;
}

// C_rho^{mu nu} = -1/2 g_{rho sigma}(dbar^mu g^{sigma nu} + dbar^nu g^{sigma mu} - dbar^sigma g^{mu nu})
template <class S>
Ten3N<S> vertical_connection_eval(const MetricField& g, const VecN<S>& x, const VecN<S>& k) {
  const int n = x.n;
  Ten3N<S> dgu = dmetric(g, x, k, Slot::Fiber, /*lower=*/false);
  MatN<S> gl = g.lower(x, k);
  Ten3N<S> out(n);
  for (int rho = 0; rho < n; ++rho)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        S s{};
        for (int sg = 0; sg < n; ++sg)
          s += gl(rho, sg) * (dgu(mu, sg, nu) + dgu(nu, sg, mu) - dgu(sg, mu, nu));
        out(rho, mu, nu) = -0.5 * s;
      }
  return out;
}

// N_{mu nu} = -1/4( {g^H_{mu nu}, H} + g^H_{mu rho} dbar^rho d_nu H
//                                    + g^H_{nu rho} dbar^rho d_mu H )
// The bracket here is {A,B} = d_l A dbar^l B - dbar^l A d_l B, the sign that
// reproduces N = k Gamma on momentum-independent metrics and makes the
// Hamiltonian autoparallel.
template <class S>
MatN<S> nonlinear_connection_eval(const ScalarField& H, const VecN<S>& x, const VecN<S>& k) {
  const int n = x.n;
  auto gh_lower = [&H](const auto& xx, const auto& kk) {
    return inverse(hamilton_metric_eval(H, xx, kk));
  };
  MatN<S> gl = gh_lower(x, k);
  VecN<S> dHx = sgrad(H, x, k, Slot::Space);
  VecN<S> dHk = sgrad(H, x, k, Slot::Fiber);
  MatN<S> mixed = sgrad2(H, x, k, Slot::Fiber, Slot::Space);  // mixed(rho,nu) = dbar^rho d_nu H
  MatN<S> pb(n);
  for (int l = 0; l < n; ++l) {
    MatN<S> dgx = d_dir(gh_lower, x, k, Slot::Space, l);
    MatN<S> dgk = d_dir(gh_lower, x, k, Slot::Fiber, l);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pb(i, j) += dgx(i, j) * dHk[l] - dgk(i, j) * dHx[l];
  }
  MatN<S> out(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      S s = pb(mu, nu);
      for (int rho = 0; rho < n; ++rho)
        s += gl(mu, rho) * mixed(rho, nu) + gl(nu, rho) * mixed(rho, mu);
      out(mu, nu) = -0.25 * s;
    }
  return out;
}

// out(r, m, n) = dbar^r M_{mn}
template <class S>
Ten3N<S> dbar_of_matrix(const MatrixField& M, const VecN<S>& x, const VecN<S>& k) {
  const int n = x.n;
  Ten3N<S> out(n);
  for (int r = 0; r < n; ++r) {
    MatN<S> d = d_dir(M, x, k, Slot::Fiber, r);
    for (int m = 0; m < n; ++m)
      for (int c = 0; c < n; ++c) out(r, m, c) = d(m, c);
  }
  return out;
}

// H^rho_{mu nu} = 1/2 g^{rho sigma}(delta_mu g_{sigma nu} + delta_nu g_{sigma mu} - delta_sigma g_{mu nu})
template <class S>
Ten3N<S> horizontal_metrical_eval(const MetricField& g, const MatrixField& Nf, const VecN<S>& x,
                                  const VecN<S>& k) {
  const int n = x.n;
  Ten3N<S> dgx = dmetric(g, x, k, Slot::Space, true);
  Ten3N<S> dgk = dmetric(g, x, k, Slot::Fiber, true);
  MatN<S> Nv = Nf(x, k);
  Ten3N<S> dg(n);  // dg(m, a, b) = delta_m g_{ab}
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        S s = dgx(m, a, b);
        for (int l = 0; l < n; ++l) s += Nv(l, m) * dgk(l, a, b);
        dg(m, a, b) = s;
      }
  MatN<S> gu = g.upper(x, k);
  Ten3N<S> out(n);
  for (int r = 0; r < n; ++r)
    for (int m = 0; m < n; ++m)
      for (int c = 0; c < n; ++c) {
        S s{};
        for (int sg = 0; sg < n; ++sg) s += gu(r, sg) * (dg(m, sg, c) + dg(c, sg, m) - dg(sg, m, c));
        out(r, m, c) = 0.5 * s;
      }
  return out;
}

// ---- erased connection context ----

template <class S>
using FlatOf = std::vector<S>;
using FlatField = Field<FlatOf>;

inline std::vector<double> extract_d(const std::vector<Dual<double>>& r) {
  std::vector<double> out(r.size());
  for (size_t i = 0; i < r.size(); ++i) out[i] = r[i].d;
  return out;
}

// Tensor-valued field of arbitrary rank with per-index variance.
struct TensorField {
  int n = 0;
  std::vector<IndexSpec> idx;
  FlatField comps;

  TensorValue at(const PhasePoint& p) const {
    TensorValue t(n, idx);
    t.components() = comps(p.x, p.k);
    return t;
  }
};

struct ConnectionContext {
  MetricField metric;
  ScalarField hamiltonian;  // the (autoparallel) Hamiltonian behind N
  MatrixField N;
  Ten3Field hconn;           // dbar N route (step 4)
  Ten3Field hconn_metrical;  // Levi-Civita-pattern route
  Ten3Field cconn;           // vertical connection from the metric
};

ConnectionContext make_connection_context(const MetricField& g, const ScalarField& H);

// Connection blocks at one point, symmetrized, with the pre-symmetrization
// asymmetry kept as a diagnostic.
struct ConnectionSet {
  TensorValue N;  // N_{mu nu}
  TensorValue H;  // H^rho_{mu nu}
  TensorValue C;  // C_rho^{mu nu}
  double asym_n = 0, asym_h = 0, asym_c = 0;
  PhasePoint at;
};

ConnectionSet connections_at(const ConnectionContext& ctx, const PhasePoint& p);

// ---- spec operations (double endpoints) ----

TensorValue vertical_connection(const MetricField& g, const PhasePoint& p);

struct HamiltonMetric {
  ScalarField source;
  MatrixField upper;  // g_H^{mu nu}

  TensorValue upper_at(const PhasePoint& p) const {
    return TensorValue::from_mat(upper(p.x, p.k), up_fiber(), up_fiber());
  }
};
HamiltonMetric hamilton_metric(const ScalarField& H);

TensorValue nonlinear_connection(const ScalarField& H, const PhasePoint& p);
MatrixField nonlinear_connection_field(const ScalarField& H);
TensorValue horizontal_connection_from_N(const MatrixField& N, const PhasePoint& p);
TensorValue horizontal_connection_metrical(const MetricField& g, const MatrixField& N,
                                           const PhasePoint& p);

enum class CovDir { Horizontal, Vertical };

// Horizontal/vertical covariant derivative of an arbitrary-rank tensor field;
// the derivative index is appended last (lower spacetime for horizontal,
// upper fiber for vertical).
TensorValue covariant_derivative(const TensorField& T, const ConnectionContext& ctx, CovDir dir,
                                 const PhasePoint& p);

// Ready-made tensor fields.
TensorField metric_lower_field(const MetricField& g);
TensorField metric_upper_field(const MetricField& g);
TensorField vertical_connection_field_t(const MetricField& g);
TensorField momentum_coordinate_field(int n);  // T_mu = k_mu

}  // namespace ghs
