#pragma once

// The four curvature objects of the cotangent-bundle geometry: d-curvature of
// the nonlinear connection, horizontal curvature, momentum-space curvature,
// and the intertwining (P) tensors, plus the maximal-symmetry residual.

#include "ghs/connections.hpp"

namespace ghs {

// R_{mu nu rho} = delta_rho N_{nu mu} - delta_nu N_{rho mu}
template <class S>
Ten3N<S> d_curvature_eval(const MatrixField& Nf, const VecN<S>& x, const VecN<S>& k) {
  const int n = x.n;
  MatN<S> Nv = Nf(x, k);
  Ten3N<S> deltaN(n);  // deltaN(r, a, b) = delta_r N_{ab}
  for (int r = 0; r < n; ++r) {
    MatN<S> dx = d_dir(Nf, x, k, Slot::Space, r);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) deltaN(r, a, b) = dx(a, b);
  }
  for (int l = 0; l < n; ++l) {
    MatN<S> dk = d_dir(Nf, x, k, Slot::Fiber, l);
    for (int r = 0; r < n; ++r)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) deltaN(r, a, b) += Nv(l, r) * dk(a, b);
  }
  Ten3N<S> R(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho) R(mu, nu, rho) = deltaN(rho, nu, mu) - deltaN(nu, rho, mu);
  return R;
}

// R^mu_{nu rho sigma} = delta_sigma H^mu_{nu rho} - delta_rho H^mu_{nu sigma}
//                     + H^lam_{nu rho} H^mu_{lam sigma} - H^lam_{nu sigma} H^mu_{lam rho}
template <class S>
Ten4N<S> horizontal_curvature_eval(const Ten3Field& Hf, const MatrixField& Nf, const VecN<S>& x,
                                   const VecN<S>& k) {
  const int n = x.n;
  MatN<S> Nv = Nf(x, k);
  Ten3N<S> Hv = Hf(x, k);
  // deltaH(s)(m,a,b) = delta_s H^m_{ab}
  std::array<Ten3N<S>, kMaxDim> deltaH;
  for (int s = 0; s < n; ++s) deltaH[static_cast<size_t>(s)] = d_dir(Hf, x, k, Slot::Space, s);
  for (int l = 0; l < n; ++l) {
    Ten3N<S> dk = d_dir(Hf, x, k, Slot::Fiber, l);
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            deltaH[static_cast<size_t>(s)](m, a, b) += Nv(l, s) * dk(m, a, b);
  }
  Ten4N<S> R(n);
  for (int m = 0; m < n; ++m)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho)
        for (int sg = 0; sg < n; ++sg) {
          S v = deltaH[static_cast<size_t>(sg)](m, nu, rho) - deltaH[static_cast<size_t>(rho)](m, nu, sg);
          for (int l = 0; l < n; ++l)
            v += Hv(l, nu, rho) * Hv(m, l, sg) - Hv(l, nu, sg) * Hv(m, l, rho);
          R(m, nu, rho, sg) = v;
        }
  return R;
}

// S_sigma^{mu nu rho} = dbar^rho C_sigma^{mu nu} - dbar^nu C_sigma^{mu rho}
//                     + C_sigma^{lam nu} C_lam^{mu rho} - C_sigma^{lam rho} C_lam^{mu nu}
template <class S>
Ten4N<S> momentum_curvature_eval(const Ten3Field& Cf, const VecN<S>& x, const VecN<S>& k) {
  const int n = x.n;
  Ten3N<S> Cv = Cf(x, k);
  std::array<Ten3N<S>, kMaxDim> dC;
  for (int r = 0; r < n; ++r) dC[static_cast<size_t>(r)] = d_dir(Cf, x, k, Slot::Fiber, r);
  Ten4N<S> out(n);
  for (int sg = 0; sg < n; ++sg)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho) {
          S v = dC[static_cast<size_t>(rho)](sg, mu, nu) - dC[static_cast<size_t>(nu)](sg, mu, rho);
          for (int l = 0; l < n; ++l)
            v += Cv(sg, l, nu) * Cv(l, mu, rho) - Cv(sg, l, rho) * Cv(l, mu, nu);
          out(sg, mu, nu, rho) = v;
        }
  return out;
}

// ---- double endpoints ----

TensorValue d_curvature(const ConnectionContext& ctx, const PhasePoint& p);
Ten3Field d_curvature_field(const ConnectionContext& ctx);
TensorValue horizontal_curvature(const ConnectionContext& ctx, const PhasePoint& p);
TensorValue momentum_curvature(const ConnectionContext& ctx, const PhasePoint& p);

// P^rho_{sigma nu} = H^rho_{sigma nu}(metrical) - dbar^rho N_{nu sigma};
// P^{mu rho}_{lam nu} = dbar^rho H^mu_{lam nu} - C^{mu rho}_lam{}_{;nu} + C^{mu sigma}_lam P^rho_{sigma nu}
struct IntertwiningResult {
  TensorValue P_big;    // (mu, rho, lam, nu)
  TensorValue P_small;  // (rho, sigma, nu)
};
IntertwiningResult intertwining_curvature(const ConnectionContext& ctx, const PhasePoint& p);

struct MaxSymResult {
  double residual;  // max |S^{tau mu nu rho} - sign (g^{tau rho} g^{mu nu} - g^{tau nu} g^{rho mu})/Lambda^2|
  double scalar;    // g_{tau rho} g_{mu nu} S^{tau mu nu rho}; +n(n-1)/Lambda^2 on the dS branch,
                    // -n(n-1)/Lambda^2 on the AdS branch
};
// `sign` is +1 for the de Sitter branch, -1 for anti-de Sitter.
MaxSymResult maximal_symmetry_residual(const TensorValue& S_mixed, const MatN<double>& g_up,
                                       const MatN<double>& g_low, double lambda, double sign = 1.0);

struct CurvatureReport {
  TensorValue R_d;      // R_{mu nu rho}
  TensorValue R_h;      // R^mu_{nu rho sigma}
  TensorValue S;        // S_sigma^{mu nu rho}
  TensorValue P_big;    // P^{mu rho}_{lam nu}
  TensorValue P_small;  // P^rho_{sigma nu}
  PhasePoint at;
};
CurvatureReport curvature_report(const ConnectionContext& ctx, const PhasePoint& p);

}  // namespace ghs
