#include "ghs/curvature.hpp"

namespace ghs {

TensorValue d_curvature(const ConnectionContext& ctx, const PhasePoint& p) {
  return TensorValue::from_ten3(d_curvature_eval(ctx.N, p.x, p.k), lo_space(), lo_space(),
                                lo_space());
}

Ten3Field d_curvature_field(const ConnectionContext& ctx) {
  MatrixField Nf = ctx.N;
  return Ten3Field::make([Nf]<class S>(const VecN<S>& x, const VecN<S>& k) -> Ten3N<S> {
    if constexpr (dual_depth_v<S> < kMaxDualDepth) {
      return d_curvature_eval(Nf, x, k);
    } else {
      throw UnsupportedOrderError("d-curvature: dual depth exhausted");
    }
  });
}

TensorValue horizontal_curvature(const ConnectionContext& ctx, const PhasePoint& p) {
  return TensorValue::from_ten4(horizontal_curvature_eval(ctx.hconn, ctx.N, p.x, p.k), up_space(),
                                lo_space(), lo_space(), lo_space());
}

TensorValue momentum_curvature(const ConnectionContext& ctx, const PhasePoint& p) {
  return TensorValue::from_ten4(momentum_curvature_eval(ctx.cconn, p.x, p.k), lo_space(),
                                up_fiber(), up_fiber(), up_fiber());
}

IntertwiningResult intertwining_curvature(const ConnectionContext& ctx, const PhasePoint& p) {
  const int n = p.dim();
  IntertwiningResult out;

  // P_small = metrical H-connection minus dbar N (the two-route defect)
  Ten3N<double> hmet = ctx.hconn_metrical(p.x, p.k);
  Ten3N<double> hdn = dbar_of_matrix(ctx.N, p.x, p.k);
  out.P_small = TensorValue(n, {up_space(), lo_space(), lo_space()});
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int nu = 0; nu < n; ++nu) out.P_small(r, s, nu) = hmet(r, s, nu) - hdn(r, nu, s);

  // dbar^rho H^mu_{lam nu} of the metrical connection
  Ten3Field Hf = ctx.hconn_metrical;
  std::array<Ten3N<double>, kMaxDim> dH;
  for (int r = 0; r < n; ++r) dH[static_cast<size_t>(r)] = d_dir(Hf, p.x, p.k, Slot::Fiber, r);

  // C^{mu rho}_lam as a (lam lower, mu upper, rho upper) tensor field, then
  // its horizontal covariant derivative ;nu
  TensorField Cfield = vertical_connection_field_t(ctx.metric);
  TensorValue Ccov = covariant_derivative(Cfield, ctx, CovDir::Horizontal, p);  // (lam, mu, rho, nu)
  Ten3N<double> Cv = ctx.cconn(p.x, p.k);

  out.P_big = TensorValue(n, {up_space(), up_fiber(), lo_space(), lo_space()});
  for (int mu = 0; mu < n; ++mu)
    for (int rho = 0; rho < n; ++rho)
      for (int lam = 0; lam < n; ++lam)
        for (int nu = 0; nu < n; ++nu) {
          double v = dH[static_cast<size_t>(rho)](mu, lam, nu) - Ccov(lam, mu, rho, nu);
          for (int sg = 0; sg < n; ++sg) v += Cv(lam, mu, sg) * out.P_small(rho, sg, nu);
          out.P_big(mu, rho, lam, nu) = v;
        }
  return out;
}

MaxSymResult maximal_symmetry_residual(const TensorValue& S_mixed, const MatN<double>& g_up,
                                       const MatN<double>& g_low, double lambda, double sign) {
  const int n = g_up.n;
  const double inv_l2 = sign / (lambda * lambda);
  Ten4N<double> S4(n);  // S^{tau mu nu rho}
  for (int tau = 0; tau < n; ++tau)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho) {
          double v = 0;
          for (int sg = 0; sg < n; ++sg) v += g_up(tau, sg) * S_mixed(sg, mu, nu, rho);
          S4(tau, mu, nu, rho) = v;
        }
  MaxSymResult res{0, 0};
  for (int tau = 0; tau < n; ++tau)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho) {
          const double target = (g_up(tau, rho) * g_up(mu, nu) - g_up(tau, nu) * g_up(rho, mu)) * inv_l2;
          res.residual = std::max(res.residual, std::fabs(S4(tau, mu, nu, rho) - target));
          res.scalar += g_low(tau, rho) * g_low(mu, nu) * S4(tau, mu, nu, rho);
        }
  return res;
}

CurvatureReport curvature_report(const ConnectionContext& ctx, const PhasePoint& p) {
  CurvatureReport rep;
  rep.at = p;
  rep.R_d = d_curvature(ctx, p);
  rep.R_h = horizontal_curvature(ctx, p);
  rep.S = momentum_curvature(ctx, p);
  IntertwiningResult iw = intertwining_curvature(ctx, p);
  rep.P_big = std::move(iw.P_big);
  rep.P_small = std::move(iw.P_small);
  return rep;
}

}  // namespace ghs
