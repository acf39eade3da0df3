#include "ghs/geodesic.hpp"

#include <cmath>

namespace ghs {

// ---- Dormand-Prince 5(4) ----

namespace {

constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784,
                 kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

void check_finite(const std::vector<double>& y) {
  for (double v : y)
    if (!std::isfinite(v)) throw SolverError("non-finite state in ODE integration");
}

}  // namespace

std::vector<double> OdeSolution::eval(double t) const {
  if (ts.empty()) throw SolverError("empty ODE solution");
  const double dir = (ts.back() >= ts.front()) ? 1.0 : -1.0;
  if (dir * (t - ts.front()) <= 0) return ys.front();
  if (dir * (t - ts.back()) >= 0) return ys.back();
  size_t hi = 1;
  while (dir * (ts[hi] - t) < 0) ++hi;
  const size_t lo = hi - 1;
  const double h = ts[hi] - ts[lo];
  const double s = (t - ts[lo]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2,
               h11 = s3 - s2;
  std::vector<double> out(ys[lo].size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = h00 * ys[lo][i] + h10 * h * fs[lo][i] + h01 * ys[hi][i] + h11 * h * fs[hi][i];
  return out;
}

OdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                          const OdeOptions& opts) {
  const size_t dim = y0.size();
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  const double span = std::fabs(t1 - t0);
  if (span == 0) {
    OdeSolution s;
    std::vector<double> f(dim);
    rhs(t0, y0, f);
    s.ts = {t0};
    s.ys = {y0};
    s.fs = {f};
    return s;
  }

  OdeSolution sol;
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  std::vector<double> yt(dim), y1(dim);
  double t = t0;
  std::vector<double> y = std::move(y0);
  rhs(t, y, k1);
  check_finite(k1);
  sol.ts.push_back(t);
  sol.ys.push_back(y);
  sol.fs.push_back(k1);

  double h = dir * span / 100.0;
  double prev_err = 1.0;
  int steps = 0;
  while (dir * (t1 - t) > 0) {
    if (++steps > opts.max_steps) throw SolverError("ODE step count exhausted");
    if (dir * (t + h - t1) > 0) h = t1 - t;

    for (size_t i = 0; i < dim; ++i) yt[i] = y[i] + h * kA21 * k1[i];
    rhs(t + h / 5, yt, k2);
    for (size_t i = 0; i < dim; ++i) yt[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
    rhs(t + 3 * h / 10, yt, k3);
    for (size_t i = 0; i < dim; ++i) yt[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
    rhs(t + 4 * h / 5, yt, k4);
    for (size_t i = 0; i < dim; ++i)
      yt[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
    rhs(t + 8 * h / 9, yt, k5);
    for (size_t i = 0; i < dim; ++i)
      yt[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] + kA64 * k4[i] + kA65 * k5[i]);
    rhs(t + h, yt, k6);
    for (size_t i = 0; i < dim; ++i)
      y1[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] + kB6 * k6[i]);
    rhs(t + h, y1, k7);

    double err = 0;
    for (size_t i = 0; i < dim; ++i) {
      const double e =
          h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] + kE6 * k6[i] + kE7 * k7[i]);
      const double sc = opts.abs_tol + opts.rel_tol * std::max(std::fabs(y[i]), std::fabs(y1[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(dim));

    if (err <= 1.0 || !std::isfinite(err)) {
      if (!std::isfinite(err)) throw SolverError("non-finite error estimate in ODE step");
      t += h;
      y = y1;
      k1 = k7;  // first-same-as-last
      check_finite(y);
      sol.ts.push_back(t);
      sol.ys.push_back(y);
      sol.fs.push_back(k1);
      // PI controller
      const double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2) * std::pow(prev_err, 0.04);
      h *= std::min(5.0, std::max(0.2, fac));
      prev_err = std::max(err, 1e-16);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  sol.steps_taken = steps;
  return sol;
}

// ---- vertical geodesics ----

GeodesicSolution integrate_vertical_geodesic(const MetricField& g, const VecN<double>& x0,
                                             const VecN<double>& k0, const VecN<double>& kdot0,
                                             double tau1, const OdeOptions& opts) {
  const int n = x0.n;
  OdeRhs rhs = [&g, &x0, n](double, const std::vector<double>& y, std::vector<double>& dy) {
    VecN<double> k(n), kd(n);
    for (int i = 0; i < n; ++i) {
      k[i] = y[static_cast<size_t>(i)];
      kd[i] = y[static_cast<size_t>(n + i)];
    }
    Ten3N<double> C = vertical_connection_eval(g, x0, k);
    for (int i = 0; i < n; ++i) dy[static_cast<size_t>(i)] = kd[i];
    for (int mu = 0; mu < n; ++mu) {
      double a = 0;
      for (int nu = 0; nu < n; ++nu)
        for (int sg = 0; sg < n; ++sg) a += C(mu, nu, sg) * kd[nu] * kd[sg];
      dy[static_cast<size_t>(n + mu)] = a;
    }
  };
  std::vector<double> y0(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    y0[static_cast<size_t>(i)] = k0[i];
    y0[static_cast<size_t>(n + i)] = kdot0[i];
  }
  OdeSolution sol;
  try {
    sol = integrate_ode(rhs, y0, 0.0, tau1, opts);
  } catch (const DegenerateMetricError& e) {
    throw SolverError(std::string("metric degeneracy along the vertical geodesic: ") + e.what());
  }

  GeodesicSolution out;
  double speed0 = 0;
  for (size_t s = 0; s < sol.ts.size(); ++s) {
    GeodesicSample gs;
    gs.tau = sol.ts[s];
    gs.k = VecN<double>(n);
    gs.kdot = VecN<double>(n);
    for (int i = 0; i < n; ++i) {
      gs.k[i] = sol.ys[s][static_cast<size_t>(i)];
      gs.kdot[i] = sol.ys[s][static_cast<size_t>(n + i)];
    }
    gs.speed = quad_form(g.upper(x0, gs.k), gs.kdot, gs.kdot);
    if (s == 0) speed0 = gs.speed;
    out.speed_drift = std::max(out.speed_drift, std::fabs(gs.speed - speed0));
    out.samples.push_back(std::move(gs));
  }
  return out;
}

// ---- shooting ----

namespace {

VecN<double> geodesic_endpoint(const MetricField& g, const VecN<double>& x0,
                               const VecN<double>& origin, const VecN<double>& v,
                               const OdeOptions& opts) {
  GeodesicSolution s = integrate_vertical_geodesic(g, x0, origin, v, 1.0, opts);
  return s.samples.back().k;
}

}  // namespace

ShootResult shoot_momentum_distance(const MetricField& g, const VecN<double>& x0,
                                    const VecN<double>& k_target, const ShootOptions& opts) {
  const int n = x0.n;
  VecN<double> origin = opts.origin ? *opts.origin : VecN<double>(n);
  ShootResult res;
  res.v0 = k_target - origin;  // exact in the flat-fiber limit

  auto endpoint = [&](const VecN<double>& v) { return geodesic_endpoint(g, x0, origin, v, opts.ode); };

  VecN<double> F = endpoint(res.v0) - k_target;
  double fnorm = max_abs(F);
  res.residual_history.push_back(fnorm);

  for (res.iterations = 0; res.iterations < opts.max_newton && fnorm > opts.tol; ++res.iterations) {
    // Jacobian of the endpoint map by central differences
    MatN<double> J(n);
    for (int j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(1.0, std::fabs(res.v0[j]));
      VecN<double> vp = res.v0, vm = res.v0;
      vp[j] += h;
      vm[j] -= h;
      VecN<double> Fp = endpoint(vp), Fm = endpoint(vm);
      for (int i = 0; i < n; ++i) J(i, j) = (Fp[i] - Fm[i]) / (2 * h);
    }
    MatN<double> Jinv;
    try {
      Jinv = inverse(J);
    } catch (const DegenerateMetricError&) {
      throw NoGeodesicError("shooting: degenerate endpoint Jacobian, residual " +
                            std::to_string(fnorm));
    }
    VecN<double> step = mat_vec(Jinv, F);
    // damped Newton with backtracking
    double lam = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 10; ++bt) {
      VecN<double> vtry = res.v0 - lam * step;
      VecN<double> Ft = endpoint(vtry) - k_target;
      const double ft = max_abs(Ft);
      if (ft < fnorm * (1.0 - 0.25 * lam) || ft < opts.tol) {
        res.v0 = vtry;
        F = Ft;
        fnorm = ft;
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted)
      throw NoGeodesicError("shooting: line search failed, residual " + std::to_string(fnorm));
    res.residual_history.push_back(fnorm);
  }
  if (fnorm > opts.tol)
    throw NoGeodesicError("shooting: no convergence after " + std::to_string(opts.max_newton) +
                          " iterations, residual " + std::to_string(fnorm));
  res.residual = fnorm;
  res.d2 = quad_form(g.upper(x0, origin), res.v0, res.v0);
  return res;
}

double momentum_distance_squared(const MetricField& g, const VecN<double>& x0,
                                 const VecN<double>& k_target, const ShootOptions& opts) {
  return shoot_momentum_distance(g, x0, k_target, opts).d2;
}

ScalarField bvp_hamiltonian(const MetricField& g, const ShootOptions& opts) {
  return ScalarField::make_numeric(
      g.dim(), [g, opts](const VecN<double>& x, const VecN<double>& k) -> double {
        return shoot_momentum_distance(g, x, k, opts).d2;
      });
}

// ---- residuals ----

VecN<double> hamiltonian_gradient(const ScalarField& H, const PhasePoint& p, Slot slot,
                                  double fd_step) {
  if (H.analytic()) return sgrad(H, p.x, p.k, slot);
  return fd_gradient(H, p, slot, fd_step, /*richardson=*/true);
}

double hamiltonian_residual(const ScalarField& H, const MetricField& g, const PhasePoint& p,
                            double fd_step) {
  VecN<double> dk = hamiltonian_gradient(H, p, Slot::Fiber, fd_step);
  return H.value(p) - 0.25 * quad_form(g.lower_at(p), dk, dk);
}

TensorValue autoparallel_residual(const ScalarField& H, const MatrixField& N, const PhasePoint& p,
                                  double fd_step) {
  const int n = p.dim();
  VecN<double> dx = hamiltonian_gradient(H, p, Slot::Space, fd_step);
  VecN<double> dk = hamiltonian_gradient(H, p, Slot::Fiber, fd_step);
  MatN<double> Nv = N(p.x, p.k);
  TensorValue out(n, {lo_space()});
  for (int mu = 0; mu < n; ++mu) {
    double v = dx[mu];
    for (int nu = 0; nu < n; ++nu) v += Nv(nu, mu) * dk[nu];
    out(mu) = v;
  }
  return out;
}

// ---- Hamilton flow ----

FlowResult integrate_hamilton_flow(const ScalarField& H, const FlowConfig& cfg,
                                   const PhasePoint& p0, double tau_end) {
  const int n = p0.dim();
  const double nn = cfg.lagrange_multiplier;
  OdeRhs rhs = [&H, &cfg, n, nn](double, const std::vector<double>& y, std::vector<double>& dy) {
    VecN<double> x(n), k(n);
    for (int i = 0; i < n; ++i) {
      x[i] = y[static_cast<size_t>(i)];
      k[i] = y[static_cast<size_t>(n + i)];
    }
    PhasePoint p(x, k);
    VecN<double> dHk = hamiltonian_gradient(H, p, Slot::Fiber, cfg.fd_step);
    VecN<double> dHx = hamiltonian_gradient(H, p, Slot::Space, cfg.fd_step);
    for (int i = 0; i < n; ++i) {
      dy[static_cast<size_t>(i)] = nn * dHk[i];
      dy[static_cast<size_t>(n + i)] = -nn * dHx[i];
    }
  };
  std::vector<double> y0(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    y0[static_cast<size_t>(i)] = p0.x[i];
    y0[static_cast<size_t>(n + i)] = p0.k[i];
  }
  OdeSolution sol = integrate_ode(rhs, y0, 0.0, tau_end, cfg.ode);

  FlowResult out;
  double h0 = 0;
  for (size_t s = 0; s < sol.ts.size(); ++s) {
    VecN<double> x(n), k(n);
    for (int i = 0; i < n; ++i) {
      x[i] = sol.ys[s][static_cast<size_t>(i)];
      k[i] = sol.ys[s][static_cast<size_t>(n + i)];
    }
    FlowSample fsamp{sol.ts[s], PhasePoint(x, k), 0.0};
    fsamp.h_value = H.value(fsamp.p);
    if (s == 0) h0 = fsamp.h_value;
    out.h_drift = std::max(out.h_drift, std::fabs(fsamp.h_value - h0));
    out.samples.push_back(std::move(fsamp));
  }
  return out;
}

double flow_horizontality_residual(const ScalarField& H, const MatrixField& N,
                                   const FlowConfig& cfg, const FlowResult& flow) {
  double worst = 0;
  for (const FlowSample& s : flow.samples) {
    const int n = s.p.dim();
    VecN<double> dHk = hamiltonian_gradient(H, s.p, Slot::Fiber, cfg.fd_step);
    VecN<double> dHx = hamiltonian_gradient(H, s.p, Slot::Space, cfg.fd_step);
    MatN<double> Nv = N(s.p.x, s.p.k);
    for (int lam = 0; lam < n; ++lam) {
      double r = -cfg.lagrange_multiplier * dHx[lam];  // kdot_lambda
      for (int sg = 0; sg < n; ++sg) r -= Nv(sg, lam) * cfg.lagrange_multiplier * dHk[sg];
      worst = std::max(worst, std::fabs(r));
    }
  }
  return worst;
}

}  // namespace ghs
