#include "ghs/symmetry.hpp"

#include <cmath>

namespace ghs {

double poisson_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& p) {
  VecN<double> fk = sgrad(f, p.x, p.k, Slot::Fiber);
  VecN<double> fx = sgrad(f, p.x, p.k, Slot::Space);
  VecN<double> gk = sgrad(g, p.x, p.k, Slot::Fiber);
  VecN<double> gx = sgrad(g, p.x, p.k, Slot::Space);
  return dot(fk, gx) - dot(fx, gk);
}

VecN<double> lie_bracket(const FiberVectorField& u, const FiberVectorField& v,
                         const PhasePoint& p) {
  return lie_bracket_eval(u, v, p.x, p.k);
}

// ---- generators ----

namespace {

// sqrt(1 + kbar^2/Lambda^2) of the base metric
template <class S>
S snyder_factor(int n, double alpha, double lambda, const VecN<S>& x, const VecN<S>& k) {
  return sqrt(1.0 + base_kbar2(n, alpha, x, k) / (lambda * lambda));
}

FiberVectorField snyder_translation(int n, double alpha, double lambda, int dir) {
  FiberVectorField f;
  f.n = n;
  f.comps = VectorField::make(
      [n, alpha, lambda, dir]<class S>(const VecN<S>& x, const VecN<S>& k) -> VecN<S> {
        VecN<S> out(n);
        out[dir] = snyder_factor(n, alpha, lambda, x, k);
        return out;
      });
  return f;
}

FiberVectorField lorentz_generator(int n, double alpha, int mu, int nu) {
  FiberVectorField f;
  f.n = n;
  f.comps = VectorField::make([n, alpha, mu, nu]<class S>(const VecN<S>& x, const VecN<S>& k) -> VecN<S> {
    // J^{mu nu}_lambda = kbar^mu delta^nu_lambda - kbar^nu delta^mu_lambda
    MatN<S> aup = base_upper(n, alpha, x);
    VecN<S> kup = mat_vec(aup, k);
    VecN<S> out(n);
    out[nu] += kup[mu];
    out[mu] -= kup[nu];
    return out;
  });
  return f;
}

}  // namespace

GeneratorSet snyder_generators(int n, double alpha, double lambda) {
  GeneratorSet g;
  g.n = n;
  g.lambda = lambda;
  g.kind = KinematicsKind::snyder;
  for (int a = 0; a < n; ++a) g.T.push_back(snyder_translation(n, alpha, lambda, a));
  g.J.resize(static_cast<size_t>(n));
  for (int mu = 0; mu < n; ++mu) {
    g.J[static_cast<size_t>(mu)].resize(static_cast<size_t>(n));
    for (int nu = 0; nu < n; ++nu) g.J[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = lorentz_generator(n, alpha, mu, nu);
  }
  return g;
}

GeneratorSet kappa_generators(int n, double alpha, double lambda, const Tetrad& tetrad,
                              const std::array<double, 4>& nvec) {
  GeneratorSet g = snyder_generators(n, alpha, lambda);
  g.kind = KinematicsKind::kappa;
  for (int a = 0; a < n; ++a) {
    FiberVectorField f;
    f.n = n;
    f.comps = VectorField::make([n, alpha, lambda, tetrad, nvec, a]<class S>(
                                    const VecN<S>& x, const VecN<S>& k) -> VecN<S> {
      // T_kappa^a = T_S^a + Z_al J^{a al}/Lambda
      MatN<S> aup = base_upper(n, alpha, x);
      VecN<S> kup = mat_vec(aup, k);
      VecN<S> z = tetrad.z_vector(x, nvec);
      S zk{};  // Z_al kbar^al
      for (int i = 0; i < n; ++i) zk += z[i] * kup[i];
      VecN<S> out(n);
      S phi = snyder_factor(n, alpha, lambda, x, k);
      out[a] = phi - zk / lambda;
      for (int l = 0; l < n; ++l) out[l] += z[l] * kup[a] / lambda;
      return out;
    });
    g.T[static_cast<size_t>(a)] = f;
  }
  return g;
}

std::vector<AlgebraCheck> algebra_residuals(const GeneratorSet& gen, double alpha,
                                            const std::array<double, 4>& nvec, const Tetrad& tetrad,
                                            const PhasePoint& p) {
  const int n = gen.n;
  const double lambda = gen.lambda;
  const double l2 = lambda * lambda;
  MatN<double> aup = base_upper(n, alpha, p.x);
  std::vector<AlgebraCheck> out;

  // generator values at p
  std::vector<VecN<double>> Tv(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) Tv[static_cast<size_t>(a)] = gen.T[static_cast<size_t>(a)].comps(p.x, p.k);
  std::vector<std::vector<VecN<double>>> Jv(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    Jv[static_cast<size_t>(m)].resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) Jv[static_cast<size_t>(m)][static_cast<size_t>(v)] = gen.J[static_cast<size_t>(m)][static_cast<size_t>(v)].comps(p.x, p.k);
  }

  if (gen.kind == KinematicsKind::snyder) {
    // [T^a, T^b] = J^{ab}/Lambda^2
    double worst = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        VecN<double> br = lie_bracket(gen.T[static_cast<size_t>(a)], gen.T[static_cast<size_t>(b)], p);
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::fabs(br[l] - Jv[static_cast<size_t>(a)][static_cast<size_t>(b)][l] / l2));
      }
    out.push_back({"[T^a,T^b] = J^{ab}/Lambda^2", worst});

    // [T^a, J^{bc}] = a^{ab} T^c - a^{ac} T^b
    worst = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          VecN<double> br = lie_bracket(gen.T[static_cast<size_t>(a)], gen.J[static_cast<size_t>(b)][static_cast<size_t>(c)], p);
          for (int l = 0; l < n; ++l)
            worst = std::max(worst, std::fabs(br[l] - aup(a, b) * Tv[static_cast<size_t>(c)][l] +
                                              aup(a, c) * Tv[static_cast<size_t>(b)][l]));
        }
    out.push_back({"[T^a,J^{bc}] = a^{ab}T^c - a^{ac}T^b", worst});
  } else {
    // [T^a, T^b] = (Z_g/Lambda)(T^a a^{bg} - T^b a^{ag})
    VecN<double> z = tetrad.z_vector(p.x, nvec);
    VecN<double> zup = mat_vec(aup, z);
    double worst = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        VecN<double> br = lie_bracket(gen.T[static_cast<size_t>(a)], gen.T[static_cast<size_t>(b)], p);
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::fabs(br[l] - (zup[b] * Tv[static_cast<size_t>(a)][l] -
                                                     zup[a] * Tv[static_cast<size_t>(b)][l]) /
                                                        gen.lambda));
      }
    out.push_back({"[T^a,T^b] = (Z_g/Lambda)(T^a a^{bg} - T^b a^{ag})", worst});

    // [T^a, J^{bc}] = a^{ab} T^c - a^{ac} T^b + (Z_d/Lambda)(a^{db} J^{ac} - a^{dc} J^{ab})
    worst = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          VecN<double> br = lie_bracket(gen.T[static_cast<size_t>(a)], gen.J[static_cast<size_t>(b)][static_cast<size_t>(c)], p);
          for (int l = 0; l < n; ++l) {
            double rhs = aup(a, b) * Tv[static_cast<size_t>(c)][l] - aup(a, c) * Tv[static_cast<size_t>(b)][l] +
                         (zup[b] * Jv[static_cast<size_t>(a)][static_cast<size_t>(c)][l] -
                          zup[c] * Jv[static_cast<size_t>(a)][static_cast<size_t>(b)][l]) /
                             gen.lambda;
            worst = std::max(worst, std::fabs(br[l] - rhs));
          }
        }
    out.push_back({"[T^a,J^{bc}] = a^{ab}T^c - a^{ac}T^b + (Z/Lambda)(aJ - aJ)", worst});
  }

  // [J^{ab}, J^{cd}] = a^{bc}J^{ad} - a^{ac}J^{bd} - a^{bd}J^{ac} + a^{ad}J^{bc}
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          VecN<double> br = lie_bracket(gen.J[static_cast<size_t>(a)][static_cast<size_t>(b)], gen.J[static_cast<size_t>(c)][static_cast<size_t>(d)], p);
          for (int l = 0; l < n; ++l) {
            double rhs = aup(b, c) * Jv[static_cast<size_t>(a)][static_cast<size_t>(d)][l] - aup(a, c) * Jv[static_cast<size_t>(b)][static_cast<size_t>(d)][l] -
                         aup(b, d) * Jv[static_cast<size_t>(a)][static_cast<size_t>(c)][l] + aup(a, d) * Jv[static_cast<size_t>(b)][static_cast<size_t>(c)][l];
            worst = std::max(worst, std::fabs(br[l] - rhs));
          }
        }
  out.push_back({"[J^{ab},J^{cd}] closure", worst});
  return out;
}

// ---- 1+1 de Sitter ----

GrDsGenerators gr_ds_generators(double alpha) {
  GrDsGenerators g;
  g.alpha = alpha;
  g.E = ScalarField::make(2, [alpha]<class S>(const VecN<S>& x, const VecN<S>& k) -> S {
    return k[0] - alpha * (k[1] * x[1]);
  });
  g.P = ScalarField::make(2, []<class S>(const VecN<S>&, const VecN<S>& k) -> S { return k[1]; });
  g.Nb = ScalarField::make(2, [alpha]<class S>(const VecN<S>& x, const VecN<S>& k) -> S {
    S em;  // (e^{-2 alpha x^0} - 1)/(2 alpha), with the alpha -> 0 limit -x^0
    if (alpha == 0.0)
      em = -x[0];
    else
      em = (exp((-2.0 * alpha) * x[0]) - 1.0) / (2.0 * alpha);
    return x[1] * k[0] - k[1] * ((0.5 * alpha) * (x[1] * x[1]) + em);
  });
  ScalarField E = g.E, P = g.P, Nb = g.Nb;
  g.casimir = ScalarField::make(2, [E, P, Nb, alpha]<class S>(const VecN<S>& x, const VecN<S>& k) -> S {
    S e = E.eval(x, k), pp = P.eval(x, k), nb = Nb.eval(x, k);
    return e * e - pp * pp + (2.0 * alpha) * (nb * pp);
  });
  return g;
}

std::vector<VectorField> gr_ds_killing_fields(double alpha) {
  std::vector<VectorField> out;
  // E: xi = (1, -alpha x^1)
  out.push_back(VectorField::make([alpha]<class S>(const VecN<S>& x, const VecN<S>&) -> VecN<S> {
    VecN<S> v(x.n);
    v[0] = S(1.0);
    v[1] = -(alpha * x[1]);
    return v;
  }));
  // P: xi = (0, 1)
  out.push_back(VectorField::make([]<class S>(const VecN<S>& x, const VecN<S>&) -> VecN<S> {
    VecN<S> v(x.n);
    v[1] = S(1.0);
    return v;
  }));
  // Nb: xi = (x^1, -(alpha (x^1)^2/2 + (e^{-2 alpha x^0}-1)/(2 alpha)))
  out.push_back(VectorField::make([alpha]<class S>(const VecN<S>& x, const VecN<S>&) -> VecN<S> {
    VecN<S> v(x.n);
    v[0] = x[1];
    S em;
    if (alpha == 0.0)
      em = -x[0];
    else
      em = (exp((-2.0 * alpha) * x[0]) - 1.0) / (2.0 * alpha);
    v[1] = -((0.5 * alpha) * (x[1] * x[1]) + em);
    return v;
  }));
  return out;
}

// ---- isometry flows ----

SpacetimeFlow integrate_spacetime_flow(const VectorField& xi, const VecN<double>& x0, double eps,
                                       const OdeOptions& opts) {
  const int n = x0.n;
  OdeRhs rhs = [&xi, n](double, const std::vector<double>& y, std::vector<double>& dy) {
    VecN<double> x(n), kdummy(n);
    for (int i = 0; i < n; ++i) x[i] = y[static_cast<size_t>(i)];
    VecN<double> v = xi(x, kdummy);
    MatN<double> dxi(n);
    for (int j = 0; j < n; ++j) {
      VecN<double> dj = d_dir(xi, x, kdummy, Slot::Space, j);
      for (int i = 0; i < n; ++i) dxi(i, j) = dj[i];
    }
    for (int i = 0; i < n; ++i) dy[static_cast<size_t>(i)] = v[i];
    // variational equation dJ/dt = Dxi J, J stored row-major after x
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += dxi(i, l) * y[static_cast<size_t>(n + l * n + j)];
        dy[static_cast<size_t>(n + i * n + j)] = s;
      }
  };
  std::vector<double> y0(static_cast<size_t>(n + n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    y0[static_cast<size_t>(i)] = x0[i];
    y0[static_cast<size_t>(n + i * n + i)] = 1.0;
  }
  OdeSolution sol = integrate_ode(rhs, y0, 0.0, eps, opts);
  SpacetimeFlow out;
  out.x1 = VecN<double>(n);
  out.jac = MatN<double>(n);
  for (int i = 0; i < n; ++i) out.x1[i] = sol.back()[static_cast<size_t>(i)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.jac(i, j) = sol.back()[static_cast<size_t>(n + i * n + j)];
  return out;
}

double spacetime_isometry_residual(const MetricField& g, const SpacetimeFlow& flow,
                                   const PhasePoint& p) {
  const int n = p.dim();
  MatN<double> J = flow.jac;
  MatN<double> Jinv = inverse(J);
  // k'_mu = (dx^nu/dx'^mu) k_nu = (J^{-1})^nu_mu k_nu
  VecN<double> k1(n);
  for (int mu = 0; mu < n; ++mu) {
    double s = 0;
    for (int nu = 0; nu < n; ++nu) s += Jinv(nu, mu) * p.k[nu];
    k1[mu] = s;
  }
  MatN<double> g1 = g.lower(flow.x1, k1);
  MatN<double> pulled = mat_mul(transpose(J), mat_mul(g1, J));
  return max_abs(pulled - g.lower(p.x, p.k));
}

MomentumMap integrate_momentum_flow(const FiberVectorField& gen, const VecN<double>& x,
                                    const VecN<double>& k0, double eps, const OdeOptions& opts) {
  const int n = x.n;
  OdeRhs rhs = [&gen, &x, n](double, const std::vector<double>& y, std::vector<double>& dy) {
    VecN<double> k(n);
    for (int i = 0; i < n; ++i) k[i] = y[static_cast<size_t>(i)];
    VecN<double> v = gen.comps(x, k);
    MatN<double> dX(n);  // dX(mu, sigma) = dbar^sigma X_mu
    for (int sg = 0; sg < n; ++sg) {
      VecN<double> ds = d_dir(gen.comps, x, k, Slot::Fiber, sg);
      for (int mu = 0; mu < n; ++mu) dX(mu, sg) = ds[mu];
    }
    for (int i = 0; i < n; ++i) dy[static_cast<size_t>(i)] = v[i];
    for (int mu = 0; mu < n; ++mu)
      for (int rho = 0; rho < n; ++rho) {
        double s = 0;
        for (int sg = 0; sg < n; ++sg) s += dX(mu, sg) * y[static_cast<size_t>(n + sg * n + rho)];
        dy[static_cast<size_t>(n + mu * n + rho)] = s;
      }
  };
  std::vector<double> y0(static_cast<size_t>(n + n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    y0[static_cast<size_t>(i)] = k0[i];
    y0[static_cast<size_t>(n + i * n + i)] = 1.0;
  }
  OdeSolution sol = integrate_ode(rhs, y0, 0.0, eps, opts);
  MomentumMap out;
  out.k1 = VecN<double>(n);
  out.jac = MatN<double>(n);
  for (int i = 0; i < n; ++i) out.k1[i] = sol.back()[static_cast<size_t>(i)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.jac(i, j) = sol.back()[static_cast<size_t>(n + i * n + j)];
  return out;
}

double momentum_isometry_residual(const MetricField& g, const VecN<double>& x,
                                  const VecN<double>& k, const MomentumMap& map) {
  MatN<double> M = map.jac;
  MatN<double> pushed = mat_mul(M, mat_mul(g.lower(x, k), transpose(M)));
  return max_abs(pushed - g.lower(x, map.k1));
}

// ---- composition laws ----

VecN<double> snyder_compose(const VecN<double>& p, const VecN<double>& q, const MatN<double>& a_up,
                            double lambda) {
  const int n = p.n;
  const double l2 = lambda * lambda;
  const double p2 = quad_form(a_up, p, p), q2 = quad_form(a_up, q, q);
  const double pq = quad_form(a_up, p, q);
  if (1 + q2 / l2 <= 0 || 1 + p2 / l2 <= 0)
    throw DomainError("snyder_compose: momentum outside branch domain");
  const double f = std::sqrt(1 + q2 / l2) + pq / (l2 * (1 + std::sqrt(1 + p2 / l2)));
  VecN<double> out(n);
  for (int mu = 0; mu < n; ++mu) out[mu] = p[mu] * f + q[mu];
  return out;
}

VecN<double> kappa_compose(const VecN<double>& p, const VecN<double>& q, const MatN<double>& a_up,
                           const VecN<double>& z, double lambda) {
  const int n = p.n;
  const double l2 = lambda * lambda;
  const double p2 = quad_form(a_up, p, p), q2 = quad_form(a_up, q, q);
  const double pq = quad_form(a_up, p, q);
  const double pz = quad_form(a_up, p, z), qz = quad_form(a_up, q, z);
  if (1 + q2 / l2 <= 0 || 1 + p2 / l2 <= 0)
    throw DomainError("kappa_compose: momentum outside branch domain");
  const double den = 1 - (pz * pz - p2) / l2;
  if (std::fabs(den) < 1e-14) throw DomainError("kappa_compose: vanishing denominator");
  const double A = (std::sqrt(1 + p2 / l2) - pz / lambda) / den;
  const double B = qz + (pz * qz - pq) / lambda;
  const double f = std::sqrt(1 + q2 / l2) + qz / lambda;
  VecN<double> out(n);
  for (int mu = 0; mu < n; ++mu) out[mu] = p[mu] * f + q[mu] + z[mu] * (A * B - qz);
  return out;
}

// ---- noncommutativity ----

TensorValue cotangent_tetrad(const MetricField& g, const PhasePoint& p) {
  std::array<int, kMaxDim> sig{1, -1, -1, -1};
  MatN<double> e = signature_tetrad(g.lower_at(p), sig);
  return TensorValue::from_mat(e, up_space(), lo_space());
}

MatrixField symmetric_cotangent_tetrad_field(const FamilySpec& spec, const Tetrad& tetrad) {
  if (spec.id == FamilyId::generic_dgr || spec.id == FamilyId::hamilton_from_h)
    throw DomainError("symmetric tetrad gauge is defined for the a f1 + k k f2 families");
  return MatrixField::make([spec, tetrad]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
    const int n = x.n;
    const double l2 = spec.lambda * spec.lambda;
    VecN<S> kb = tetrad.flat_momentum(x, k);  // kbar_alpha
    S u{};                                    // kbar^2 = kbar eta kbar
    u = kb[0] * kb[0];
    for (int i = 1; i < n; ++i) u -= kb[i] * kb[i];
    S w = u / l2;
    S f1 = fsel_eval(spec.f1, w);
    S f2 = fsel_eval(spec.f2, w);
    S s = sqrt(f1);
    S d;
    if (std::fabs(val(u)) < 1e-4) {
      // series of (sqrt(f1 + u f2/L^2) - sqrt(f1))/u around u = 0
      S r = f2 / (l2 * f1);
      d = s * (0.5 * r - 0.125 * (r * r) * u + 0.0625 * (r * r * r) * (u * u));
    } else {
      d = (sqrt(f1 + u * f2 / l2) - s) / u;
    }
    // sigma^alpha_beta = s delta + d kbar^alpha kbar_beta, then etilde = sigma . einv
    VecN<S> kbup(n);
    kbup[0] = kb[0];
    for (int i = 1; i < n; ++i) kbup[i] = -kb[i];
    MatN<S> sigma(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) sigma(a, b) = (a == b ? s : S{}) + d * kbup[a] * kb[b];
    return mat_mul(sigma, tetrad.coframe(x));
  });
}

NoncommResult noncommutativity_bracket(NoncommMode mode, KinematicsKind kind,
                                       const MetricFamily& fam, const PhasePoint& p) {
  const int n = fam.spec.n;
  const double lambda = fam.spec.lambda;
  const double alpha = fam.spec.alpha;

  std::vector<FiberVectorField> X;
  if (mode == NoncommMode::generators) {
    GeneratorSet gen = (kind == KinematicsKind::snyder)
                           ? snyder_generators(n, alpha, lambda)
                           : kappa_generators(n, alpha, lambda, fam.tetrad, fam.spec.nvec);
    X = gen.T;
  } else {
    // X^alpha = etilde^alpha_mu(x,k) d/dk_mu, rows of the metric tetrad in
    // the Lorentz-covariant symmetric gauge
    MatrixField et = symmetric_cotangent_tetrad_field(fam.spec, fam.tetrad);
    for (int a = 0; a < n; ++a) {
      FiberVectorField f;
      f.n = n;
      f.comps = VectorField::make([et, a]<class S>(const VecN<S>& x, const VecN<S>& k) -> VecN<S> {
        MatN<S> e = et(x, k);
        VecN<S> out(x.n);
        for (int mu = 0; mu < x.n; ++mu) out[mu] = e(a, mu);
        return out;
      });
      X.push_back(f);
    }
  }

  NoncommResult res;
  res.bracket = TensorValue(n, {up_fiber(), up_fiber(), lo_space()});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      VecN<double> br = lie_bracket(X[static_cast<size_t>(a)], X[static_cast<size_t>(b)], p);
      for (int l = 0; l < n; ++l) res.bracket(a, b, l) = br[l];
    }

  // least-squares fit of bracket = f * J^{ab}_lambda / Lambda^2
  MatN<double> aup = base_upper(n, alpha, p.x);
  VecN<double> kup = mat_vec(aup, p.k);
  double num = 0, den = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        double Jc = ((l == b ? kup[a] : 0.0) - (l == a ? kup[b] : 0.0)) / (lambda * lambda);
        num += res.bracket(a, b, l) * Jc;
        den += Jc * Jc;
      }
  res.fit_factor = den > 0 ? num / den : 0;
  double defect = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        double Jc = ((l == b ? kup[a] : 0.0) - (l == a ? kup[b] : 0.0)) / (lambda * lambda);
        defect = std::max(defect, std::fabs(res.bracket(a, b, l) - res.fit_factor * Jc));
      }
  res.fit_defect = defect;
  return res;
}

}  // namespace ghs
