#include <cmath>

#include "doctest.h"
#include "ghs/connections.hpp"
#include "ghs/metric_zoo.hpp"

using namespace ghs;

namespace {

// Independent Christoffel oracle for the de Sitter base: finite differences
// of a_{mu nu}(x) through std::exp only.
Ten3N<double> christoffel_oracle(double alpha, const VecN<double>& x) {
  const int n = x.n;
  auto a_low = [&](const VecN<double>& xx) {
    MatN<double> a(n);
    a(0, 0) = 1;
    for (int i = 1; i < n; ++i) a(i, i) = -std::exp(2 * alpha * xx[0]);
    return a;
  };
  const double h = 1e-6;
  std::array<MatN<double>, kMaxDim> da;
  for (int d = 0; d < n; ++d) {
    VecN<double> xp = x, xm = x;
    xp[d] += h;
    xm[d] -= h;
    MatN<double> ap = a_low(xp), am = a_low(xm);
    da[static_cast<size_t>(d)] = MatN<double>(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) da[static_cast<size_t>(d)](i, j) = (ap(i, j) - am(i, j)) / (2 * h);
  }
  MatN<double> aup = inverse(a_low(x));
  Ten3N<double> gamma(n);
  for (int l = 0; l < n; ++l)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        double s = 0;
        for (int sg = 0; sg < n; ++sg)
          s += 0.5 * aup(l, sg) *
               (da[static_cast<size_t>(mu)](sg, nu) + da[static_cast<size_t>(nu)](sg, mu) - da[static_cast<size_t>(sg)](mu, nu));
        gamma(l, mu, nu) = s;
      }
  return gamma;
}

MetricFamily family(FamilyId id, int n, double lambda = 1.0, double alpha = 0.0, int branch = 1) {
  FamilySpec s;
  s.id = id;
  s.n = n;
  s.lambda = lambda;
  s.alpha = alpha;
  s.branch = branch;
  return build_family(s);
}

}  // namespace

TEST_CASE("vertical connection") {
  SUBCASE("vanishes for momentum-independent metrics") {
    MetricFamily fam = family(FamilyId::gr_desitter_2d, 2, 1.0, 0.2);
    PhasePoint p = make_point(2, {0.4, -0.1}, {0.6, 0.2});
    CHECK(vertical_connection(fam.metric, p).max_abs() < 1e-15);
  }
  SUBCASE("vanishes at the fiber origin of metric_ds") {
    MetricFamily fam = family(FamilyId::momentum_desitter, 2);
    PhasePoint p = make_point(2, {0.4, -0.1}, {0.0, 0.0});
    CHECK(vertical_connection(fam.metric, p).max_abs() < 1e-15);
  }
  SUBCASE("matches the finite-difference oracle on metric_ds") {
    MetricFamily fam = family(FamilyId::momentum_desitter, 2);
    PhasePoint p = make_point(2, {0.0, 0.0}, {0.3, -0.1});
    TensorValue C = vertical_connection(fam.metric, p);
    // oracle: central differences of the upper metric, then the formula
    const double h = 1e-6;
    const int n = 2;
    std::array<MatN<double>, 2> dgu;
    for (int d = 0; d < n; ++d) {
      PhasePoint pp = p, pm = p;
      pp.k[d] += h;
      pm.k[d] -= h;
      MatN<double> up = fam.metric.upper_at(pp), um = fam.metric.upper_at(pm);
      dgu[static_cast<size_t>(d)] = MatN<double>(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dgu[static_cast<size_t>(d)](i, j) = (up(i, j) - um(i, j)) / (2 * h);
    }
    MatN<double> gl = fam.metric.lower_at(p);
    for (int rho = 0; rho < n; ++rho)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double s = 0;
          for (int sg = 0; sg < n; ++sg)
            s += gl(rho, sg) * (dgu[static_cast<size_t>(mu)](sg, nu) + dgu[static_cast<size_t>(nu)](sg, mu) -
                                dgu[static_cast<size_t>(sg)](mu, nu));
          CHECK(C(rho, mu, nu) == doctest::Approx(-0.5 * s).epsilon(1e-8));
        }
  }
}

TEST_CASE("hamilton metric") {
  SUBCASE("H = k^2 gives the flat metric") {
    ScalarField H = ScalarField::make(2, []<class S>(const VecN<S>&, const VecN<S>& k) -> S {
      return sq(k[0]) - sq(k[1]);
    });
    HamiltonMetric hm = hamilton_metric(H);
    PhasePoint p = make_point(2, {0.2, 0.4}, {0.3, -0.6});
    TensorValue g = hm.upper_at(p);
    CHECK(g(0, 0) == doctest::Approx(1.0));
    CHECK(g(1, 1) == doctest::Approx(-1.0));
    CHECK(g(0, 1) == 0.0);
  }
  SUBCASE("H~ = (k^2)^2 gives 2(eta k^2 + 2 k k)") {
    ScalarField H = ScalarField::make(2, []<class S>(const VecN<S>&, const VecN<S>& k) -> S {
      return sq(sq(k[0]) - sq(k[1]));
    });
    HamiltonMetric hm = hamilton_metric(H);
    PhasePoint p = make_point(2, {0.0, 0.0}, {0.5, 0.2});
    const double k2 = 0.25 - 0.04;
    VecN<double> kup(2);
    kup[0] = 0.5;
    kup[1] = -0.2;
    TensorValue g = hm.upper_at(p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double eta = (i == j) ? (i == 0 ? 1.0 : -1.0) : 0.0;
        CHECK(g(i, j) == doctest::Approx(2 * (eta * k2 + 2 * kup[i] * kup[j])).epsilon(1e-14));
      }
  }
  SUBCASE("maximally symmetric Hamiltonian: symmetric, matches FD") {
    MetricFamily fam = family(FamilyId::hamilton_from_h, 2, 1.0, 0.0, +1);
    HamiltonMetric hm = hamilton_metric(*fam.generator_hamiltonian);
    PhasePoint p = make_point(2, {0.0, 0.0}, {0.4, 0.1});
    TensorValue g = hm.upper_at(p);
    CHECK(g.asymmetry(0, 1) < 1e-12);
    const double h = 1e-5;
    PhasePoint pp = p, pm = p;
    pp.k[0] += h;
    pm.k[0] -= h;
    const double d00 =
        (sgrad(*fam.generator_hamiltonian, pp.x, pp.k, Slot::Fiber)[0] -
         sgrad(*fam.generator_hamiltonian, pm.x, pm.k, Slot::Fiber)[0]) /
        (2 * h);
    CHECK(g(0, 0) == doctest::Approx(0.5 * d00).epsilon(1e-8));
    // the family metric is the inverse of g_H
    CHECK(max_abs(mat_mul(g.as_mat(), fam.metric.lower_at(p)) - MatN<double>::identity(2)) < 1e-12);
  }
}

TEST_CASE("nonlinear connection") {
  SUBCASE("flat spacetime, H = k^2: N = 0") {
    MetricFamily fam = family(FamilyId::minkowski, 2);
    PhasePoint p = make_point(2, {0.7, -0.2}, {0.3, 0.4});
    CHECK(nonlinear_connection(fam.casimir_base, p).max_abs() < 1e-15);
  }
  SUBCASE("GR dS: N = k Gamma against the Christoffel oracle") {
    MetricFamily fam = family(FamilyId::gr_desitter_2d, 2, 1.0, 0.15);
    PhasePoint p = make_point(2, {0.5, -0.3}, {0.7, 0.25});
    TensorValue N = nonlinear_connection(fam.seed_hamiltonian, p);
    Ten3N<double> gamma = christoffel_oracle(0.15, p.x);
    for (int mu = 0; mu < 2; ++mu)
      for (int nu = 0; nu < 2; ++nu) {
        double want = 0;
        for (int l = 0; l < 2; ++l) want += p.k[l] * gamma(l, mu, nu);
        CHECK(N(mu, nu) == doctest::Approx(want).epsilon(1e-7));
      }
  }
  SUBCASE("N is degree-1 homogeneous on the conformal family") {
    MetricFamily fam = family(FamilyId::conformal_maxsym, 2, 1.0, 0.1, -1);
    ConnectionContext ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
    PhasePoint p = make_point(2, {0.3, 0.1}, {0.4, -0.2});
    MatN<double> n1 = ctx.N(p.x, p.k);
    for (double lam : {0.5, 2.0}) {
      VecN<double> ks = p.k * lam;
      MatN<double> n2 = ctx.N(p.x, ks);
      for (int i = 0; i < 4; ++i)
        CHECK(std::fabs(n2.c[static_cast<size_t>(i)] - lam * n1.c[static_cast<size_t>(i)]) < 1e-9);
    }
  }
  SUBCASE("degenerate Hamilton metric raises") {
    // H linear in k has singular g_H
    ScalarField H = ScalarField::make(2, []<class S>(const VecN<S>&, const VecN<S>& k) -> S {
      return k[0] + k[1];
    });
    PhasePoint p = make_point(2, {0.0, 0.0}, {0.3, 0.1});
    CHECK_THROWS_AS(nonlinear_connection(H, p), DegenerateMetricError);
  }
}

TEST_CASE("horizontal connection, both routes") {
  SUBCASE("zero N gives zero") {
    MatrixField zero = MatrixField::make([]<class S>(const VecN<S>& x, const VecN<S>&) -> MatN<S> {
      return MatN<S>(x.n);
    });
    PhasePoint p = make_point(2, {0.1, 0.2}, {0.3, 0.4});
    CHECK(horizontal_connection_from_N(zero, p).max_abs() == 0.0);
    MetricFamily flat = family(FamilyId::minkowski, 2);
    CHECK(horizontal_connection_metrical(flat.metric, zero, p).max_abs() < 1e-15);
  }
  SUBCASE("GR: both routes give the k-independent Christoffels") {
    MetricFamily fam = family(FamilyId::gr_desitter_2d, 2, 1.0, 0.15);
    ConnectionContext ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
    PhasePoint p = make_point(2, {0.5, -0.3}, {0.7, 0.25});
    TensorValue hn = horizontal_connection_from_N(ctx.N, p);
    TensorValue hm = horizontal_connection_metrical(fam.metric, ctx.N, p);
    Ten3N<double> gamma = christoffel_oracle(0.15, p.x);
    for (int r = 0; r < 2; ++r)
      for (int m = 0; m < 2; ++m)
        for (int c = 0; c < 2; ++c) {
          CHECK(hn(r, m, c) == doctest::Approx(gamma(r, m, c)).epsilon(1e-7));
          CHECK(hm(r, m, c) == doctest::Approx(gamma(r, m, c)).epsilon(1e-7));
        }
    // k-independence
    PhasePoint p2 = make_point(2, {0.5, -0.3}, {0.1, -0.6});
    TensorValue hn2 = horizontal_connection_from_N(ctx.N, p2);
    for (size_t i = 0; i < hn.components().size(); ++i)
      CHECK(std::fabs(hn.components()[i] - hn2.components()[i]) < 1e-10);
  }
  SUBCASE("two-route agreement and degree-0 homogeneity on the deformed family") {
    MetricFamily fam = family(FamilyId::conformal_maxsym, 2, 1.0, 0.1, +1);
    ConnectionContext ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
    PhasePoint p = make_point(2, {0.3, 0.1}, {0.4, -0.2});
    TensorValue hn = horizontal_connection_from_N(ctx.N, p);
    TensorValue hm = horizontal_connection_metrical(fam.metric, ctx.N, p);
    for (size_t i = 0; i < hn.components().size(); ++i)
      CHECK(std::fabs(hn.components()[i] - hm.components()[i]) < 1e-8);
    Ten3N<double> h1 = ctx.hconn(p.x, p.k);
    VecN<double> ks = p.k * 2.0;
    Ten3N<double> h2 = ctx.hconn(p.x, ks);
    for (int i = 0; i < 8; ++i)
      CHECK(std::fabs(h1.c[static_cast<size_t>(i)] - h2.c[static_cast<size_t>(i)]) < 1e-9);
  }
}

TEST_CASE("connection blocks are symmetric") {
  for (FamilyId id : {FamilyId::momentum_desitter, FamilyId::conformal_maxsym,
                      FamilyId::lorentz_invariant}) {
    MetricFamily fam = family(id, 2, 1.0, 0.1);
    ConnectionContext ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
    PhasePoint p = make_point(2, {0.2, -0.5}, {0.45, 0.2});
    ConnectionSet cs = connections_at(ctx, p);
    CHECK(cs.asym_n < 1e-10);
    CHECK(cs.asym_h < 1e-10);
    CHECK(cs.asym_c < 1e-10);
  }
}

TEST_CASE("covariant derivatives") {
  MetricFamily fam = family(FamilyId::momentum_desitter, 2, 1.0, 0.1);
  ConnectionContext ctx = make_connection_context(fam.metric, fam.seed_hamiltonian);
  PhasePoint p = make_point(2, {0.3, -0.2}, {0.4, 0.15});

  SUBCASE("metricity in both directions") {
    CHECK(covariant_derivative(metric_lower_field(fam.metric), ctx, CovDir::Horizontal, p).max_abs() <
          1e-9);
    CHECK(covariant_derivative(metric_upper_field(fam.metric), ctx, CovDir::Vertical, p).max_abs() <
          1e-9);
  }

  SUBCASE("scalars reduce to delta and fiber derivatives") {
    TensorField sf;
    sf.n = 2;
    sf.idx = {};
    ScalarField H = fam.casimir_base;
    sf.comps = FlatField::make([H]<class S>(const VecN<S>& x, const VecN<S>& k) -> std::vector<S> {
      return {H.eval(x, k)};
    });
    TensorValue covh = covariant_derivative(sf, ctx, CovDir::Horizontal, p);
    TensorValue dd = delta_derivative(H, p, TensorValue::from_mat(ctx.N(p.x, p.k), lo_space(), lo_space()));
    for (int mu = 0; mu < 2; ++mu) CHECK(covh(mu) == doctest::Approx(dd(mu)).epsilon(1e-12));
    TensorValue covv = covariant_derivative(sf, ctx, CovDir::Vertical, p);
    VecN<double> dk = sgrad(H, p.x, p.k, Slot::Fiber);
    for (int mu = 0; mu < 2; ++mu) CHECK(covv(mu) == doctest::Approx(dk[mu]).epsilon(1e-12));
  }

  SUBCASE("k_{mu;nu} = N_{mu nu} - H^l_{mu nu} k_l vanishes for the quadratic seed") {
    TensorValue kc = covariant_derivative(momentum_coordinate_field(2), ctx, CovDir::Horizontal, p);
    CHECK(kc.max_abs() < 1e-9);
  }

  SUBCASE("dimension mismatch is rejected") {
    PhasePoint p4 = make_point(4, {0, 0, 0, 0}, {0.1, 0, 0, 0});
    CHECK_THROWS_AS(covariant_derivative(metric_lower_field(fam.metric), ctx, CovDir::Horizontal, p4),
                    DomainError);
  }
}

TEST_CASE("Hamilton-space vertical connection identity") {
  // for g_H metrics, C equals -1/2 g^H_{rho sigma} dbar^sigma g_H^{mu nu}
  MetricFamily fam = family(FamilyId::hamilton_from_h, 2, 1.0, 0.0, +1);
  PhasePoint p = make_point(2, {0.0, 0.0}, {0.5, 0.15});
  TensorValue C = vertical_connection(fam.metric, p);
  HamiltonMetric gh = hamilton_metric(*fam.generator_hamiltonian);
  MatN<double> gl = fam.metric.lower_at(p);
  for (int rho = 0; rho < 2; ++rho) {
    // dbar^sigma g_H^{mu nu} via duals on the erased field
    for (int mu = 0; mu < 2; ++mu)
      for (int nu = 0; nu < 2; ++nu) {
        double want = 0;
        for (int sg = 0; sg < 2; ++sg) {
          MatN<double> d = d_dir(gh.upper, p.x, p.k, Slot::Fiber, sg);
          want += -0.5 * gl(rho, sg) * d(mu, nu);
        }
        CHECK(C(rho, mu, nu) == doctest::Approx(want).epsilon(1e-9));
      }
  }
}
