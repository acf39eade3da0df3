#include <cmath>

#include "doctest.h"
#include "ghs/geodesic.hpp"
#include "ghs/metric_zoo.hpp"

using namespace ghs;

TEST_CASE("minkowski is the flat metric everywhere") {
  FamilySpec s;
  s.id = FamilyId::minkowski;
  s.n = 4;
  MetricFamily fam = build_family(s);
  PhasePoint p = make_point(4, {0.3, -0.9, 0.2, 0.5}, {0.4, 0.1, -0.3, 0.2});
  MatN<double> g = fam.metric.lower_at(p);
  MatN<double> eta = MatN<double>::identity(4);
  for (int i = 1; i < 4; ++i) eta(i, i) = -1;
  CHECK(max_abs(g - eta) == 0.0);
}

TEST_CASE("momentum_desitter reduces to the base at k = 0") {
  FamilySpec s;
  s.id = FamilyId::momentum_desitter;
  s.n = 2;
  s.alpha = 0.2;
  MetricFamily fam = build_family(s);
  PhasePoint p = make_point(2, {0.7, -0.1}, {0.0, 0.0});
  MatN<double> g = fam.metric.lower_at(p);
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(-std::exp(2 * 0.2 * 0.7)).epsilon(1e-15));
  CHECK(g(0, 1) == 0.0);
}

TEST_CASE("conformal_maxsym factor at kbar^2 = 0.4 is 1.21") {
  FamilySpec s;
  s.id = FamilyId::conformal_maxsym;
  s.n = 2;
  s.lambda = 1.0;
  s.branch = +1;
  MetricFamily fam = build_family(s);
  PhasePoint p = make_point(2, {0.0, 0.0}, {0.7, 0.3});  // kbar^2 = 0.49 - 0.09 = 0.4
  MatN<double> g = fam.metric.lower_at(p);
  CHECK(g(0, 0) == doctest::Approx(1.21).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(-1.21).epsilon(1e-14));
}

TEST_CASE("signature is (+,-) after diagonalization at k = 0") {
  for (FamilyId id : {FamilyId::momentum_desitter, FamilyId::conformal_maxsym,
                      FamilyId::lorentz_invariant, FamilyId::generic_dgr}) {
    FamilySpec s;
    s.id = id;
    s.n = 2;
    s.alpha = 0.1;
    MetricFamily fam = build_family(s);
    PhasePoint p = make_point(2, {0.4, -0.6}, {0.0, 0.0});
    std::array<int, kMaxDim> sig{1, -1, -1, -1};
    CHECK_NOTHROW(signature_tetrad(fam.metric.lower_at(p), sig));
  }
}

TEST_CASE("tetrad lift") {
  FamilySpec flat;
  flat.id = FamilyId::momentum_desitter;
  flat.n = 2;
  flat.lambda = 1.0;
  MetricField zeta = build_metric(flat);  // momentum-only: alpha = 0

  SUBCASE("identity tetrad returns the momentum metric") {
    Tetrad id = base_tetrad(2, 0.0);
    MetricField lifted = tetrad_lift(zeta, id);
    PhasePoint p = make_point(2, {0.5, -0.3}, {0.3, 0.2});
    CHECK(max_abs(lifted.lower_at(p) - zeta.lower_at(p)) < 1e-15);
  }

  SUBCASE("dS tetrad with a flat momentum metric recovers the base") {
    FamilySpec mink;
    mink.id = FamilyId::minkowski;
    mink.n = 2;
    MetricField eta = build_metric(mink);
    Tetrad ds = base_tetrad(2, 0.3);
    MetricField lifted = tetrad_lift(eta, ds);
    PhasePoint p = make_point(2, {0.4, 0.2}, {0.1, -0.2});
    CHECK(lifted.lower_at(p)(1, 1) == doctest::Approx(-std::exp(2 * 0.3 * 0.4)).epsilon(1e-14));
  }

  SUBCASE("dS tetrad with the momentum dS metric matches the direct family") {
    Tetrad ds = base_tetrad(2, 0.3);
    MetricField lifted = tetrad_lift(zeta, ds);
    FamilySpec direct = flat;
    direct.alpha = 0.3;
    MetricField want = build_metric(direct);
    PhasePoint p = make_point(2, {0.4, 0.2}, {0.35, -0.15});
    CHECK(max_abs(lifted.lower_at(p) - want.lower_at(p)) < 1e-10);
    // and the contraction g^{mu nu} k_mu k_nu agrees
    CHECK(quad_form(lifted.upper_at(p), p.k, p.k) ==
          doctest::Approx(quad_form(want.upper_at(p), p.k, p.k)).epsilon(1e-10));
  }
}

TEST_CASE("lorentz_invariant families do not depend on the tetrad, generic_dgr does") {
  FamilySpec flat;
  flat.id = FamilyId::momentum_desitter;
  flat.n = 2;
  flat.lambda = 1.0;
  MetricField zeta = build_metric(flat);
  Tetrad t0 = base_tetrad(2, 0.3);
  Tetrad t1 = boosted_tetrad(t0, 0.8);
  PhasePoint p = make_point(2, {0.4, 0.2}, {0.35, -0.15});

  MetricField l0 = tetrad_lift(zeta, t0);
  MetricField l1 = tetrad_lift(zeta, t1);
  CHECK(max_abs(l0.lower_at(p) - l1.lower_at(p)) < 1e-12);

  FamilySpec gd;
  gd.id = FamilyId::generic_dgr;
  gd.n = 2;
  gd.alpha = 0.3;
  gd.f1 = FSel::one;
  gd.f2 = FSel::zero;
  gd.f3 = FSel::one;
  gd.f4 = FSel::zero;
  MetricField g0 = generic_dgr_metric(gd, t0);
  MetricField g1 = generic_dgr_metric(gd, t1);
  CHECK(max_abs(g0.lower_at(p) - g1.lower_at(p)) > 1e-3);
}

TEST_CASE("closed-form Hamiltonians") {
  SUBCASE("GR dS squared distance is kbar^2") {
    FamilySpec s;
    s.id = FamilyId::gr_desitter_2d;
    s.n = 2;
    s.alpha = 0.25;
    MetricFamily fam = build_family(s);
    PhasePoint p = make_point(2, {0.6, -0.4}, {0.8, 0.3});
    const double want = 0.64 - 0.09 * std::exp(-2 * 0.25 * 0.6);
    CHECK(fam.distance_hamiltonian->value(p) == doctest::Approx(want).epsilon(1e-15));
  }

  SUBCASE("maximally symmetric generator vanishes with k^2") {
    for (int branch : {+1, -1}) {
      CHECK(std::fabs(maxsym_hamiltonian(1e-12, 1.0, branch)) < 2e-12);
      CHECK(std::fabs(maxsym_distance(1e-12, 1.0, branch)) < 2e-12);
    }
  }

  SUBCASE("small-k^2 expansion of the generator") {
    const double u = 1e-6;
    for (int branch : {+1, -1}) {
      const double h = maxsym_hamiltonian(u, 1.0, branch);
      const double series = u - branch * (4.0 / 3) * std::pow(u, 1.5) + 2 * u * u;
      CHECK(std::fabs(h - series) / u < 1e-8);
    }
  }

  SUBCASE("every closed form satisfies the defining identity") {
    for (FamilyId id : {FamilyId::momentum_desitter, FamilyId::lorentz_invariant,
                        FamilyId::conformal, FamilyId::conformal_maxsym}) {
      FamilySpec s;
      s.id = id;
      s.n = 2;
      s.lambda = 1.0;
      s.alpha = 0.1;
      MetricFamily fam = build_family(s);
      REQUIRE(fam.distance_hamiltonian.has_value());
      PhasePoint p = make_point(2, {0.4, 0.2}, {0.35, -0.15});
      CHECK(std::fabs(hamiltonian_residual(*fam.distance_hamiltonian, fam.metric, p)) < 1e-12);
    }
  }

  SUBCASE("generic_dgr has none") {
    FamilySpec s;
    s.id = FamilyId::generic_dgr;
    s.n = 2;
    CHECK(!closed_form_hamiltonian(s).has_value());
  }
}

TEST_CASE("Lambda -> infinity degeneration") {
  FamilySpec base;
  base.id = FamilyId::gr_desitter_2d;
  base.n = 2;
  base.alpha = 0.1;
  MetricFamily gr = build_family(base);
  PhasePoint p = make_point(2, {0.3, -0.2}, {0.4, 0.25});
  for (FamilyId id : {FamilyId::momentum_desitter, FamilyId::lorentz_invariant,
                      FamilyId::conformal_maxsym}) {
    FamilySpec s;
    s.id = id;
    s.n = 2;
    s.lambda = 1e6;
    s.alpha = 0.1;
    MetricFamily fam = build_family(s);
    CHECK(max_abs(fam.metric.lower_at(p) - gr.metric.lower_at(p)) < 1e-6);
    CHECK(std::fabs(fam.distance_hamiltonian->value(p) - gr.casimir_base.value(p)) < 1e-6);
    CHECK(max_abs(vertical_connection(fam.metric, p).as_ten3()) < 1e-6);
  }
}

TEST_CASE("family spec validation") {
  FamilySpec s;
  s.id = FamilyId::gr_desitter_2d;
  s.n = 4;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.n = 2;
  s.lambda = -1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.lambda = 1;
  s.branch = 3;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  CHECK_THROWS_AS(family_from_string("no_such_family"), ConfigError);
}

TEST_CASE("hamilton_from_h domain guards") {
  CHECK_THROWS_AS(maxsym_hamiltonian(-0.1, 1.0, +1), DomainError);
  CHECK_THROWS_AS(maxsym_hamiltonian(0.3, 1.0, -1), DomainError);  // 2 sqrt(0.3) > 1
  FamilySpec s;
  s.id = FamilyId::hamilton_from_h;
  s.n = 2;
  MetricFamily fam = build_family(s);
  CHECK(!fam.in_domain(make_point(2, {0, 0}, {0.1, 0.3})));  // spacelike
  CHECK(fam.in_domain(make_point(2, {0, 0}, {0.5, 0.1})));
}
