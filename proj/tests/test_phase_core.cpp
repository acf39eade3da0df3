#include <cmath>

#include "doctest.h"
#include "ghs/derivative.hpp"
#include "ghs/metric_zoo.hpp"

using namespace ghs;

namespace {

ScalarField light_cone_h() {
  // H = k0^2 - k1^2
  return ScalarField::make(2, []<class S>(const VecN<S>&, const VecN<S>& k) -> S {
    return sq(k[0]) - sq(k[1]);
  });
}

}  // namespace

TEST_CASE("phase points validate dimension and finiteness") {
  CHECK_THROWS_AS(make_point(2, {0.0, 1.0}, {std::nan(""), 0.0}), DomainError);
  VecN<double> x(2), k(4);
  CHECK_THROWS_AS(PhasePoint(x, k), DomainError);
}

TEST_CASE("fiber derivative of a quadratic Hamiltonian") {
  ScalarField H = light_cone_h();
  PhasePoint p = make_point(2, {0.3, -0.2}, {0.7, 0.4});
  TensorValue d = phase_derivative(H, p, Slot::Fiber, 1);
  CHECK(d(0) == doctest::Approx(2 * 0.7).epsilon(1e-15));
  CHECK(d(1) == doctest::Approx(-2 * 0.4).epsilon(1e-15));

  ScalarField one = ScalarField::make(2, []<class S>(const VecN<S>&, const VecN<S>&) -> S {
    return S(1.0);
  });
  CHECK(phase_derivative(one, p, Slot::Fiber, 1).max_abs() == 0.0);
  CHECK(phase_derivative(one, p, Slot::Space, 2).max_abs() == 0.0);
}

TEST_CASE("order above 3 is rejected, order 3 works") {
  ScalarField H = light_cone_h();
  PhasePoint p = make_point(2, {0.0, 0.0}, {0.2, 0.1});
  CHECK_THROWS_AS(phase_derivative(H, p, Slot::Fiber, 4), UnsupportedOrderError);
  TensorValue d3 = phase_derivative(H, p, Slot::Fiber, 3);
  CHECK(d3.max_abs() == 0.0);  // quadratic
  DerivativeEngine fd{DerivMode::FiniteDifference, 1e-5, true};
  CHECK_THROWS_AS(phase_derivative(H, p, Slot::Fiber, 3, fd), UnsupportedOrderError);
}

TEST_CASE("metric fiber derivative matches the finite-difference oracle") {
  FamilySpec s;
  s.id = FamilyId::momentum_desitter;
  s.n = 2;
  s.lambda = 1.0;
  MetricField g = build_metric(s);
  PhasePoint p = make_point(2, {0.0, 0.0}, {0.3, 0.4});
  TensorValue ad = phase_derivative(g, p, Slot::Fiber, 1);
  DerivativeEngine eng{DerivMode::FiniteDifference, 1e-5, true};
  TensorValue fd = phase_derivative(g, p, Slot::Fiber, 1, eng);
  for (size_t i = 0; i < ad.components().size(); ++i)
    CHECK(ad.components()[i] == doctest::Approx(fd.components()[i]).epsilon(1e-8));
}

TEST_CASE("forward mode vs finite differences across the family catalog") {
  std::vector<FamilySpec> fams;
  for (FamilyId id : {FamilyId::minkowski, FamilyId::gr_desitter_2d, FamilyId::momentum_desitter,
                      FamilyId::lorentz_invariant, FamilyId::conformal, FamilyId::conformal_maxsym,
                      FamilyId::generic_dgr, FamilyId::hamilton_from_h}) {
    FamilySpec s;
    s.id = id;
    s.n = 2;
    s.lambda = 1.0;
    s.alpha = (id == FamilyId::minkowski) ? 0.0 : 0.1;
    if (id == FamilyId::generic_dgr) {
      s.f1 = FSel::one;
      s.f2 = FSel::zero;
    }
    fams.push_back(s);
  }
  DerivativeEngine fd_eng{DerivMode::FiniteDifference, 1e-5, true};
  uint64_t seed = 1234;
  auto uniform = [&seed](double lo, double hi) {
    seed += 0x9e3779b97f4a7c15ULL;
    uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return lo + (hi - lo) * (static_cast<double>(z >> 11) * 0x1.0p-53);
  };
  for (const FamilySpec& s : fams) {
    MetricFamily fam = build_family(s);
    int accepted = 0;
    while (accepted < 100) {
      VecN<double> x(2), k(2);
      for (int i = 0; i < 2; ++i) x[i] = uniform(-1, 1);
      for (int i = 0; i < 2; ++i) k[i] = uniform(-0.5, 0.5);
      PhasePoint p(x, k);
      if (fam.in_domain && !fam.in_domain(p)) continue;
      ++accepted;
      for (Slot slot : {Slot::Space, Slot::Fiber}) {
        for (int order : {1, 2}) {
          TensorValue ad = phase_derivative(fam.metric, p, slot, order);
          TensorValue fd = phase_derivative(fam.metric, p, slot, order, fd_eng);
          for (size_t i = 0; i < ad.components().size(); ++i) {
            const double scale = std::max(1.0, std::fabs(ad.components()[i]));
            CHECK(std::fabs(ad.components()[i] - fd.components()[i]) / scale < 1e-6);
          }
        }
      }
    }
  }
}

TEST_CASE("mixed fiber derivatives commute") {
  FamilySpec s;
  s.id = FamilyId::conformal_maxsym;
  s.n = 2;
  s.lambda = 1.0;
  s.alpha = 0.1;
  MetricFamily fam = build_family(s);
  PhasePoint p = make_point(2, {0.4, 0.1}, {0.35, -0.2});
  MatN<double> h = sgrad2(*fam.distance_hamiltonian, p.x, p.k, Slot::Fiber, Slot::Fiber);
  CHECK(std::fabs(h(0, 1) - h(1, 0)) < 1e-12);
}

TEST_CASE("delta derivative reduces to the plain one for vanishing N") {
  ScalarField H = light_cone_h();
  PhasePoint p = make_point(2, {0.3, 0.1}, {0.5, -0.2});
  TensorValue zero_n(2, {lo_space(), lo_space()});
  TensorValue d = delta_derivative(H, p, zero_n);
  CHECK(d.max_abs() == 0.0);  // H is x-independent
  TensorValue bad(4, {lo_space(), lo_space()});
  CHECK_THROWS_AS(delta_derivative(H, p, bad), DomainError);
}

TEST_CASE("invert_metric") {
  TensorValue id2(2, {lo_space(), lo_space()});
  id2(0, 0) = 1;
  id2(1, 1) = 1;
  TensorValue inv = invert_metric(id2);
  CHECK(inv(0, 0) == 1.0);
  CHECK(inv(1, 0) == 0.0);
  CHECK(inv.indices()[0].upper);

  // diag(1, -e^{2 alpha x0})
  const double w = std::exp(0.4);
  TensorValue dg(2, {lo_space(), lo_space()});
  dg(0, 0) = 1;
  dg(1, 1) = -w;
  TensorValue dginv = invert_metric(dg);
  CHECK(dginv(1, 1) == doctest::Approx(-1 / w).epsilon(1e-15));

  // product with the inverse is the identity, metric_ds at a sample point
  FamilySpec s;
  s.id = FamilyId::momentum_desitter;
  s.n = 2;
  MetricFamily fam = build_family(s);
  PhasePoint p = make_point(2, {0.0, 0.0}, {0.5, 0.2});
  TensorValue low = TensorValue::from_mat(fam.metric.lower_at(p), lo_space(), lo_space());
  TensorValue up = invert_metric(low);
  MatN<double> prod = mat_mul(up.as_mat(), low.as_mat());
  CHECK(max_abs(prod - MatN<double>::identity(2)) < 1e-12);

  // double inversion returns the original
  TensorValue twice = invert_metric(invert_metric(low));
  for (size_t i = 0; i < low.components().size(); ++i)
    CHECK(std::fabs(twice.components()[i] - low.components()[i]) < 1e-10);

  TensorValue sing(2, {lo_space(), lo_space()});
  sing(0, 0) = 1;  // rank deficient
  CHECK_THROWS_AS(invert_metric(sing), DegenerateMetricError);
}
