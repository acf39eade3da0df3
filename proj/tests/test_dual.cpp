#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "ghs/dual.hpp"

using namespace ghs;

namespace {

// f(x) = exp(sin(x)) / sqrt(1 + x^2), generic over the scalar
template <class S>
S testfn(const S& x) {
  return exp(sin(x)) / sqrt(1.0 + x * x);
}

double testfn_d1(double x) {
  // analytic first derivative
  const double f = std::exp(std::sin(x)) / std::sqrt(1 + x * x);
  return f * (std::cos(x) - x / (1 + x * x));
}

}  // namespace

TEST_CASE("first derivative matches the analytic one") {
  for (double x : {-1.3, -0.2, 0.0, 0.7, 2.1}) {
    D1 r = testfn(D1{x, 1.0});
    CHECK(r.v == doctest::Approx(testfn(x)).epsilon(1e-15));
    CHECK(r.d == doctest::Approx(testfn_d1(x)).epsilon(1e-13));
  }
}

TEST_CASE("nested duals give symmetric second and third derivatives") {
  const double x = 0.37;
  // d2/dx2 via two nesting orders
  D2 a{{x, 1.0}, {1.0, 0.0}};
  D2 r = testfn(a);
  const double fd2 = (testfn(x + 1e-5) - 2 * testfn(x) + testfn(x - 1e-5)) / 1e-10;
  CHECK(r.d.d == doctest::Approx(fd2).epsilon(1e-5));

  // third derivative: compare against a central difference of the exact first
  D3 b{{{x, 1.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}}};
  D3 s = testfn(b);
  const double h = 1e-4;
  const double fd3 = (testfn_d1(x + h) - 2 * testfn_d1(x) + testfn_d1(x - h)) / (h * h);
  CHECK(s.d.d.d == doctest::Approx(fd3).epsilon(1e-5));
}

TEST_CASE("elementary functions recurse through nesting") {
  D2 x{{0.4, 1.0}, {1.0, 0.0}};
  D2 y = atanh(x) + asinh(x) - log1p(x) + pow_i(x, 3);
  const double v = std::atanh(0.4) + std::asinh(0.4) - std::log1p(0.4) + 0.064;
  CHECK(y.v.v == doctest::Approx(v).epsilon(1e-15));
  CHECK(finite_deep(y));
}

TEST_CASE("val and finite_deep reach through nesting") {
  D3 x{};
  x.v.v.v = 2.5;
  CHECK(val(x) == 2.5);
  x.d.v.v = std::nan("");
  CHECK(!finite_deep(x));
}
