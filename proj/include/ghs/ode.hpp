#pragma once

// Adaptive Dormand-Prince 5(4) with PI step-size control and cubic-Hermite
// dense output over the accepted steps.

#include <functional>
#include <vector>

#include "ghs/errors.hpp"

namespace ghs {

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_steps = 200000;
};

using OdeRhs = std::function<void(double t, const std::vector<double>& y, std::vector<double>& dy)>;

struct OdeSolution {
  std::vector<double> ts;
  std::vector<std::vector<double>> ys;
  std::vector<std::vector<double>> fs;  // rhs at the stored points
  int steps_taken = 0;

  // cubic Hermite interpolation between accepted steps
  std::vector<double> eval(double t) const;
  const std::vector<double>& back() const { return ys.back(); }
};

OdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                          const OdeOptions& opts = {});

}  // namespace ghs
