#pragma once

#include <cmath>

#include "ghs/errors.hpp"
#include "ghs/linalg.hpp"

namespace ghs {

// A spacetime position x together with a fiber momentum k. Dimension 2 or 4.
struct PhasePoint {
  VecN<double> x;
  VecN<double> k;

  PhasePoint() = default;
  PhasePoint(VecN<double> x_, VecN<double> k_) : x(x_), k(k_) {
    if (x.n != k.n) throw DomainError("phase point: x and k dimensions differ");
    if (x.n != 2 && x.n != 4) throw DomainError("phase point: dimension must be 2 or 4");
    for (int i = 0; i < x.n; ++i)
      if (!std::isfinite(x[i]) || !std::isfinite(k[i]))
        throw DomainError("phase point: non-finite component");
  }

  int dim() const { return x.n; }
};

inline PhasePoint make_point(int n, std::initializer_list<double> xs, std::initializer_list<double> ks) {
  VecN<double> x(n), k(n);
  int i = 0;
  for (double v : xs) x[i++] = v;
  i = 0;
  for (double v : ks) k[i++] = v;
  return PhasePoint(x, k);
}

// Lift a double point to scalar type S with zero derivative parts.
template <class S>
VecN<S> lift(const VecN<double>& a) {
  VecN<S> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = S(a[i]);
  return r;
}

}  // namespace ghs
