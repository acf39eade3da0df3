#pragma once

// Derivative engine: nested forward-mode (orders 1-3) and central finite
// differences with Richardson extrapolation (orders 1-2, kept as an
// independent oracle). The forward-mode helpers here are the only place that
// seeds dual directions; everything higher-level goes through them.

#include "ghs/fields.hpp"
#include "ghs/tensor_value.hpp"

namespace ghs {

// ---- dual lifting / extraction ----

template <class S>
VecN<Dual<S>> lift_dual(const VecN<S>& a) {
  VecN<Dual<S>> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i].v = a[i];
  return r;
}

template <class S>
S extract_d(const Dual<S>& r) { return r.d; }
template <class S>
VecN<S> extract_d(const VecN<Dual<S>>& r) {
  VecN<S> out(r.n);
  for (int i = 0; i < r.n; ++i) out[i] = r[i].d;
  return out;
}
template <class S>
MatN<S> extract_d(const MatN<Dual<S>>& r) {
  MatN<S> out(r.n);
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) out(i, j) = r(i, j).d;
  return out;
}
template <class S>
Ten3N<S> extract_d(const Ten3N<Dual<S>>& r) {
  Ten3N<S> out(r.n);
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      for (int k = 0; k < r.n; ++k) out(i, j, k) = r(i, j, k).d;
  return out;
}

// Directional derivative of a generic callable f(x,k) along coordinate `dir`
// of the given slot. Callers guard the depth; this asserts it.
template <class S, class Fn>
auto d_dir(Fn&& f, const VecN<S>& x, const VecN<S>& k, Slot slot, int dir) {
  static_assert(dual_depth_v<S> < kMaxDualDepth, "dual depth exhausted");
  auto xl = lift_dual(x);
  auto kl = lift_dual(k);
  if (slot == Slot::Space)
    xl[dir].d = S(1.0);
  else
    kl[dir].d = S(1.0);
  return extract_d(f(xl, kl));
}

// ---- scalar-field derivative helpers (generic over evaluation scalar) ----

template <class S>
VecN<S> sgrad(const ScalarField& f, const VecN<S>& x, const VecN<S>& k, Slot slot) {
  static_assert(dual_depth_v<S> < kMaxDualDepth, "dual depth exhausted");
  VecN<S> out(x.n);
  auto xl = lift_dual(x);
  auto kl = lift_dual(k);
  auto& seeded = (slot == Slot::Space) ? xl : kl;
  for (int i = 0; i < x.n; ++i) {
    seeded[i].d = S(1.0);
    out[i] = f.eval(xl, kl).d;
    seeded[i].d = S{};
  }
  return out;
}

// out(a,b) = D_a D_b f with D per slot (outer derivative first).
template <class S>
MatN<S> sgrad2(const ScalarField& f, const VecN<S>& x, const VecN<S>& k, Slot slot_a, Slot slot_b) {
  static_assert(dual_depth_v<S> + 1 < kMaxDualDepth, "dual depth exhausted");
  MatN<S> out(x.n);
  using DS = Dual<S>;
  auto xl = lift_dual(x);
  auto kl = lift_dual(k);
  for (int a = 0; a < x.n; ++a) {
    auto x2 = lift_dual(xl);
    auto k2 = lift_dual(kl);
    auto& outer = (slot_a == Slot::Space) ? x2 : k2;
    outer[a].d = DS(1.0);
    auto& inner = (slot_b == Slot::Space) ? x2 : k2;
    for (int b = 0; b < x.n; ++b) {
      inner[b].v.d = S(1.0);
      out(a, b) = f.eval(x2, k2).d.d;
      inner[b].v.d = S{};
    }
  }
  return out;
}

// Derivative of the metric components: out(d, mu, nu) = D_d g_{mu nu} (or of
// the upper components).
template <class S>
Ten3N<S> dmetric(const MetricField& g, const VecN<S>& x, const VecN<S>& k, Slot slot, bool lower) {
  static_assert(dual_depth_v<S> < kMaxDualDepth, "dual depth exhausted");
  Ten3N<S> out(x.n);
  auto xl = lift_dual(x);
  auto kl = lift_dual(k);
  auto& seeded = (slot == Slot::Space) ? xl : kl;
  for (int d = 0; d < x.n; ++d) {
    seeded[d].d = S(1.0);
    auto m = lower ? g.lower(xl, kl) : g.upper(xl, kl);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) out(d, i, j) = m(i, j).d;
    seeded[d].d = S{};
  }
  return out;
}

// ---- finite differences (oracle) ----

enum class DerivMode { Forward, FiniteDifference };

struct DerivativeEngine {
  DerivMode mode = DerivMode::Forward;
  double fd_step = 1e-5;  // relative step
  bool richardson = true;
};

namespace detail {

inline double fd_h(double step, double coord) { return step * std::max(1.0, std::fabs(coord)); }

template <class Fn>
double fd_first(Fn&& f, PhasePoint p, Slot slot, int i, double step, bool richardson) {
  auto& v = (slot == Slot::Space) ? p.x : p.k;
  const double c = v[i];
  const double h = fd_h(step, c);
  auto central = [&](double hh) {
    v[i] = c + hh;
    const double fp = f(p);
    v[i] = c - hh;
    const double fm = f(p);
    v[i] = c;
    return (fp - fm) / (2 * hh);
  };
  const double d1 = central(h);
  if (!richardson) return d1;
  const double d2 = central(h / 2);
  return (4 * d2 - d1) / 3;
}

template <class Fn>
double fd_second(Fn&& f, PhasePoint p, Slot slot, int i, int j, double step, bool richardson) {
  // the double difference amplifies roundoff as eps/h^2, so the second-order
  // stencil needs a larger step than the first-order one
  step = std::max(step, 3e-4);
  auto& v = (slot == Slot::Space) ? p.x : p.k;
  const double ci = v[i];
  const double cj = v[j];
  auto stencil = [&](double hi, double hj) {
    if (i == j) {
      v[i] = ci + hi;
      const double fp = f(p);
      v[i] = ci;
      const double f0 = f(p);
      v[i] = ci - hi;
      const double fm = f(p);
      v[i] = ci;
      return (fp - 2 * f0 + fm) / (hi * hi);
    }
    v[i] = ci + hi;
    v[j] = cj + hj;
    const double fpp = f(p);
    v[j] = cj - hj;
    const double fpm = f(p);
    v[i] = ci - hi;
    const double fmm = f(p);
    v[j] = cj + hj;
    const double fmp = f(p);
    v[i] = ci;
    v[j] = cj;
    return (fpp - fpm - fmp + fmm) / (4 * hi * hj);
  };
  const double hi = fd_h(step, ci), hj = fd_h(step, cj);
  const double d1 = stencil(hi, hj);
  if (!richardson) return d1;
  const double d2 = stencil(hi / 2, hj / 2);
  return (4 * d2 - d1) / 3;
}

}  // namespace detail

// FD first derivative of a scalar field with a caller-chosen step (used both
// as the oracle and for numeric-only Hamiltonians).
VecN<double> fd_gradient(const ScalarField& f, const PhasePoint& p, Slot slot, double step,
                         bool richardson);

// ---- phase_core operations ----

// D_{i1..im} f (slot fixed per call, orders 1..3 forward / 1..2 FD).
TensorValue phase_derivative(const ScalarField& f, const PhasePoint& p, Slot slot, int order,
                             const DerivativeEngine& eng = {});
// Same for the metric's lower components: out(dirs..., mu, nu).
TensorValue phase_derivative(const MetricField& g, const PhasePoint& p, Slot slot, int order,
                             const DerivativeEngine& eng = {});

// delta_mu f = d_mu f + N_{nu mu} dbar^nu f
TensorValue delta_derivative(const ScalarField& f, const PhasePoint& p, const TensorValue& N);
// delta_d g_{mu nu}, laid out (d, mu, nu)
TensorValue delta_derivative(const MetricField& g, const PhasePoint& p, const TensorValue& N);

TensorValue invert_metric(const TensorValue& g_lower);

}  // namespace ghs
