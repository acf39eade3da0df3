#pragma once

// Type-erased phase-space fields evaluable at every supported dual depth.
// Evaluators are stored once as a generic callable and dispatched through a
// small virtual interface with one overload per scalar type; combinators
// (nonlinear connection, affine connections, curvature) differentiate these
// erased fields by calling them with dual-valued arguments.

#include <memory>
#include <utility>

#include "ghs/dual.hpp"
#include "ghs/errors.hpp"
#include "ghs/linalg.hpp"
#include "ghs/phase_point.hpp"

namespace ghs {

#define GHS_FOREACH_SCALAR(X) \
  X(double)                   \
  X(::ghs::D1)                \
  X(::ghs::D2)                \
  X(::ghs::D3)                \
  X(::ghs::D4)                \
  X(::ghs::D5)                \
  X(::ghs::D6)

template <class S>
using IdOf = S;

template <template <class> class V>
struct FieldIface {
  virtual ~FieldIface() = default;
#define GHS_DECL_EVAL(S) virtual V<S> eval(const VecN<S>& x, const VecN<S>& k) const = 0;
  GHS_FOREACH_SCALAR(GHS_DECL_EVAL)
#undef GHS_DECL_EVAL
};

template <template <class> class V, class F>
struct FieldImpl final : FieldIface<V> {
  F f;
  explicit FieldImpl(F fn) : f(std::move(fn)) {}
#define GHS_IMPL_EVAL(S) \
  V<S> eval(const VecN<S>& x, const VecN<S>& k) const override { return f(x, k); }
  GHS_FOREACH_SCALAR(GHS_IMPL_EVAL)
#undef GHS_IMPL_EVAL
};

// Evaluator available only at plain double (numeric fields, e.g. a shooting
// solve); dual evaluation raises UnsupportedOrderError.
template <template <class> class V, class F>
struct NumericFieldImpl final : FieldIface<V> {
  F f;
  explicit NumericFieldImpl(F fn) : f(std::move(fn)) {}
  V<double> eval(const VecN<double>& x, const VecN<double>& k) const override { return f(x, k); }
#define GHS_IMPL_EVAL(S)                                                 \
  V<S> eval(const VecN<S>&, const VecN<S>&) const override {            \
    throw UnsupportedOrderError("field has no analytic derivatives");   \
  }
  GHS_IMPL_EVAL(::ghs::D1)
  GHS_IMPL_EVAL(::ghs::D2)
  GHS_IMPL_EVAL(::ghs::D3)
  GHS_IMPL_EVAL(::ghs::D4)
  GHS_IMPL_EVAL(::ghs::D5)
  GHS_IMPL_EVAL(::ghs::D6)
#undef GHS_IMPL_EVAL
};

template <template <class> class V>
class Field {
 public:
  Field() = default;

  template <class F>
  static Field make(F f) {
    Field out;
    out.p_ = std::make_shared<const FieldImpl<V, F>>(std::move(f));
    return out;
  }

  template <class F>
  static Field make_numeric(F f) {
    Field out;
    out.p_ = std::make_shared<const NumericFieldImpl<V, F>>(std::move(f));
    return out;
  }

  template <class S>
  V<S> operator()(const VecN<S>& x, const VecN<S>& k) const {
    return p_->eval(x, k);
  }

  explicit operator bool() const { return static_cast<bool>(p_); }

 private:
  std::shared_ptr<const FieldIface<V>> p_;
};

using ScalarFn = Field<IdOf>;
using VectorField = Field<VecN>;
using MatrixField = Field<MatN>;
using Ten3Field = Field<Ten3N>;

// ---- scalar field with metadata ----

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int n, ScalarFn f, bool analytic = true) : n_(n), f_(std::move(f)), analytic_(analytic) {}

  template <class F>
  static ScalarField make(int n, F f) {
    return ScalarField(n, ScalarFn::make(std::move(f)), true);
  }
  template <class F>
  static ScalarField make_numeric(int n, F f) {
    return ScalarField(n, ScalarFn::make_numeric(std::move(f)), false);
  }

  int dim() const { return n_; }
  bool analytic() const { return analytic_; }

  template <class S>
  S eval(const VecN<S>& x, const VecN<S>& k) const {
    return f_(x, k);
  }
  double value(const PhasePoint& p) const { return f_(p.x, p.k); }

  explicit operator bool() const { return static_cast<bool>(f_); }

 private:
  int n_ = 0;
  ScalarFn f_;
  bool analytic_ = true;
};

// ---- metric field ----

struct MetricParams {
  int n = 2;
  double lambda = 1.0;  // deformation scale
  double alpha = 0.0;   // cosmological constant of the de Sitter base
};

// Evaluator of g_{mu nu}(x,k); the upper components are obtained by generic
// inversion so they stay exact under dual evaluation.
class MetricField {
 public:
  MetricField() = default;
  MetricField(MetricParams params, MatrixField lower) : params_(params), lower_(std::move(lower)) {}

  template <class F>
  static MetricField make(MetricParams params, F lower) {
    return MetricField(params, MatrixField::make(std::move(lower)));
  }

  int dim() const { return params_.n; }
  const MetricParams& params() const { return params_; }

  template <class S>
  MatN<S> lower(const VecN<S>& x, const VecN<S>& k) const {
    return lower_(x, k);
  }
  template <class S>
  MatN<S> upper(const VecN<S>& x, const VecN<S>& k) const {
    return inverse(lower_(x, k));
  }

  MatN<double> lower_at(const PhasePoint& p) const { return lower(p.x, p.k); }
  MatN<double> upper_at(const PhasePoint& p) const { return upper(p.x, p.k); }

  const MatrixField& lower_field() const { return lower_; }

  explicit operator bool() const { return static_cast<bool>(lower_); }

 private:
  MetricParams params_;
  MatrixField lower_;
};

}  // namespace ghs
