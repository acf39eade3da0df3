#include "ghs/derivative.hpp"

namespace ghs {

namespace {

IndexSpec deriv_index(Slot slot) {
  // dbar^mu carries an upper fiber index, d_mu a lower spacetime index
  return slot == Slot::Fiber ? up_fiber() : lo_space();
}

void check_finite(const TensorValue& t, const char* what) {
  if (!t.all_finite()) throw Error(std::string("non-finite value while evaluating ") + what);
}

}  // namespace

VecN<double> fd_gradient(const ScalarField& f, const PhasePoint& p, Slot slot, double step,
                         bool richardson) {
  VecN<double> out(p.dim());
  auto eval = [&](const PhasePoint& q) { return f.value(q); };
  for (int i = 0; i < p.dim(); ++i)
    out[i] = detail::fd_first(eval, p, slot, i, step, richardson);
  return out;
}

TensorValue phase_derivative(const ScalarField& f, const PhasePoint& p, Slot slot, int order,
                             const DerivativeEngine& eng) {
  const int n = p.dim();
  if (order < 1 || order > 3) throw UnsupportedOrderError("phase_derivative: order must be 1..3");
  std::vector<IndexSpec> idx(static_cast<size_t>(order), deriv_index(slot));
  TensorValue out(n, idx);

  if (eng.mode == DerivMode::FiniteDifference || !f.analytic()) {
    if (order > 2) throw UnsupportedOrderError("finite differences support orders 1-2 only");
    auto eval = [&](const PhasePoint& q) { return f.value(q); };
    if (order == 1) {
      for (int i = 0; i < n; ++i)
        out(i) = detail::fd_first(eval, p, slot, i, eng.fd_step, eng.richardson);
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out(i, j) = detail::fd_second(eval, p, slot, i, j, eng.fd_step, eng.richardson);
    }
    check_finite(out, "scalar field (fd)");
    return out;
  }

  if (order == 1) {
    auto g = sgrad(f, p.x, p.k, slot);
    for (int i = 0; i < n; ++i) out(i) = g[i];
  } else if (order == 2) {
    auto h = sgrad2(f, p.x, p.k, slot, slot);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) = h(i, j);
  } else {
    auto x3 = lift_dual(lift_dual(lift_dual(p.x)));
    auto k3 = lift_dual(lift_dual(lift_dual(p.k)));
    auto& s3 = (slot == Slot::Space) ? x3 : k3;
    for (int i = 0; i < n; ++i) {
      s3[i].d = D2(1.0);
      for (int j = 0; j < n; ++j) {
        s3[j].v.d = D1(1.0);
        for (int l = 0; l < n; ++l) {
          s3[l].v.v.d = 1.0;
          out(i, j, l) = f.eval(x3, k3).d.d.d;
          s3[l].v.v.d = 0.0;
        }
        s3[j].v.d = D1{};
      }
      s3[i].d = D2{};
    }
  }
  check_finite(out, "scalar field");
  return out;
}

TensorValue phase_derivative(const MetricField& g, const PhasePoint& p, Slot slot, int order,
                             const DerivativeEngine& eng) {
  const int n = p.dim();
  if (order < 1 || order > 3) throw UnsupportedOrderError("phase_derivative: order must be 1..3");
  std::vector<IndexSpec> idx(static_cast<size_t>(order), deriv_index(slot));
  idx.push_back(lo_space());
  idx.push_back(lo_space());
  TensorValue out(n, idx);

  if (eng.mode == DerivMode::FiniteDifference) {
    if (order > 2) throw UnsupportedOrderError("finite differences support orders 1-2 only");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto eval = [&](const PhasePoint& q) { return g.lower_at(q)(a, b); };
        if (order == 1) {
          for (int i = 0; i < n; ++i)
            out.at({i, a, b}) = detail::fd_first(eval, p, slot, i, eng.fd_step, eng.richardson);
        } else {
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              out.at({i, j, a, b}) =
                  detail::fd_second(eval, p, slot, i, j, eng.fd_step, eng.richardson);
        }
      }
    check_finite(out, "metric field (fd)");
    return out;
  }

  if (order == 1) {
    auto t = dmetric(g, p.x, p.k, slot, /*lower=*/true);
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.at({d, a, b}) = t(d, a, b);
  } else if (order == 2) {
    auto x2 = lift_dual(lift_dual(p.x));
    auto k2 = lift_dual(lift_dual(p.k));
    auto& s2 = (slot == Slot::Space) ? x2 : k2;
    for (int i = 0; i < n; ++i) {
      s2[i].d = D1(1.0);
      for (int j = 0; j < n; ++j) {
        s2[j].v.d = 1.0;
        auto m = g.lower(x2, k2);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) out.at({i, j, a, b}) = m(a, b).d.d;
        s2[j].v.d = 0.0;
      }
      s2[i].d = D1{};
    }
  } else {
    auto x3 = lift_dual(lift_dual(lift_dual(p.x)));
    auto k3 = lift_dual(lift_dual(lift_dual(p.k)));
    auto& s3 = (slot == Slot::Space) ? x3 : k3;
    for (int i = 0; i < n; ++i) {
      s3[i].d = D2(1.0);
      for (int j = 0; j < n; ++j) {
        s3[j].v.d = D1(1.0);
        for (int l = 0; l < n; ++l) {
          s3[l].v.v.d = 1.0;
          auto m = g.lower(x3, k3);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) out.at({i, j, l, a, b}) = m(a, b).d.d.d;
          s3[l].v.v.d = 0.0;
        }
        s3[j].v.d = D1{};
      }
      s3[i].d = D2{};
    }
  }
  check_finite(out, "metric field");
  return out;
}

TensorValue delta_derivative(const ScalarField& f, const PhasePoint& p, const TensorValue& N) {
  const int n = p.dim();
  if (N.dim() != n || N.rank() != 2)
    throw DomainError("delta_derivative: N must be an n x n tensor at the same point");
  auto dx = sgrad(f, p.x, p.k, Slot::Space);
  auto dk = sgrad(f, p.x, p.k, Slot::Fiber);
  TensorValue out(n, {lo_space()});
  for (int mu = 0; mu < n; ++mu) {
    double v = dx[mu];
    for (int nu = 0; nu < n; ++nu) v += N(nu, mu) * dk[nu];
    out(mu) = v;
  }
  return out;
}

TensorValue delta_derivative(const MetricField& g, const PhasePoint& p, const TensorValue& N) {
  const int n = p.dim();
  if (N.dim() != n || N.rank() != 2)
    throw DomainError("delta_derivative: N must be an n x n tensor at the same point");
  auto dx = dmetric(g, p.x, p.k, Slot::Space, true);
  auto dk = dmetric(g, p.x, p.k, Slot::Fiber, true);
  TensorValue out(n, {lo_space(), lo_space(), lo_space()});
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double v = dx(d, a, b);
        for (int nu = 0; nu < n; ++nu) v += N(nu, d) * dk(nu, a, b);
        out(d, a, b) = v;
      }
  return out;
}

TensorValue invert_metric(const TensorValue& g_lower) {
  if (g_lower.rank() != 2) throw DomainError("invert_metric: rank-2 tensor required");
  MatN<double> inv = inverse(g_lower.as_mat());
  auto idx = g_lower.indices();
  for (auto& s : idx) s.upper = !s.upper;
  TensorValue out(g_lower.dim(), idx);
  for (int i = 0; i < g_lower.dim(); ++i)
    for (int j = 0; j < g_lower.dim(); ++j) out(i, j) = inv(i, j);
  return out;
}

}  // namespace ghs
