#include "ghs/connections.hpp"

namespace ghs {

ConnectionContext make_connection_context(const MetricField& g, const ScalarField& H) {
  ConnectionContext ctx;
  ctx.metric = g;
  ctx.hamiltonian = H;
  ctx.N = MatrixField::make([H]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
    if constexpr (dual_depth_v<S> + 3 <= kMaxDualDepth) {
      return nonlinear_connection_eval(H, x, k);
    } else {
      throw UnsupportedOrderError("nonlinear connection: dual depth exhausted");
    }
  });
  MatrixField Nf = ctx.N;
  ctx.hconn = Ten3Field::make([Nf]<class S>(const VecN<S>& x, const VecN<S>& k) -> Ten3N<S> {
    if constexpr (dual_depth_v<S> < kMaxDualDepth) {
      return dbar_of_matrix(Nf, x, k);
    } else {
      throw UnsupportedOrderError("horizontal connection: dual depth exhausted");
    }
  });
  ctx.hconn_metrical =
      Ten3Field::make([g, Nf]<class S>(const VecN<S>& x, const VecN<S>& k) -> Ten3N<S> {
        if constexpr (dual_depth_v<S> < kMaxDualDepth) {
          return horizontal_metrical_eval(g, Nf, x, k);
        } else {
          throw UnsupportedOrderError("horizontal connection: dual depth exhausted");
        }
      });
  ctx.cconn = Ten3Field::make([g]<class S>(const VecN<S>& x, const VecN<S>& k) -> Ten3N<S> {
    if constexpr (dual_depth_v<S> < kMaxDualDepth) {
      return vertical_connection_eval(g, x, k);
    } else {
      throw UnsupportedOrderError("vertical connection: dual depth exhausted");
    }
  });
  return ctx;
}

ConnectionSet connections_at(const ConnectionContext& ctx, const PhasePoint& p) {
  ConnectionSet out;
  out.at = p;
  out.N = TensorValue::from_mat(ctx.N(p.x, p.k), lo_space(), lo_space());
  out.H = TensorValue::from_ten3(ctx.hconn(p.x, p.k), up_space(), lo_space(), lo_space());
  out.C = TensorValue::from_ten3(ctx.cconn(p.x, p.k), lo_space(), up_fiber(), up_fiber());
  out.asym_n = out.N.symmetrize(0, 1);
  out.asym_h = out.H.symmetrize(1, 2);
  out.asym_c = out.C.symmetrize(1, 2);
  return out;
}

TensorValue vertical_connection(const MetricField& g, const PhasePoint& p) {
  return TensorValue::from_ten3(vertical_connection_eval(g, p.x, p.k), lo_space(), up_fiber(),
                                up_fiber());
}

HamiltonMetric hamilton_metric(const ScalarField& H) {
  HamiltonMetric hm;
  hm.source = H;
  hm.upper = MatrixField::make([H]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
    if constexpr (dual_depth_v<S> + 2 <= kMaxDualDepth) {
      return hamilton_metric_eval(H, x, k);
    } else {
      throw UnsupportedOrderError("hamilton metric: dual depth exhausted");
    }
  });
  return hm;
}

TensorValue nonlinear_connection(const ScalarField& H, const PhasePoint& p) {
  return TensorValue::from_mat(nonlinear_connection_eval(H, p.x, p.k), lo_space(), lo_space());
}

MatrixField nonlinear_connection_field(const ScalarField& H) {
  return MatrixField::make([H]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
    if constexpr (dual_depth_v<S> + 3 <= kMaxDualDepth) {
      return nonlinear_connection_eval(H, x, k);
    } else {
      throw UnsupportedOrderError("nonlinear connection: dual depth exhausted");
    }
  });
}

TensorValue horizontal_connection_from_N(const MatrixField& N, const PhasePoint& p) {
  return TensorValue::from_ten3(dbar_of_matrix(N, p.x, p.k), up_space(), lo_space(), lo_space());
}

TensorValue horizontal_connection_metrical(const MetricField& g, const MatrixField& N,
                                           const PhasePoint& p) {
  return TensorValue::from_ten3(horizontal_metrical_eval(g, N, p.x, p.k), up_space(), lo_space(),
                                lo_space());
}

TensorValue covariant_derivative(const TensorField& T, const ConnectionContext& ctx, CovDir dir,
                                 const PhasePoint& p) {
  const int n = T.n;
  const int rank = static_cast<int>(T.idx.size());
  if (p.dim() != n) throw DomainError("covariant_derivative: dimension mismatch");

  // T, dT/dx_d and dT/dk_d at p
  std::vector<double> tv = T.comps(p.x, p.k);
  std::vector<std::vector<double>> dtx(static_cast<size_t>(n)), dtk(static_cast<size_t>(n));
  for (int d = 0; d < n; ++d) {
    dtx[static_cast<size_t>(d)] = d_dir(T.comps, p.x, p.k, Slot::Space, d);
    dtk[static_cast<size_t>(d)] = d_dir(T.comps, p.x, p.k, Slot::Fiber, d);
  }
  MatN<double> Nv = ctx.N ? ctx.N(p.x, p.k) : MatN<double>(n);
  // the affine connection entering covariant derivatives is the unique
  // metrical one; on autoparallel families it coincides with dbar N
  Ten3N<double> conn =
      (dir == CovDir::Horizontal) ? ctx.hconn_metrical(p.x, p.k) : ctx.cconn(p.x, p.k);

  std::vector<IndexSpec> oidx = T.idx;
  oidx.push_back(dir == CovDir::Horizontal ? lo_space() : up_fiber());
  TensorValue out(n, oidx);

  std::vector<int> ix(static_cast<size_t>(rank), 0);
  const size_t ncomp = tv.size();
  auto flat_of = [&](const std::vector<int>& jx) {
    size_t f = 0;
    for (int d = 0; d < rank; ++d) f = f * static_cast<size_t>(n) + static_cast<size_t>(jx[static_cast<size_t>(d)]);
    return f;
  };
  for (size_t f = 0; f < ncomp; ++f) {
    size_t rem = f;
    for (int d = rank - 1; d >= 0; --d) {
      ix[static_cast<size_t>(d)] = static_cast<int>(rem % static_cast<size_t>(n));
      rem /= static_cast<size_t>(n);
    }
    for (int rho = 0; rho < n; ++rho) {
      double v;
      if (dir == CovDir::Horizontal) {
        // delta_rho T = d_rho T + N_{lambda rho} dbar^lambda T
        v = dtx[static_cast<size_t>(rho)][f];
        for (int l = 0; l < n; ++l) v += Nv(l, rho) * dtk[static_cast<size_t>(l)][f];
        for (int pos = 0; pos < rank; ++pos) {
          std::vector<int> jx = ix;
          for (int l = 0; l < n; ++l) {
            jx[static_cast<size_t>(pos)] = l;
            const double tl = tv[flat_of(jx)];
            if (T.idx[static_cast<size_t>(pos)].upper)
              v += tl * conn(ix[static_cast<size_t>(pos)], l, rho);  // +T^{..l..} H^{mu}_{l rho}
            else
              v -= tl * conn(l, ix[static_cast<size_t>(pos)], rho);  // -T_{..l..} H^{l}_{nu rho}
          }
        }
      } else {
        // dbar^rho T with C-terms
        v = dtk[static_cast<size_t>(rho)][f];
        for (int pos = 0; pos < rank; ++pos) {
          std::vector<int> jx = ix;
          for (int l = 0; l < n; ++l) {
            jx[static_cast<size_t>(pos)] = l;
            const double tl = tv[flat_of(jx)];
            if (T.idx[static_cast<size_t>(pos)].upper)
              v += tl * conn(l, ix[static_cast<size_t>(pos)], rho);  // +T^{..l..} C_l^{mu rho}
            else
              v -= tl * conn(ix[static_cast<size_t>(pos)], l, rho);  // -T_{..l..} C_{nu}^{l rho}
          }
        }
      }
      out.components()[f * static_cast<size_t>(n) + static_cast<size_t>(rho)] = v;
    }
  }
  return out;
}

TensorField metric_lower_field(const MetricField& g) {
  TensorField t;
  t.n = g.dim();
  t.idx = {lo_space(), lo_space()};
  t.comps = FlatField::make([g]<class S>(const VecN<S>& x, const VecN<S>& k) -> std::vector<S> {
    MatN<S> m = g.lower(x, k);
    return std::vector<S>(m.c.begin(), m.c.begin() + static_cast<long>(x.n) * x.n);
  });
  return t;
}

TensorField metric_upper_field(const MetricField& g) {
  TensorField t;
  t.n = g.dim();
  t.idx = {up_space(), up_space()};
  t.comps = FlatField::make([g]<class S>(const VecN<S>& x, const VecN<S>& k) -> std::vector<S> {
    MatN<S> m = g.upper(x, k);
    return std::vector<S>(m.c.begin(), m.c.begin() + static_cast<long>(x.n) * x.n);
  });
  return t;
}

TensorField vertical_connection_field_t(const MetricField& g) {
  TensorField t;
  t.n = g.dim();
  t.idx = {lo_space(), up_fiber(), up_fiber()};
  t.comps = FlatField::make([g]<class S>(const VecN<S>& x, const VecN<S>& k) -> std::vector<S> {
    if constexpr (dual_depth_v<S> < kMaxDualDepth) {
      Ten3N<S> c = vertical_connection_eval(g, x, k);
      return std::vector<S>(c.c.begin(), c.c.begin() + static_cast<long>(x.n) * x.n * x.n);
    } else {
      throw UnsupportedOrderError("vertical connection: dual depth exhausted");
    }
  });
  return t;
}

TensorField momentum_coordinate_field(int n) {
  TensorField t;
  t.n = n;
  t.idx = {lo_space()};
  t.comps = FlatField::make([n]<class S>(const VecN<S>&, const VecN<S>& k) -> std::vector<S> {
    return std::vector<S>(k.c.begin(), k.c.begin() + n);
  });
  return t;
}

}  // namespace ghs
