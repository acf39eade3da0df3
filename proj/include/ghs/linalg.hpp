#pragma once

// Fixed-capacity dense containers for dimension n in {2,3,4}, generic over the
// scalar type so every routine here works on nested duals unchanged.

#include <array>
#include <cassert>
#include <cmath>

#include "ghs/dual.hpp"
#include "ghs/errors.hpp"

namespace ghs {

inline constexpr int kMaxDim = 4;

template <class S>
struct VecN {
  int n = 0;
  std::array<S, kMaxDim> c{};

  VecN() = default;
  explicit VecN(int n_) : n(n_) { assert(n >= 1 && n <= kMaxDim); }
  S& operator[](int i) { return c[static_cast<size_t>(i)]; }
  const S& operator[](int i) const { return c[static_cast<size_t>(i)]; }
};

template <class S>
struct MatN {
  int n = 0;
  std::array<S, kMaxDim * kMaxDim> c{};

  MatN() = default;
  explicit MatN(int n_) : n(n_) { assert(n >= 1 && n <= kMaxDim); }
  S& operator()(int i, int j) { return c[static_cast<size_t>(i * n + j)]; }
  const S& operator()(int i, int j) const { return c[static_cast<size_t>(i * n + j)]; }

  static MatN identity(int n_) {
    MatN m(n_);
    for (int i = 0; i < n_; ++i) m(i, i) = S(1.0);
    return m;
  }
};

template <class S>
struct Ten3N {
  int n = 0;
  std::array<S, kMaxDim * kMaxDim * kMaxDim> c{};

  Ten3N() = default;
  explicit Ten3N(int n_) : n(n_) {}
  S& operator()(int i, int j, int k) { return c[static_cast<size_t>((i * n + j) * n + k)]; }
  const S& operator()(int i, int j, int k) const {
    return c[static_cast<size_t>((i * n + j) * n + k)];
  }
};

template <class S>
struct Ten4N {
  int n = 0;
  std::array<S, kMaxDim * kMaxDim * kMaxDim * kMaxDim> c{};

  Ten4N() = default;
  explicit Ten4N(int n_) : n(n_) {}
  S& operator()(int i, int j, int k, int l) {
    return c[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
  }
  const S& operator()(int i, int j, int k, int l) const {
    return c[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
  }
};

// ---- basic operations ----

template <class S>
VecN<S> operator+(const VecN<S>& a, const VecN<S>& b) {
  VecN<S> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = a[i] + b[i];
  return r;
}
template <class S>
VecN<S> operator-(const VecN<S>& a, const VecN<S>& b) {
  VecN<S> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = a[i] - b[i];
  return r;
}
template <class S>
VecN<S> operator*(const VecN<S>& a, double s) {
  VecN<S> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = a[i] * s;
  return r;
}
template <class S>
VecN<S> operator*(double s, const VecN<S>& a) { return a * s; }

template <class S>
MatN<S> operator-(const MatN<S>& a, const MatN<S>& b) {
  MatN<S> r(a.n);
  for (int i = 0; i < a.n * a.n; ++i) r.c[static_cast<size_t>(i)] = a.c[static_cast<size_t>(i)] - b.c[static_cast<size_t>(i)];
  return r;
}
template <class S>
MatN<S> operator+(const MatN<S>& a, const MatN<S>& b) {
  MatN<S> r(a.n);
  for (int i = 0; i < a.n * a.n; ++i) r.c[static_cast<size_t>(i)] = a.c[static_cast<size_t>(i)] + b.c[static_cast<size_t>(i)];
  return r;
}

template <class S>
MatN<S> mat_mul(const MatN<S>& a, const MatN<S>& b) {
  MatN<S> r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      S s{};
      for (int k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

template <class S>
VecN<S> mat_vec(const MatN<S>& a, const VecN<S>& v) {
  VecN<S> r(a.n);
  for (int i = 0; i < a.n; ++i) {
    S s{};
    for (int j = 0; j < a.n; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

template <class S>
MatN<S> transpose(const MatN<S>& a) {
  MatN<S> r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r(i, j) = a(j, i);
  return r;
}

template <class S>
S dot(const VecN<S>& a, const VecN<S>& b) {
  S s{};
  for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
  return s;
}

// v^T M w
template <class S>
S quad_form(const MatN<S>& m, const VecN<S>& v, const VecN<S>& w) {
  S s{};
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) s += v[i] * m(i, j) * w[j];
  return s;
}

inline double max_abs(const VecN<double>& v) {
  double m = 0;
  for (int i = 0; i < v.n; ++i) m = std::max(m, std::fabs(v[i]));
  return m;
}
inline double max_abs(const MatN<double>& a) {
  double m = 0;
  for (int i = 0; i < a.n * a.n; ++i) m = std::max(m, std::fabs(a.c[static_cast<size_t>(i)]));
  return m;
}
inline double max_abs(const Ten3N<double>& a) {
  double m = 0;
  for (int i = 0; i < a.n * a.n * a.n; ++i) m = std::max(m, std::fabs(a.c[static_cast<size_t>(i)]));
  return m;
}
inline double max_abs(const Ten4N<double>& a) {
  double m = 0;
  for (int i = 0; i < a.n * a.n * a.n * a.n; ++i) m = std::max(m, std::fabs(a.c[static_cast<size_t>(i)]));
  return m;
}

// Gauss-Jordan inverse with partial pivoting on the deep value. Works for any
// scalar depth; throws DegenerateMetricError when the pivot underflows.
template <class S>
MatN<S> inverse(const MatN<S>& m) {
  const int n = m.n;
  MatN<S> a = m;
  MatN<S> inv = MatN<S>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(val(a(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double cand = std::fabs(val(a(r, col)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (!(best > 1e-300)) throw DegenerateMetricError("singular matrix in inverse()");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    S p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = a(r, col);
      if (val(f) == 0.0 && dual_depth_v<S> == 0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

// Signature-aware triangular factorization: returns E with E^T eta E = g,
// where eta = diag(signature). Gauge: E upper triangular with positive
// diagonal (LDL^T without pivoting, deterministic). Throws DomainError when
// the pivot signs do not match the requested signature.
template <class S>
MatN<S> signature_tetrad(const MatN<S>& g, const std::array<int, kMaxDim>& signature) {
  const int n = g.n;
  MatN<S> L = MatN<S>::identity(n);
  VecN<S> D(n);
  for (int j = 0; j < n; ++j) {
    S d = g(j, j);
    for (int s = 0; s < j; ++s) d -= L(j, s) * L(j, s) * D[s];
    if (std::fabs(val(d)) < 1e-300) throw DegenerateMetricError("degenerate metric in signature_tetrad");
    if ((val(d) > 0 ? 1 : -1) != signature[static_cast<size_t>(j)])
      throw DomainError("metric signature does not match requested signature");
    D[j] = d;
    for (int i = j + 1; i < n; ++i) {
      S x = g(i, j);
      for (int s = 0; s < j; ++s) x -= L(i, s) * L(j, s) * D[s];
      L(i, j) = x / d;
    }
  }
  MatN<S> e(n);  // e(alpha, mu) = sqrt(|D_alpha|) * L(mu, alpha)
  for (int alpha = 0; alpha < n; ++alpha) {
    S s = sqrt(signature[static_cast<size_t>(alpha)] > 0 ? D[alpha] : -D[alpha]);
    for (int mu = 0; mu < n; ++mu) e(alpha, mu) = s * L(mu, alpha);
  }
  return e;
}

}  // namespace ghs
