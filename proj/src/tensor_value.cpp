#include "ghs/tensor_value.hpp"

#include <algorithm>
#include <cmath>

namespace ghs {

namespace {
size_t pow_n(int n, int r) {
  size_t s = 1;
  for (int i = 0; i < r; ++i) s *= static_cast<size_t>(n);
  return s;
}
}  // namespace

TensorValue::TensorValue(int n, std::vector<IndexSpec> indices)
    : n_(n), idx_(std::move(indices)), c_(pow_n(n, static_cast<int>(idx_.size())), 0.0) {
  if (idx_.size() > 5) throw DomainError("tensor rank above 5 not supported");
}

TensorValue TensorValue::scalar(double v) {
  TensorValue t(1, {});
  t.c_ = {v};
  return t;
}

TensorValue TensorValue::from_vec(const VecN<double>& v, IndexSpec spec) {
  TensorValue t(v.n, {spec});
  for (int i = 0; i < v.n; ++i) t(i) = v[i];
  return t;
}

TensorValue TensorValue::from_mat(const MatN<double>& m, IndexSpec i0, IndexSpec i1) {
  TensorValue t(m.n, {i0, i1});
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) t(i, j) = m(i, j);
  return t;
}

TensorValue TensorValue::from_ten3(const Ten3N<double>& s, IndexSpec i0, IndexSpec i1,
                                   IndexSpec i2) {
  TensorValue t(s.n, {i0, i1, i2});
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      for (int k = 0; k < s.n; ++k) t(i, j, k) = s(i, j, k);
  return t;
}

TensorValue TensorValue::from_ten4(const Ten4N<double>& s, IndexSpec i0, IndexSpec i1, IndexSpec i2,
                                   IndexSpec i3) {
  TensorValue t(s.n, {i0, i1, i2, i3});
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      for (int k = 0; k < s.n; ++k)
        for (int l = 0; l < s.n; ++l) t(i, j, k, l) = s(i, j, k, l);
  return t;
}

size_t TensorValue::flat(std::initializer_list<int> ix) const {
  size_t f = 0;
  for (int i : ix) f = f * static_cast<size_t>(n_) + static_cast<size_t>(i);
  return f;
}

double TensorValue::max_abs() const {
  double m = 0;
  for (double v : c_) m = std::max(m, std::fabs(v));
  return m;
}

bool TensorValue::all_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

VecN<double> TensorValue::as_vec() const {
  VecN<double> v(n_);
  for (int i = 0; i < n_; ++i) v[i] = (*this)(i);
  return v;
}

MatN<double> TensorValue::as_mat() const {
  MatN<double> m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

Ten3N<double> TensorValue::as_ten3() const {
  Ten3N<double> t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) t(i, j, k) = (*this)(i, j, k);
  return t;
}

Ten4N<double> TensorValue::as_ten4() const {
  Ten4N<double> t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) t(i, j, k, l) = (*this)(i, j, k, l);
  return t;
}

double TensorValue::asymmetry(int a, int b) const {
  const int r = rank();
  double worst = 0;
  std::vector<int> ix(static_cast<size_t>(r), 0);
  const size_t total = c_.size();
  for (size_t f = 0; f < total; ++f) {
    size_t rem = f;
    for (int d = r - 1; d >= 0; --d) {
      ix[static_cast<size_t>(d)] = static_cast<int>(rem % static_cast<size_t>(n_));
      rem /= static_cast<size_t>(n_);
    }
    std::vector<int> jx = ix;
    std::swap(jx[static_cast<size_t>(a)], jx[static_cast<size_t>(b)]);
    size_t g = 0;
    for (int d = 0; d < r; ++d) g = g * static_cast<size_t>(n_) + static_cast<size_t>(jx[static_cast<size_t>(d)]);
    worst = std::max(worst, std::fabs(c_[f] - c_[g]));
  }
  return worst;
}

double TensorValue::symmetrize(int a, int b) {
  const double asym = asymmetry(a, b);
  const int r = rank();
  std::vector<double> out(c_.size());
  std::vector<int> ix(static_cast<size_t>(r), 0);
  for (size_t f = 0; f < c_.size(); ++f) {
    size_t rem = f;
    for (int d = r - 1; d >= 0; --d) {
      ix[static_cast<size_t>(d)] = static_cast<int>(rem % static_cast<size_t>(n_));
      rem /= static_cast<size_t>(n_);
    }
    std::vector<int> jx = ix;
    std::swap(jx[static_cast<size_t>(a)], jx[static_cast<size_t>(b)]);
    size_t g = 0;
    for (int d = 0; d < r; ++d) g = g * static_cast<size_t>(n_) + static_cast<size_t>(jx[static_cast<size_t>(d)]);
    out[f] = 0.5 * (c_[f] + c_[g]);
  }
  c_ = std::move(out);
  return asym;
}

std::string TensorValue::shape_string() const {
  std::string s = "n=" + std::to_string(n_) + " [";
  for (size_t i = 0; i < idx_.size(); ++i) {
    if (i) s += ",";
    s += idx_[i].upper ? "^" : "_";
    s += idx_[i].slot == Slot::Space ? "x" : "k";
  }
  s += "]";
  return s;
}

}  // namespace ghs
