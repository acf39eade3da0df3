#pragma once

// TensorValue: a dense tensor of rank 0..5 at a single phase-space point,
// with per-index variance (upper/lower) and slot (spacetime/fiber) tags.

#include <cstdint>
#include <string>
#include <vector>

#include "ghs/errors.hpp"
#include "ghs/linalg.hpp"

namespace ghs {

enum class Slot : uint8_t { Space, Fiber };

struct IndexSpec {
  bool upper = false;
  Slot slot = Slot::Space;
};

inline IndexSpec up_space() { return {true, Slot::Space}; }
inline IndexSpec lo_space() { return {false, Slot::Space}; }
inline IndexSpec up_fiber() { return {true, Slot::Fiber}; }
inline IndexSpec lo_fiber() { return {false, Slot::Fiber}; }

class TensorValue {
 public:
  TensorValue() = default;
  TensorValue(int n, std::vector<IndexSpec> indices);

  static TensorValue scalar(double v);
  static TensorValue from_vec(const VecN<double>& v, IndexSpec spec);
  static TensorValue from_mat(const MatN<double>& m, IndexSpec i0, IndexSpec i1);
  static TensorValue from_ten3(const Ten3N<double>& t, IndexSpec i0, IndexSpec i1, IndexSpec i2);
  static TensorValue from_ten4(const Ten4N<double>& t, IndexSpec i0, IndexSpec i1, IndexSpec i2,
                               IndexSpec i3);

  int dim() const { return n_; }
  int rank() const { return static_cast<int>(idx_.size()); }
  const std::vector<IndexSpec>& indices() const { return idx_; }
  const std::vector<double>& components() const { return c_; }
  std::vector<double>& components() { return c_; }

  double& at(std::initializer_list<int> ix) { return c_[flat(ix)]; }
  double at(std::initializer_list<int> ix) const { return c_[flat(ix)]; }

  double& operator()(int i) { return c_[static_cast<size_t>(i)]; }
  double operator()(int i) const { return c_[static_cast<size_t>(i)]; }
  double& operator()(int i, int j) { return c_[static_cast<size_t>(i * n_ + j)]; }
  double operator()(int i, int j) const { return c_[static_cast<size_t>(i * n_ + j)]; }
  double& operator()(int i, int j, int k) { return c_[static_cast<size_t>((i * n_ + j) * n_ + k)]; }
  double operator()(int i, int j, int k) const {
    return c_[static_cast<size_t>((i * n_ + j) * n_ + k)];
  }
  double& operator()(int i, int j, int k, int l) {
    return c_[static_cast<size_t>(((i * n_ + j) * n_ + k) * n_ + l)];
  }
  double operator()(int i, int j, int k, int l) const {
    return c_[static_cast<size_t>(((i * n_ + j) * n_ + k) * n_ + l)];
  }

  double max_abs() const;
  bool all_finite() const;

  VecN<double> as_vec() const;
  MatN<double> as_mat() const;
  Ten3N<double> as_ten3() const;
  Ten4N<double> as_ten4() const;

  // Max deviation from symmetry under exchange of index positions a and b.
  double asymmetry(int a, int b) const;
  // In-place symmetrization over index positions a and b; returns the
  // pre-symmetrization asymmetry.
  double symmetrize(int a, int b);

  std::string shape_string() const;

 private:
  size_t flat(std::initializer_list<int> ix) const;

  int n_ = 0;
  std::vector<IndexSpec> idx_;
  std::vector<double> c_;
};

}  // namespace ghs
