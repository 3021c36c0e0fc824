// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_TENSOR3_HPP
#define NATCONN_TENSOR3_HPP

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

#include "natconn/common.hpp"

namespace natconn {

// Dense covariant rank-3 tensor T(x, y, z) on R^dim, stored row-major with
// slot order (x, y, z): entry (i, j, k) lives at flat index (i*dim + j)*dim + k.
// The flattening is the interchange format used by TensorFile.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), v_(static_cast<size_t>(dim) * dim * dim, 0.0) {
    require(dim >= 1 && dim <= kMaxDim, "Tensor3: dimension out of range");
  }

  static Tensor3 from_flat(int dim, std::vector<double> flat);

  int dim() const { return dim_; }
  bool empty() const { return v_.empty(); }

  double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }

  const std::vector<double>& flat() const { return v_; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
  friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
  friend Tensor3 operator-(Tensor3 a) { return a *= -1.0; }

  // Euclidean norm of the component vector. Metric-aware norms live in
  // metric.hpp (inner_product3 / g_norm).
  double frobenius_norm() const;
  double max_abs() const;

 private:
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_ = 0;
  std::vector<double> v_;
};

// Contracts a matrix into one tensor slot:
//   slot 1: out(i,j,k) = sum_a m(a,i) t(a,j,k)
//   slot 2: out(i,j,k) = sum_a m(a,j) t(i,a,k)
//   slot 3: out(i,j,k) = sum_a m(a,k) t(i,j,a)
// With m = P this realizes argument substitution t(..., Px, ...).
Tensor3 slot_contract(const Tensor3& t, const Eigen::MatrixXd& m, int slot);

// t with P composed into the listed slots (1-based, subset of {1,2,3}):
// e.g. compose_p(t, p, {1,3})(x,y,z) = t(Px, y, Pz).
Tensor3 compose_p(const Tensor3& t, const Eigen::MatrixXd& p,
                  std::initializer_list<int> slots);

// Argument permutation: permuted(t, a, b, c)(x0, x1, x2) = t(x_a, x_b, x_c)
// with 0-based variable indices. Example: permuted(t, 1, 2, 0)(x,y,z) = t(y,z,x).
Tensor3 permuted(const Tensor3& t, int a, int b, int c);

// swap12(t)(x,y,z) = t(y,x,z).
Tensor3 swap12(const Tensor3& t);

// Antisymmetric part in the first two slots: (t(x,y,z) - t(y,x,z)) / 2.
Tensor3 antisymmetrize12(const Tensor3& t);

// Residual of antisymmetry in the first two slots, max-abs of t + swap12(t).
double antisymmetry12_residual(const Tensor3& t);

}  // namespace natconn

#endif  // NATCONN_TENSOR3_HPP
