// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/tensor3.hpp"

#include <algorithm>
#include <cmath>

namespace natconn {

namespace {

void require_same_dim(const Tensor3& a, const Tensor3& b) {
  require(a.dim() == b.dim(), "Tensor3: dimension mismatch");
}

}  // namespace

Tensor3 Tensor3::from_flat(int dim, std::vector<double> flat) {
  Tensor3 t(dim);
  require(flat.size() == t.v_.size(), "Tensor3::from_flat: wrong element count");
  t.v_ = std::move(flat);
  return t;
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  require_same_dim(*this, o);
  for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
  require_same_dim(*this, o);
  for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

double Tensor3::frobenius_norm() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

Tensor3 slot_contract(const Tensor3& t, const Eigen::MatrixXd& m, int slot) {
  const int n = t.dim();
  require(m.rows() == n && m.cols() == n, "slot_contract: matrix dimension mismatch");
  require(slot >= 1 && slot <= 3, "slot_contract: slot must be 1, 2 or 3");

  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Tensor3 out(n);
  if (slot == 1) {
    // out(i, jk) = sum_a m(a, i) t(a, jk)
    Eigen::Map<const RowMat> in(t.data(), n, n * n);
    Eigen::Map<RowMat> res(out.data(), n, n * n);
    res = m.transpose() * in;
  } else if (slot == 2) {
    for (int i = 0; i < n; ++i) {
      Eigen::Map<const RowMat> slab(t.data() + static_cast<size_t>(i) * n * n, n, n);
      Eigen::Map<RowMat> res(out.data() + static_cast<size_t>(i) * n * n, n, n);
      res = m.transpose() * slab;
    }
  } else {
    // out(ij, k) = sum_a t(ij, a) m(a, k)
    Eigen::Map<const RowMat> in(t.data(), n * n, n);
    Eigen::Map<RowMat> res(out.data(), n * n, n);
    res = in * m;
  }
  return out;
}

Tensor3 compose_p(const Tensor3& t, const Eigen::MatrixXd& p,
                  std::initializer_list<int> slots) {
  bool seen[4] = {false, false, false, false};
  Tensor3 out = t;
  for (int s : slots) {
    require(s >= 1 && s <= 3, "compose_p: slot must be in {1,2,3}");
    require(!seen[s], "compose_p: duplicate slot");
    seen[s] = true;
    out = slot_contract(out, p, s);
  }
  return out;
}

Tensor3 permuted(const Tensor3& t, int a, int b, int c) {
  require(a >= 0 && a <= 2 && b >= 0 && b <= 2 && c >= 0 && c <= 2 &&
              a != b && b != c && a != c,
          "permuted: indices must be a permutation of 0,1,2");
  const int n = t.dim();
  Tensor3 out(n);
  int v[3];
  for (v[0] = 0; v[0] < n; ++v[0])
    for (v[1] = 0; v[1] < n; ++v[1])
      for (v[2] = 0; v[2] < n; ++v[2]) out(v[0], v[1], v[2]) = t(v[a], v[b], v[c]);
  return out;
}

Tensor3 swap12(const Tensor3& t) { return permuted(t, 1, 0, 2); }

Tensor3 antisymmetrize12(const Tensor3& t) {
  Tensor3 out = t;
  out -= swap12(t);
  out *= 0.5;
  return out;
}

double antisymmetry12_residual(const Tensor3& t) {
  const int n = t.dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        r = std::max(r, std::abs(t(i, j, k) + t(j, i, k)));
  return r;
}

}  // namespace natconn
