// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_METRIC_HPP
#define NATCONN_METRIC_HPP

#include <Eigen/Dense>

#include "natconn/common.hpp"
#include "natconn/tensor3.hpp"

namespace natconn {

using Covector = Eigen::VectorXd;

// Riemannian metric on R^{2n}: symmetric positive definite matrix with its
// inverse cached at construction. Validation uses a Cholesky factorization;
// a metric that fails it (or is asymmetric beyond tolerance) is rejected.
class Metric {
 public:
  explicit Metric(Eigen::MatrixXd g, Tolerances tol = {});

  int dim() const { return static_cast<int>(g_.rows()); }
  const Eigen::MatrixXd& components() const { return g_; }
  const Eigen::MatrixXd& inverse() const { return g_inv_; }

 private:
  Eigen::MatrixXd g_;
  Eigen::MatrixXd g_inv_;
};

// Validated inverse of an SPD metric matrix (Cholesky solve).
Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g, Tolerances tol = {});

// Almost product structure compatible with a metric: P*P = I, tr P = 0
// (equal +1/-1 eigenspace dimensions), and P^T g P = g. The dimension must
// be even. All three invariants are checked entrywise at construction.
class ProductStructure {
 public:
  ProductStructure(Eigen::MatrixXd p, const Metric& g, Tolerances tol = {});

  int dim() const { return static_cast<int>(p_.rows()); }
  const Eigen::MatrixXd& components() const { return p_; }

 private:
  Eigen::MatrixXd p_;
};

// Associated metric gt(x, y) = g(Px, y), i.e. the matrix g * P. Symmetric
// with signature (n, n); composing with P again returns g.
Eigen::MatrixXd associated_metric(const Metric& g, const ProductStructure& p);

// Full contraction of two covariant rank-3 tensors with three inverse
// metrics: <S, T> = g^{ia} g^{jb} g^{kc} S_ijk T_abc. Positive definite.
double inner_product3(const Tensor3& s, const Tensor3& t, const Metric& g);

// sqrt(inner_product3(t, t, g)).
double g_norm(const Tensor3& t, const Metric& g);

// Covector norm sqrt(theta^T g^{-1} theta), the norm dual to g.
double covector_norm(const Covector& theta, const Metric& g);

// theta composed with P: (theta o P)(x) = theta(Px), components P^T theta.
Covector covector_compose_p(const Covector& theta, const ProductStructure& p);

}  // namespace natconn

#endif  // NATCONN_METRIC_HPP
