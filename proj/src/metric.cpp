// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/metric.hpp"

#include <cmath>

namespace natconn {

namespace {

void require_square(const Eigen::MatrixXd& m, const char* what) {
  require(m.rows() == m.cols() && m.rows() >= 1 && m.rows() <= kMaxDim,
          std::string(what) + ": matrix must be square with dimension in [1, 16]");
}

}  // namespace

Metric::Metric(Eigen::MatrixXd g, Tolerances tol) : g_(std::move(g)) {
  require_square(g_, "Metric");
  const double scale = g_.cwiseAbs().maxCoeff();
  require((g_ - g_.transpose()).cwiseAbs().maxCoeff() <= tol.atol + tol.rtol * scale,
          "Metric: matrix is not symmetric");
  g_ = 0.5 * (g_ + g_.transpose().eval());

  Eigen::LLT<Eigen::MatrixXd> llt(g_);
  require(llt.info() == Eigen::Success, "Metric: matrix is not positive definite");
  g_inv_ = llt.solve(Eigen::MatrixXd::Identity(dim(), dim()));
  g_inv_ = 0.5 * (g_inv_ + g_inv_.transpose().eval());
}

Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g, Tolerances tol) {
  return Metric(g, tol).inverse();
}

ProductStructure::ProductStructure(Eigen::MatrixXd p, const Metric& g, Tolerances tol)
    : p_(std::move(p)) {
  require_square(p_, "ProductStructure");
  require(static_cast<int>(p_.rows()) == g.dim(),
          "ProductStructure: dimension mismatch with metric");
  require(dim() % 2 == 0, "ProductStructure: dimension must be even");

  const int n = dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  require((p_ * p_ - id).cwiseAbs().maxCoeff() <= tol.atol + tol.rtol,
          "ProductStructure: P*P != I");
  require(std::abs(p_.trace()) <= n * (tol.atol + tol.rtol),
          "ProductStructure: trace P != 0");
  const Eigen::MatrixXd& gm = g.components();
  const double gscale = gm.cwiseAbs().maxCoeff();
  require((p_.transpose() * gm * p_ - gm).cwiseAbs().maxCoeff() <=
              tol.atol + tol.rtol * gscale,
          "ProductStructure: P is not compatible with g (P^T g P != g)");
}

Eigen::MatrixXd associated_metric(const Metric& g, const ProductStructure& p) {
  require(g.dim() == p.dim(), "associated_metric: dimension mismatch");
  Eigen::MatrixXd gt = g.components() * p.components();
  // Compatibility makes g*P symmetric; symmetrize away roundoff.
  return 0.5 * (gt + gt.transpose().eval());
}

double inner_product3(const Tensor3& s, const Tensor3& t, const Metric& g) {
  require(s.dim() == t.dim() && s.dim() == g.dim(),
          "inner_product3: dimension mismatch");
  // Raise all three slots of s with g^{-1}, then contract componentwise.
  Tensor3 raised = slot_contract(
      slot_contract(slot_contract(s, g.inverse(), 1), g.inverse(), 2), g.inverse(), 3);
  const auto& a = raised.flat();
  const auto& b = t.flat();
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double g_norm(const Tensor3& t, const Metric& g) {
  return std::sqrt(std::max(0.0, inner_product3(t, t, g)));
}

double covector_norm(const Covector& theta, const Metric& g) {
  require(theta.size() == g.dim(), "covector_norm: dimension mismatch");
  return std::sqrt(std::max(0.0, theta.dot(g.inverse() * theta)));
}

Covector covector_compose_p(const Covector& theta, const ProductStructure& p) {
  require(theta.size() == p.dim(), "covector_compose_p: dimension mismatch");
  return p.components().transpose() * theta;
}

}  // namespace natconn
