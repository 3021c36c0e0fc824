// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/classifier.hpp"

#include <algorithm>

#include "natconn/common.hpp"

namespace natconn {

Covector lee_form(const Tensor3& f, const Metric& g) {
  const int dim = g.dim();
  require(f.dim() == dim, "tensor and metric dimensions differ");
  const Eigen::MatrixXd& ginv = g.inverse();
  Covector theta = Covector::Zero(dim);
  for (int k = 0; k < dim; ++k) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        s += ginv(i, j) * f(i, j, k);
      }
    }
    theta(k) = s;
  }
  return theta;
}

Tensor3 nijenhuis_from_f(const Tensor3& f, const ProductStructure& p) {
  require(f.dim() == p.dim(), "tensor and structure dimensions differ");
  const Eigen::MatrixXd& pm = p.components();
  const Tensor3 fyx = permuted(f, 1, 0, 2);
  return compose_p(f, pm, {2}) - compose_p(fyx, pm, {1}) +
         compose_p(f, pm, {1}) - compose_p(fyx, pm, {2});
}

ClassReport classify(const Tensor3& f, const Metric& g, const ProductStructure& p,
                     double tol, double sym_tol) {
  const int dim = g.dim();
  require(f.dim() == dim && p.dim() == dim, "dimension mismatch");
  require(tol > 0.0, "tolerance must be positive");
  {
    const double scale = std::max(1.0, f.max_abs());
    if (f_symmetry_residual(f, p) > sym_tol * scale) {
      throw InvalidInput("tensor violates structure tensor symmetries");
    }
  }

  ClassReport report;
  report.residual_w0 = g_norm(f, g);
  if (report.residual_w0 < 1e-12) {
    report.verdict = ManifoldClass::kW0;
    return report;
  }

  const Tensor3 fn = (1.0 / report.residual_w0) * f;
  const Covector theta = lee_form(fn, g);
  report.theta_norm = covector_norm(theta, g);
  report.residual_w1 = g_norm(fn - make_w1_f(g, p, theta), g);
  report.residual_cyclic = g_norm(cyclic_sum_pz(fn, p), g);
  report.residual_w2 = std::max(report.residual_cyclic, report.theta_norm);
  report.nijenhuis_norm = g_norm(nijenhuis_from_f(fn, p), g);

  if (report.residual_w1 < tol) {
    report.verdict = ManifoldClass::kW1;
  } else if (report.residual_w2 < tol) {
    report.verdict = ManifoldClass::kW2;
  } else if (report.residual_cyclic < tol) {
    report.verdict = ManifoldClass::kW1plusW2;
  } else {
    report.verdict = ManifoldClass::kOutside;
  }
  return report;
}

}  // namespace natconn
