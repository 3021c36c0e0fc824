// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_CHART_HPP
#define NATCONN_CHART_HPP

#include <functional>
#include <string>
#include <vector>

#include "natconn/metric.hpp"
#include "natconn/tensor3.hpp"

namespace natconn {

// A single coordinate chart: smooth fields of metric and product
// structure components over R^dim. Built-in charts only; the chart layer
// is a finite-difference oracle for the algebraic modules, not a DSL.
struct Chart {
  int dim = 0;
  std::string name;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> metric;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> product;
};

struct FDConfig {
  double h = 1e-5;  // central-difference step; must be positive
};

// Everything constant: g = I, P = diag(I_n, -I_n). Structure tensor 0.
Chart flat_product_chart(int n_half);

// g = exp(2 sigma(u)) I with sigma a linear form (coefficients given),
// P = diag(I_n, -I_n). Realizes the pure-trace class at every point.
// Coordinates with |u_i| > 10 are rejected to keep exp well scaled.
Chart conformal_product_chart(int n_half, const Eigen::VectorXd& sigma_coeffs);

// Convenience overload: sigma = 0.3 u^1.
Chart conformal_product_chart(int n_half);

// dim 4, g = I, P conjugated by a rotation with angle rate*u^1 mixing a
// +1 and a -1 eigendirection transverse to u^1. The eigendistributions
// are non-involutive, so the Nijenhuis tensor is nonzero: the structure
// falls outside the integrable class.
Chart rotated_p_chart(double rate);

// gamma[k](i, j) approximates the connection coefficient with upper
// index k of the Levi-Civita connection of the chart metric.
using Christoffel = std::vector<Eigen::MatrixXd>;

// Central-difference Christoffel symbols of an arbitrary (invertible)
// symmetric bilinear field. With spd set, every stencil evaluation must
// be positive definite; otherwise mere invertibility is checked, which
// admits the associated metric of signature (n, n).
Christoffel christoffel_of_field(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& point, const FDConfig& cfg, bool spd);

Christoffel christoffel(const Chart& chart, const Eigen::VectorXd& point,
                        const FDConfig& cfg = {});

struct ChartTensors {
  Metric g;
  ProductStructure p;
  Tensor3 f;
  double symmetry_residual = 0.0;
};

// Assembles the structure tensor at a point from finite differences:
// (nabla_i P)^k_j = d_i P^k_j + Gamma^k_im P^m_j - Gamma^m_ij P^k_m,
// then lowers the upper index with g. The result must satisfy the
// structure tensor symmetries within 1e-4 (relative), else the chart
// data is rejected with a hint to shrink h.
ChartTensors structure_tensor_at(const Chart& chart, const Eigen::VectorXd& point,
                                 const FDConfig& cfg = {});

// Difference of the Levi-Civita connections of the associated metric
// g(., P.) and of g, lowered by g; computed purely by finite differences
// for cross-checking the algebraic formula on integrable charts.
Tensor3 phi_fd(const Chart& chart, const Eigen::VectorXd& point,
               const FDConfig& cfg = {});

struct FDCheck {
  double residual_g = 0.0;  // Frobenius norm of the covariant derivative of g
  double residual_p = 0.0;  // same for P
};

// Builds the connection Gamma + Q (Q from the torsion T, last index
// raised by g) and measures how well it parallelizes g and P at the
// point, by finite differences.
FDCheck natural_connection_fd_check(const Chart& chart,
                                    const Eigen::VectorXd& point,
                                    const Tensor3& t, const FDConfig& cfg = {});

}  // namespace natconn

#endif  // NATCONN_CHART_HPP
