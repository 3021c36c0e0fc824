// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/chart.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>

#include "natconn/common.hpp"
#include "natconn/connections.hpp"
#include "natconn/structure_gen.hpp"

namespace natconn {
namespace {

void check_point(const Chart& chart, const Eigen::VectorXd& point,
                 const FDConfig& cfg) {
  require(chart.dim >= 2 && chart.dim % 2 == 0, "chart dimension invalid");
  require(point.size() == chart.dim, "point dimension mismatch");
  require(cfg.h > 0.0, "finite-difference step must be positive");
}

Eigen::MatrixXd field_at(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& u, int dim, bool spd) {
  Eigen::MatrixXd m = field(u);
  require(m.rows() == dim && m.cols() == dim, "field has wrong shape");
  if (spd) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
      throw InvalidInput("metric not positive definite at a stencil point");
    }
  }
  return m;
}

// Central differences of a matrix field at `point`, one matrix per
// coordinate direction.
std::vector<Eigen::MatrixXd> field_derivatives(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& point, int dim, double h, bool spd) {
  std::vector<Eigen::MatrixXd> d(dim);
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd up = point;
    Eigen::VectorXd dn = point;
    up(i) += h;
    dn(i) -= h;
    d[i] = (field_at(field, up, dim, spd) - field_at(field, dn, dim, spd)) /
           (2.0 * h);
  }
  return d;
}

Eigen::MatrixXd invert_field_value(const Eigen::MatrixXd& m, bool spd) {
  const int dim = static_cast<int>(m.rows());
  if (spd) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
      throw InvalidInput("metric not positive definite at the point");
    }
    return llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) {
    throw InvalidInput("bilinear field is numerically singular at the point");
  }
  return lu.inverse();
}

}  // namespace

Chart flat_product_chart(int n_half) {
  require(n_half >= 1 && 2 * n_half <= kMaxDim, "half-dimension out of range");
  const int dim = 2 * n_half;
  Eigen::VectorXd signs(dim);
  signs.head(n_half).setOnes();
  signs.tail(n_half).setConstant(-1.0);
  const Eigen::MatrixXd pmat = signs.asDiagonal();
  Chart c;
  c.dim = dim;
  c.name = "flat_product";
  c.metric = [dim](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Identity(dim, dim);
  };
  c.product = [pmat](const Eigen::VectorXd&) { return pmat; };
  return c;
}

Chart conformal_product_chart(int n_half, const Eigen::VectorXd& sigma_coeffs) {
  require(n_half >= 1 && 2 * n_half <= kMaxDim, "half-dimension out of range");
  const int dim = 2 * n_half;
  require(sigma_coeffs.size() == dim, "sigma coefficient count mismatch");
  Eigen::VectorXd signs(dim);
  signs.head(n_half).setOnes();
  signs.tail(n_half).setConstant(-1.0);
  const Eigen::MatrixXd pmat = signs.asDiagonal();
  const Eigen::VectorXd coeffs = sigma_coeffs;
  Chart c;
  c.dim = dim;
  c.name = "conformal_product";
  c.metric = [dim, coeffs](const Eigen::VectorXd& u) {
    require(u.cwiseAbs().maxCoeff() <= 10.0,
            "conformal chart restricted to |coordinate| <= 10");
    const double sigma = coeffs.dot(u);
    return Eigen::MatrixXd(std::exp(2.0 * sigma) *
                           Eigen::MatrixXd::Identity(dim, dim));
  };
  c.product = [pmat](const Eigen::VectorXd&) { return pmat; };
  return c;
}

Chart conformal_product_chart(int n_half) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(2 * n_half);
  coeffs(0) = 0.3;
  return conformal_product_chart(n_half, coeffs);
}

Chart rotated_p_chart(double rate) {
  Chart c;
  c.dim = 4;
  c.name = "rotated_p";
  c.metric = [](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Identity(4, 4);
  };
  // Rotation in the (e2, e3) plane, mixing one +1 and one -1
  // eigendirection, with angle driven by the transverse coordinate u^1.
  c.product = [rate](const Eigen::VectorXd& u) {
    const double a = rate * u(0);
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(4, 4);
    r(1, 1) = std::cos(a);
    r(1, 2) = -std::sin(a);
    r(2, 1) = std::sin(a);
    r(2, 2) = std::cos(a);
    Eigen::VectorXd signs(4);
    signs << 1.0, 1.0, -1.0, -1.0;
    return Eigen::MatrixXd(r * signs.asDiagonal() * r.transpose());
  };
  return c;
}

Christoffel christoffel_of_field(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& point, const FDConfig& cfg, bool spd) {
  const int dim = static_cast<int>(point.size());
  const auto dg = field_derivatives(field, point, dim, cfg.h, spd);
  const Eigen::MatrixXd g0 = field_at(field, point, dim, spd);
  const Eigen::MatrixXd ginv = invert_field_value(g0, spd);
  Christoffel gamma(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (int k = 0; k < dim; ++k) {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        double s = 0.0;
        for (int l = 0; l < dim; ++l) {
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        gamma[k](i, j) = 0.5 * s;
      }
    }
  }
  return gamma;
}

Christoffel christoffel(const Chart& chart, const Eigen::VectorXd& point,
                        const FDConfig& cfg) {
  check_point(chart, point, cfg);
  return christoffel_of_field(chart.metric, point, cfg, true);
}

ChartTensors structure_tensor_at(const Chart& chart,
                                 const Eigen::VectorXd& point,
                                 const FDConfig& cfg) {
  check_point(chart, point, cfg);
  const int dim = chart.dim;
  const auto gamma = christoffel_of_field(chart.metric, point, cfg, true);
  const auto dp = field_derivatives(chart.product, point, dim, cfg.h, false);
  const Eigen::MatrixXd g0 = field_at(chart.metric, point, dim, true);
  const Eigen::MatrixXd p0 = chart.product(point);

  Metric g(g0);
  ProductStructure p(p0, g);

  Tensor3 f(dim);
  for (int i = 0; i < dim; ++i) {
    // covariant derivative of P in direction i, as a (1,1) matrix
    Eigen::MatrixXd cov = dp[i];
    for (int k = 0; k < dim; ++k) {
      for (int j = 0; j < dim; ++j) {
        double s = 0.0;
        for (int m = 0; m < dim; ++m) {
          s += gamma[k](i, m) * p0(m, j) - gamma[m](i, j) * p0(k, m);
        }
        cov(k, j) += s;
      }
    }
    const Eigen::MatrixXd lowered = g0 * cov;  // index l lowered: (k,j) -> g_kl cov^l_j
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        f(i, j, k) = lowered(k, j);
      }
    }
  }

  ChartTensors out{std::move(g), std::move(p), std::move(f), 0.0};
  out.symmetry_residual = f_symmetry_residual(out.f, out.p);
  if (out.symmetry_residual > 1e-4 * std::max(1.0, out.f.max_abs())) {
    throw InvalidInput(
        "finite-difference structure tensor violates its symmetries; "
        "try a smaller step h");
  }
  return out;
}

Tensor3 phi_fd(const Chart& chart, const Eigen::VectorXd& point,
               const FDConfig& cfg) {
  check_point(chart, point, cfg);
  const int dim = chart.dim;
  const auto gamma = christoffel_of_field(chart.metric, point, cfg, true);
  const auto metric_fn = chart.metric;
  const auto product_fn = chart.product;
  const auto assoc = [metric_fn, product_fn](const Eigen::VectorXd& u) {
    const Eigen::MatrixXd m = metric_fn(u) * product_fn(u);
    return Eigen::MatrixXd(0.5 * (m + m.transpose()));
  };
  const auto gamma_assoc = christoffel_of_field(assoc, point, cfg, false);
  const Eigen::MatrixXd g0 = field_at(chart.metric, point, dim, true);

  Tensor3 phi(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        double s = 0.0;
        for (int m = 0; m < dim; ++m) {
          s += (gamma_assoc[m](i, j) - gamma[m](i, j)) * g0(m, k);
        }
        phi(i, j, k) = s;
      }
    }
  }
  return phi;
}

FDCheck natural_connection_fd_check(const Chart& chart,
                                    const Eigen::VectorXd& point,
                                    const Tensor3& t, const FDConfig& cfg) {
  check_point(chart, point, cfg);
  const int dim = chart.dim;
  require(t.dim() == dim, "torsion dimension mismatch");
  const Tensor3 q = q_from_torsion(t);

  const auto gamma = christoffel_of_field(chart.metric, point, cfg, true);
  const auto dg = field_derivatives(chart.metric, point, dim, cfg.h, true);
  const auto dp = field_derivatives(chart.product, point, dim, cfg.h, false);
  const Eigen::MatrixXd g0 = field_at(chart.metric, point, dim, true);
  const Eigen::MatrixXd p0 = chart.product(point);
  const Eigen::MatrixXd ginv = invert_field_value(g0, true);

  // Gamma' = Gamma + Q with the last index of Q raised by g.
  Christoffel gp(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (int k = 0; k < dim; ++k) {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        double s = gamma[k](i, j);
        for (int l = 0; l < dim; ++l) {
          s += ginv(k, l) * q(i, j, l);
        }
        gp[k](i, j) = s;
      }
    }
  }

  FDCheck check;
  double acc_g = 0.0;
  double acc_p = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        double rg = dg[i](j, k);
        double rp = dp[i](k, j);
        for (int m = 0; m < dim; ++m) {
          rg -= gp[m](i, j) * g0(m, k) + gp[m](i, k) * g0(j, m);
          rp += gp[k](i, m) * p0(m, j) - gp[m](i, j) * p0(k, m);
        }
        acc_g += rg * rg;
        acc_p += rp * rp;
      }
    }
  }
  check.residual_g = std::sqrt(acc_g);
  check.residual_p = std::sqrt(acc_p);
  return check;
}

}  // namespace natconn
