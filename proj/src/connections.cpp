// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/connections.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "natconn/common.hpp"
#include "natconn/structure_gen.hpp"
#include "natconn/torsion_space.hpp"

namespace natconn {
namespace {

constexpr double kNullSpaceCut = 1e-10;

// Q-formula without the antisymmetry gate; the ansatz solver applies it
// to arbitrary basis tensors, where it is just a linear map.
Tensor3 q_formula(const Tensor3& t) {
  Tensor3 out = t - permuted(t, 1, 2, 0) + permuted(t, 2, 0, 1);
  out *= 0.5;
  return out;
}

// F(x,y,z) reproduced from Q: Q(x,y,Pz) - Q(x,Py,z).
Tensor3 f_of_q(const Tensor3& q, const Eigen::MatrixXd& pm) {
  return compose_p(q, pm, {3}) - compose_p(q, pm, {2});
}

Eigen::Map<const Eigen::VectorXd> as_vec(const Tensor3& t) {
  return {t.data(), static_cast<Eigen::Index>(t.flat().size())};
}

}  // namespace

Tensor3 q_from_torsion(const Tensor3& t) {
  require_torsion(t);
  return q_formula(t);
}

Tensor3 torsion_from_q(const Tensor3& q) {
  return q - permuted(q, 1, 0, 2);
}

NaturalityReport is_natural(const Tensor3& q, const Tensor3& f,
                            const ProductStructure& p, double tol) {
  require(q.dim() == p.dim() && f.dim() == p.dim(), "dimension mismatch");
  require(tol > 0.0, "tolerance must be positive");
  NaturalityReport report;
  report.residual_f = (f - f_of_q(q, p.components())).frobenius_norm();
  report.residual_skew = (q + permuted(q, 0, 2, 1)).frobenius_norm();
  report.natural =
      report.residual_f <= tol * std::max(1.0, f.frobenius_norm()) &&
      report.residual_skew <= tol * std::max(1.0, q.frobenius_norm());
  return report;
}

Tensor3 phi_from_f(const Tensor3& f, const ProductStructure& p, double tol) {
  require(f.dim() == p.dim(), "tensor and structure dimensions differ");
  const Eigen::MatrixXd& pm = p.components();
  const double cyc = cyclic_sum_pz(f, p).max_abs();
  if (cyc > tol * std::max(1.0, f.max_abs())) {
    throw InvalidInput("tensor fails the cyclic class condition");
  }
  const Tensor3 fyx = permuted(f, 1, 0, 2);
  Tensor3 out = compose_p(fyx, pm, {3}) - compose_p(fyx, pm, {2});
  out *= 0.5;
  return out;
}

P1P3Residuals natural_p1_p3_residuals(const Tensor3& t, const Tensor3& phi,
                                      const Tensor3& nijenhuis,
                                      const ProductStructure& p) {
  require(t.dim() == p.dim() && phi.dim() == p.dim() &&
              nijenhuis.dim() == p.dim(),
          "dimension mismatch");
  const Eigen::MatrixXd& pm = p.components();
  const Tensor3 phi_yzx = permuted(phi, 1, 2, 0);
  const Tensor3 rhs = -1.0 * phi + phi_yzx - compose_p(phi, pm, {2, 3}) -
                      compose_p(phi_yzx, pm, {1, 3}) +
                      2.0 * compose_p(permuted(phi, 2, 0, 1), pm, {1, 2});
  P1P3Residuals res;
  res.residual_p1 = (4.0 * project_p1(t, p) - rhs).frobenius_norm();
  res.residual_p3 = (4.0 * project_p3(t, p) + nijenhuis).frobenius_norm();
  return res;
}

P2P4Residuals natural_p2_p4_residuals(const Tensor3& t, const Tensor3& f,
                                      const Metric& g,
                                      const ProductStructure& p) {
  require(t.dim() == p.dim() && f.dim() == p.dim() && g.dim() == p.dim(),
          "dimension mismatch");
  const Eigen::MatrixXd& pm = p.components();
  const Tensor3 tp = compose_p(t, pm, {1, 2});
  const Tensor3 fzxpy = compose_p(permuted(f, 2, 0, 1), pm, {2});
  P2P4Residuals res;
  res.residual_p2 = g_norm(project_p2(t, p) - 0.5 * (t - tp + fzxpy), g);
  res.residual_p4 = g_norm(project_p4(t, p) - 0.5 * (t + tp), g);
  return res;
}

Tensor3 canonical_torsion(const Tensor3& f, const ProductStructure& p,
                          double tol) {
  require(f.dim() == p.dim(), "tensor and structure dimensions differ");
  Tensor3 t = compose_p(permuted(f, 2, 1, 0), p.components(), {1});
  t *= 0.5;
  if (antisymmetry12_residual(t) > tol * std::max(1.0, f.max_abs())) {
    throw InvalidInput(
        "canonical torsion fails antisymmetry; tensor lies outside the "
        "integrable class");
  }
  return t;
}

double canonical_condition_residual(const Tensor3& t,
                                    const ProductStructure& p) {
  require(t.dim() == p.dim(), "tensor and structure dimensions differ");
  const Eigen::MatrixXd& pm = p.components();
  const Tensor3 tyzx = permuted(t, 1, 2, 0);
  const Tensor3 sum =
      t + tyzx + compose_p(t, pm, {1, 3}) + compose_p(tyzx, pm, {1, 3});
  return sum.frobenius_norm();
}

Tensor3 w1_canonical_torsion(const Metric& g, const ProductStructure& p,
                             const Covector& theta) {
  const int dim = g.dim();
  require(p.dim() == dim, "metric and structure dimensions differ");
  require(theta.size() == dim, "covector dimension mismatch");
  const Eigen::MatrixXd& gm = g.components();
  const Eigen::MatrixXd gp = gm * p.components();
  const Covector tp = covector_compose_p(theta, p);
  const double scale = 1.0 / (2.0 * dim);
  Tensor3 t(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        t(i, j, k) = scale * (gm(j, k) * tp(i) - gp(j, k) * theta(i) -
                              gm(i, k) * tp(j) + gp(i, k) * theta(j));
      }
    }
  }
  return t;
}

std::vector<Tensor3> f_ansatz_basis(const Tensor3& f,
                                    const ProductStructure& p) {
  require(f.dim() == p.dim(), "tensor and structure dimensions differ");
  const Eigen::MatrixXd& pm = p.components();
  const Tensor3 fyzx = permuted(f, 1, 2, 0);
  return {f,
          fyzx,
          compose_p(f, pm, {1}),
          compose_p(fyzx, pm, {2}),
          compose_p(f, pm, {3}),
          compose_p(fyzx, pm, {1}),
          compose_p(f, pm, {1, 2}),
          compose_p(fyzx, pm, {2, 3})};
}

Tensor3 f_ansatz_torsion(const Tensor3& f, const ProductStructure& p,
                         const std::array<double, 8>& c) {
  const auto basis = f_ansatz_basis(f, p);
  Tensor3 out(f.dim());
  for (size_t i = 0; i < basis.size(); ++i) {
    out += c[i] * basis[i];
  }
  return out;
}

std::vector<Tensor3> gtheta_ansatz_basis(const Metric& g,
                                         const ProductStructure& p,
                                         const Covector& theta) {
  const int dim = g.dim();
  require(p.dim() == dim, "metric and structure dimensions differ");
  require(theta.size() == dim, "covector dimension mismatch");
  const Eigen::MatrixXd& gm = g.components();
  const Eigen::MatrixXd gp = gm * p.components();
  const Covector tp = covector_compose_p(theta, p);

  // term(a, b, slot): the rank-3 tensor a(.,.)b(.) with the covector b on
  // the given slot and the bilinear form a on the other two, cyclically:
  // slot 3 -> a(x,y)b(z), slot 1 -> a(y,z)b(x), slot 2 -> a(z,x)b(y).
  const auto term = [dim](const Eigen::MatrixXd& a, const Covector& b,
                          int slot) {
    Tensor3 t(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
          if (slot == 3) {
            t(i, j, k) = a(i, j) * b(k);
          } else if (slot == 1) {
            t(i, j, k) = a(j, k) * b(i);
          } else {
            t(i, j, k) = a(k, i) * b(j);
          }
        }
      }
    }
    return t;
  };

  return {term(gm, theta, 3), term(gm, theta, 1), term(gm, theta, 2),
          term(gm, tp, 3),    term(gm, tp, 1),    term(gm, tp, 2),
          term(gp, theta, 3), term(gp, theta, 1), term(gp, theta, 2),
          term(gp, tp, 3),    term(gp, tp, 1),    term(gp, tp, 2)};
}

Tensor3 gtheta_ansatz_torsion(const Metric& g, const ProductStructure& p,
                              const Covector& theta,
                              const std::array<double, 12>& c) {
  const auto basis = gtheta_ansatz_basis(g, p, theta);
  Tensor3 out(g.dim());
  for (size_t i = 0; i < basis.size(); ++i) {
    out += c[i] * basis[i];
  }
  return out;
}

AnsatzSolution solve_natural_ansatz(const std::vector<Tensor3>& basis,
                                    const Tensor3& f, const Metric& g,
                                    const ProductStructure& p, double tol) {
  require(!basis.empty(), "ansatz basis must not be empty");
  const int dim = f.dim();
  require(p.dim() == dim && g.dim() == dim, "dimension mismatch");
  for (const Tensor3& b : basis) {
    require(b.dim() == dim, "basis tensor dimension mismatch");
  }
  require(tol > 0.0, "tolerance must be positive");
  const Eigen::MatrixXd& pm = p.components();
  const int m = dim * dim * dim;
  const int k = static_cast<int>(basis.size());

  Eigen::MatrixXd bmat(m, k);
  Eigen::MatrixXd sys(3 * m, k);
  for (int c = 0; c < k; ++c) {
    bmat.col(c) = as_vec(basis[c]);
    const Tensor3 anti = basis[c] + permuted(basis[c], 1, 0, 2);
    const Tensor3 q = q_formula(basis[c]);
    const Tensor3 nat = f_of_q(q, pm);
    const Tensor3 skew = q + permuted(q, 0, 2, 1);
    sys.col(c).segment(0, m) = as_vec(anti);
    sys.col(c).segment(m, m) = as_vec(nat);
    sys.col(c).segment(2 * m, m) = as_vec(skew);
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(3 * m);
  rhs.segment(m, m) = as_vec(f);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(sys,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  AnsatzSolution sol;
  sol.coefficients = svd.solve(rhs);
  sol.residual = (sys * sol.coefficients - rhs).norm();
  sol.consistent = sol.residual <= tol * std::max(1.0, rhs.norm());

  const Eigen::VectorXd& sv = svd.singularValues();
  const double sv_max = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<int> null_cols;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv_max == 0.0 || sv(i) < kNullSpaceCut * sv_max) {
      null_cols.push_back(i);
    }
  }
  sol.coeff_null_basis.resize(k, static_cast<Eigen::Index>(null_cols.size()));
  for (size_t i = 0; i < null_cols.size(); ++i) {
    sol.coeff_null_basis.col(static_cast<Eigen::Index>(i)) =
        svd.matrixV().col(null_cols[i]);
  }

  const Eigen::VectorXd tvec = bmat * sol.coefficients;
  sol.torsion =
      Tensor3::from_flat(dim, std::vector<double>(tvec.data(), tvec.data() + m));

  double basis_scale = 0.0;
  {
    Eigen::BDCSVD<Eigen::MatrixXd> bsvd(bmat);
    const auto& bsv = bsvd.singularValues();
    basis_scale = bsv.size() > 0 ? bsv(0) : 0.0;
    sol.basis_rank = 0;
    for (int i = 0; i < bsv.size(); ++i) {
      if (basis_scale > 0.0 && bsv(i) >= kNullSpaceCut * basis_scale) {
        ++sol.basis_rank;
      }
    }
  }

  sol.torsion_dimension = 0;
  sol.torsion_sv_gap = std::numeric_limits<double>::infinity();
  if (sol.coeff_null_basis.cols() > 0 && basis_scale > 0.0) {
    const Eigen::MatrixXd dirs = bmat * sol.coeff_null_basis;
    Eigen::BDCSVD<Eigen::MatrixXd> dsvd(dirs, Eigen::ComputeThinU);
    const auto& dsv = dsvd.singularValues();
    // Coefficient null vectors are unit length, so a null direction that is
    // a genuine tensor sits at the basis scale. Anything at roundoff level
    // below that scale is a linear dependence among the basis tensors, not a
    // degree of freedom, so the cut must be absolute rather than relative to
    // the largest direction.
    const double cut = kNullSpaceCut * basis_scale;
    for (int i = 0; i < dsv.size(); ++i) {
      if (dsv(i) >= cut) {
        ++sol.torsion_dimension;
      }
    }
    const int r = sol.torsion_dimension;
    if (r < dsv.size() && dsv(r) > 0.0) {
      sol.torsion_sv_gap = r > 0 ? dsv(r - 1) / dsv(r)
                                 : std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < r; ++i) {
      const Eigen::VectorXd u = dsvd.matrixU().col(i);
      sol.torsion_directions.push_back(Tensor3::from_flat(
          dim, std::vector<double>(u.data(), u.data() + m)));
    }
  }
  return sol;
}

Tensor3 w1_family_torsion(const Metric& g, const ProductStructure& p,
                          const Covector& theta, const FamilyParams& params) {
  const int dim = g.dim();
  require(p.dim() == dim, "metric and structure dimensions differ");
  require(theta.size() == dim, "covector dimension mismatch");
  const Eigen::MatrixXd& gm = g.components();
  const Eigen::MatrixXd gp = gm * p.components();
  const Covector tp = covector_compose_p(theta, p);
  const double trace_scale = 1.0 / dim;
  Tensor3 t(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        const double u = gm(j, k) * theta(i) - gm(i, k) * theta(j) +
                         gp(j, k) * tp(i) - gp(i, k) * tp(j);
        const double v = gp(j, k) * theta(i) - gp(i, k) * theta(j) +
                         gm(j, k) * tp(i) - gm(i, k) * tp(j);
        const double w = gm(j, k) * tp(i) - gm(i, k) * tp(j);
        t(i, j, k) = params.lambda * u + params.mu * v + trace_scale * w;
      }
    }
  }
  return t;
}

double case_b_residual(const Tensor3& t, const Tensor3& f,
                       const ProductStructure& p) {
  require(t.dim() == p.dim() && f.dim() == p.dim(), "dimension mismatch");
  const Eigen::MatrixXd& pm = p.components();
  const Tensor3 fzxpy = compose_p(permuted(f, 2, 0, 1), pm, {2});
  return (fzxpy - compose_p(t, pm, {1, 2}) + t).frobenius_norm();
}

}  // namespace natconn
