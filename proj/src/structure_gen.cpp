// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/structure_gen.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <string>

#include "natconn/common.hpp"

namespace natconn {
namespace {

constexpr std::uint64_t kRetryStep = 1000003;
constexpr int kMaxAttempts = 8;

// g-orthonormalizes columns with modified Gram-Schmidt, two passes for
// numerical orthogonality. Throws InvalidInput on a near-dependent column.
Eigen::MatrixXd g_orthonormalize(const Eigen::MatrixXd& vectors,
                                 const Eigen::MatrixXd& gm) {
  const int n = static_cast<int>(vectors.cols());
  Eigen::MatrixXd b(vectors.rows(), n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = vectors.col(i);
    const double orig = std::sqrt(std::max(0.0, v.dot(gm * v)));
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        v -= b.col(j).dot(gm * v) * b.col(j);
      }
    }
    const double norm = std::sqrt(std::max(0.0, v.dot(gm * v)));
    if (norm < 1e-8 * std::max(1.0, orig)) {
      throw InvalidInput("basis vectors are numerically dependent");
    }
    b.col(i) = v / norm;
  }
  return b;
}

// Applies m to every slot: out(p,q,r) = sum a(i,j,k) m(i,p) m(j,q) m(k,r).
Tensor3 all_slots(const Tensor3& t, const Eigen::MatrixXd& m) {
  return slot_contract(slot_contract(slot_contract(t, m, 1), m, 2), m, 3);
}

}  // namespace

Eigen::MatrixXd UniformGen::matrix(int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = next();
    }
  }
  return m;
}

Eigen::VectorXd UniformGen::vector(int size) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) {
    v(i) = next();
  }
  return v;
}

Tensor3 UniformGen::tensor(int dim) {
  Tensor3 t(dim);
  double* out = t.data();
  const int total = dim * dim * dim;
  for (int i = 0; i < total; ++i) {
    out[i] = next();
  }
  return t;
}

const char* to_string(ManifoldClass c) {
  switch (c) {
    case ManifoldClass::kW0:
      return "W0";
    case ManifoldClass::kW1:
      return "W1";
    case ManifoldClass::kW2:
      return "W2";
    case ManifoldClass::kW1plusW2:
      return "W1+W2";
    case ManifoldClass::kOutside:
      return "outside W1+W2";
  }
  throw InternalError("unhandled ManifoldClass");
}

Metric random_metric(int n_half, std::uint64_t seed) {
  require(n_half >= 1 && 2 * n_half <= kMaxDim,
          "half-dimension must be in [1, " + std::to_string(kMaxDim / 2) + "]");
  const int dim = 2 * n_half;
  UniformGen gen(seed);
  const Eigen::MatrixXd a = gen.matrix(dim, dim);
  Eigen::MatrixXd g = a * a.transpose();
  g += 0.1 * Eigen::MatrixXd::Identity(dim, dim);
  return Metric(g);
}

ProductStructure product_structure_from_basis(const Metric& g,
                                              const Eigen::MatrixXd& vectors) {
  const int dim = g.dim();
  require(vectors.rows() == dim && vectors.cols() == dim,
          "basis must supply dim columns of dim-vectors");
  require(dim % 2 == 0, "product structure needs even dimension");
  const Eigen::MatrixXd b = g_orthonormalize(vectors, g.components());
  Eigen::VectorXd signs(dim);
  signs.head(dim / 2).setOnes();
  signs.tail(dim / 2).setConstant(-1.0);
  const Eigen::MatrixXd p =
      b * signs.asDiagonal() * b.transpose() * g.components();
  return ProductStructure(p, g);
}

ProductStructure random_product_structure(const Metric& g, std::uint64_t seed) {
  const int dim = g.dim();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    UniformGen gen(seed + kRetryStep * static_cast<std::uint64_t>(attempt));
    try {
      return product_structure_from_basis(g, gen.matrix(dim, dim));
    } catch (const InvalidInput&) {
      continue;
    }
  }
  throw InvalidInput("no usable basis after 8 seeded attempts");
}

Tensor3 random_tensor3(int dim, std::uint64_t seed) {
  require(dim >= 1 && dim <= kMaxDim, "dimension out of range");
  UniformGen gen(seed);
  return gen.tensor(dim);
}

Covector random_covector(int dim, std::uint64_t seed) {
  require(dim >= 1 && dim <= kMaxDim, "dimension out of range");
  UniformGen gen(seed);
  return gen.vector(dim);
}

Tensor3 project_to_f_symmetries(const Tensor3& a, const ProductStructure& p) {
  require(a.dim() == p.dim(), "tensor and structure dimensions differ");
  const Eigen::MatrixXd& pm = p.components();
  const Tensor3 swapped = permuted(a, 0, 2, 1);
  Tensor3 out = a + swapped - compose_p(a, pm, {2, 3}) -
                compose_p(swapped, pm, {2, 3});
  out *= 0.25;
  return out;
}

double f_symmetry_residual(const Tensor3& f, const ProductStructure& p) {
  require(f.dim() == p.dim(), "tensor and structure dimensions differ");
  const Eigen::MatrixXd& pm = p.components();
  const double r1 = (f - permuted(f, 0, 2, 1)).max_abs();
  const double r2 = (f + compose_p(f, pm, {2, 3})).max_abs();
  const double r3 = (compose_p(f, pm, {3}) + compose_p(f, pm, {2})).max_abs();
  return std::max({r1, r2, r3});
}

Tensor3 cyclic_sum_pz(const Tensor3& f, const ProductStructure& p) {
  require(f.dim() == p.dim(), "tensor and structure dimensions differ");
  const Eigen::MatrixXd& pm = p.components();
  return compose_p(f, pm, {3}) + compose_p(permuted(f, 1, 2, 0), pm, {1}) +
         compose_p(permuted(f, 2, 0, 1), pm, {2});
}

Tensor3 make_w1_f(const Metric& g, const ProductStructure& p,
                  const Covector& theta) {
  const int dim = g.dim();
  require(p.dim() == dim, "metric and structure dimensions differ");
  require(theta.size() == dim, "covector dimension mismatch");
  const Eigen::MatrixXd& gm = g.components();
  const Eigen::MatrixXd gp = gm * p.components();
  const Covector tp = covector_compose_p(theta, p);
  Tensor3 f(dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        f(i, j, k) = scale * (gm(i, j) * theta(k) + gm(i, k) * theta(j) -
                              gp(i, j) * tp(k) - gp(i, k) * tp(j));
      }
    }
  }
  return f;
}

Tensor3 project_to_class_constraints(const Tensor3& f0, const Metric& g,
                                     const ProductStructure& p,
                                     bool zero_theta) {
  const int dim = g.dim();
  require(f0.dim() == dim && p.dim() == dim, "dimension mismatch");
  const int m = dim * dim * dim;

  // Work in coordinates where inner_product3 is Euclidean: if r = g^{1/2},
  // the map v -> r applied to every slot takes Euclidean coordinates to
  // tensor components. Euclidean projection there is the g-orthogonal one.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.components());
  if (es.info() != Eigen::Success) {
    throw InternalError("metric eigendecomposition failed");
  }
  const Eigen::MatrixXd r = es.operatorSqrt();
  const Eigen::MatrixXd rinv = es.operatorInverseSqrt();
  const Eigen::MatrixXd& pm = p.components();

  const auto constraint_rows = [&](const Tensor3& f) {
    const Tensor3 cyc = cyclic_sum_pz(f, p);
    const Tensor3 sym = f - project_to_f_symmetries(f, p);
    const int extra = zero_theta ? dim : 0;
    Eigen::VectorXd rows(2 * m + extra);
    for (int i = 0; i < m; ++i) {
      rows(i) = cyc.flat()[i];
      rows(m + i) = sym.flat()[i];
    }
    if (zero_theta) {
      const Eigen::MatrixXd& ginv = g.inverse();
      for (int k = 0; k < dim; ++k) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
          for (int j = 0; j < dim; ++j) {
            s += ginv(i, j) * f(i, j, k);
          }
        }
        rows(2 * m + k) = s;
      }
    }
    return rows;
  };

  const int nrows = 2 * m + (zero_theta ? dim : 0);
  Eigen::MatrixXd c(nrows, m);
  Tensor3 basis(dim);
  for (int col = 0; col < m; ++col) {
    basis.data()[col] = 1.0;
    c.col(col) = constraint_rows(all_slots(basis, r));
    basis.data()[col] = 0.0;
  }

  Tensor3 x0 = all_slots(f0, rinv);
  const Eigen::Map<const Eigen::VectorXd> x0v(x0.data(), m);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(c);
  const Eigen::VectorXd proj = x0v - cod.solve(c * x0v);
  Tensor3 out = Tensor3::from_flat(
      dim, std::vector<double>(proj.data(), proj.data() + m));
  return all_slots(out, r);
}

Tensor3 make_constrained_f(const Metric& g, const ProductStructure& p,
                           ManifoldClass target, std::uint64_t seed) {
  require(target == ManifoldClass::kW2 || target == ManifoldClass::kW1plusW2,
          "constrained generation supports W2 and W1+W2 only");
  const bool zero_theta = target == ManifoldClass::kW2;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t s = seed + kRetryStep * static_cast<std::uint64_t>(attempt);
    const Tensor3 start = project_to_f_symmetries(random_tensor3(g.dim(), s), p);
    const Tensor3 f = project_to_class_constraints(start, g, p, zero_theta);
    if (g_norm(f, g) >= 1e-6) {
      return f;
    }
  }
  throw InvalidInput("seeded generation degenerate after 8 attempts");
}

}  // namespace natconn
