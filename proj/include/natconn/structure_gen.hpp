// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_STRUCTURE_GEN_HPP
#define NATCONN_STRUCTURE_GEN_HPP

#include <cstdint>
#include <random>

#include "natconn/metric.hpp"
#include "natconn/tensor3.hpp"

namespace natconn {

// Deterministic uniform generator on [-1, 1]. Algorithm (fixed for
// reproducibility across platforms and languages): std::mt19937_64 seeded
// directly with `seed`; each draw keeps the top 53 bits of one 64-bit output,
// u = (engine() >> 11) * 2^-53 in [0, 1), and returns 2u - 1. Matrices fill
// row by row, tensors in flat (row-major) index order.
class UniformGen {
 public:
  explicit UniformGen(std::uint64_t seed) : eng_(seed) {}

  double next() {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  }

  Eigen::MatrixXd matrix(int rows, int cols);
  Eigen::VectorXd vector(int size);
  Tensor3 tensor(int dim);

 private:
  std::mt19937_64 eng_;
};

// Classes of almost product structure tensors handled by this library.
// kOutside is a classifier verdict only, never a generation target.
enum class ManifoldClass { kW0, kW1, kW2, kW1plusW2, kOutside };

const char* to_string(ManifoldClass c);

// Random SPD metric A*A^T + 0.1*I on R^{2n}; min eigenvalue >= 0.1.
Metric random_metric(int n_half, std::uint64_t seed);

// g-orthonormalizes the columns of `vectors` (modified Gram-Schmidt) and
// returns the product structure with eigenvalue +1 on the first n columns
// and -1 on the rest. Near-dependent columns are rejected.
ProductStructure product_structure_from_basis(const Metric& g,
                                              const Eigen::MatrixXd& vectors);

// product_structure_from_basis applied to seeded random vectors; a
// degenerate draw retries with a perturbed seed, failing after 8 attempts.
ProductStructure random_product_structure(const Metric& g, std::uint64_t seed);

// Tensor with i.i.d. entries uniform in [-1, 1].
Tensor3 random_tensor3(int dim, std::uint64_t seed);

// Covector with i.i.d. entries uniform in [-1, 1].
Covector random_covector(int dim, std::uint64_t seed);

// Orthogonal projection onto the subspace of tensors with the structure
// tensor symmetries: (1/4)[A(x,y,z) + A(x,z,y) - A(x,Py,Pz) - A(x,Pz,Py)].
// Acts as the identity on tensors already satisfying them.
Tensor3 project_to_f_symmetries(const Tensor3& a, const ProductStructure& p);

// Max-abs residual of the three structure tensor symmetries
// F(x,y,z) = F(x,z,y), F(x,y,z) = -F(x,Py,Pz), F(x,y,Pz) = -F(x,Py,z).
double f_symmetry_residual(const Tensor3& f, const ProductStructure& p);

// Cyclic class condition map: F(x,y,Pz) + F(y,z,Px) + F(z,x,Py).
// Its kernel (within the symmetric subspace) is the class W1+W2.
Tensor3 cyclic_sum_pz(const Tensor3& f, const ProductStructure& p);

// W1 structure tensor with Lee form theta:
// F(x,y,z) = (1/2n){g(x,y)tta(z) + g(x,z)tta(y) - g(x,Py)tta(Pz) - g(x,Pz)tta(Py)}.
Tensor3 make_w1_f(const Metric& g, const ProductStructure& p, const Covector& theta);

// Orthogonal projection (in the inner_product3 sense) of f0 onto the
// intersection of the symmetric subspace with the cyclic-map kernel, and
// additionally the Lee-form kernel when zero_theta is set. Exposed for
// testing; make_constrained_f wraps it with seeding and retries.
Tensor3 project_to_class_constraints(const Tensor3& f0, const Metric& g,
                                     const ProductStructure& p, bool zero_theta);

// Seeded random structure tensor in the prescribed class. Accepts only
// kW2 and kW1plusW2. Seeds whose projection has norm < 1e-6 are retried
// with perturbed seeds; throws after 8 degenerate attempts (at 2n=2 the
// class W2 is {0}, so kW2 always exhausts its retries there).
Tensor3 make_constrained_f(const Metric& g, const ProductStructure& p,
                           ManifoldClass target, std::uint64_t seed);

}  // namespace natconn

#endif  // NATCONN_STRUCTURE_GEN_HPP
