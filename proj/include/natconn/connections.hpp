// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_CONNECTIONS_HPP
#define NATCONN_CONNECTIONS_HPP

#include <array>
#include <vector>

#include "natconn/metric.hpp"
#include "natconn/tensor3.hpp"

namespace natconn {

// Transformation tensor of the connection with torsion T:
// Q(x,y,z) = 1/2 [T(x,y,z) - T(y,z,x) + T(z,x,y)].
// Requires T antisymmetric in the first two slots; the result is then
// skew in the last two and torsion_from_q inverts it exactly.
Tensor3 q_from_torsion(const Tensor3& t);

// T(x,y,z) = Q(x,y,z) - Q(y,x,z).
Tensor3 torsion_from_q(const Tensor3& q);

struct NaturalityReport {
  bool natural = false;
  double residual_f = 0.0;     // ||F - Q(x,y,Pz) + Q(x,Py,z)||
  double residual_skew = 0.0;  // ||Q(x,y,z) + Q(x,z,y)||
};

// A connection transformation Q preserves both g and P exactly when the
// two reported residuals vanish. Frobenius norms; `natural` compares each
// residual against tol times max(1, norm of the tensor it constrains).
NaturalityReport is_natural(const Tensor3& q, const Tensor3& f,
                            const ProductStructure& p, double tol = 1e-8);

// Difference tensor of the Levi-Civita connections of the associated
// metric and of g, expressed through F: Phi = 1/2 {F(y,x,Pz) - F(Py,x,z)}.
// Valid on the integrable class only; rejects F whose cyclic residual
// exceeds tol relative to max-abs.
Tensor3 phi_from_f(const Tensor3& f, const ProductStructure& p,
                   double tol = 1e-6);

struct P1P3Residuals {
  double residual_p1 = 0.0;
  double residual_p3 = 0.0;
};

// Identities tying the first and third projections of a torsion to Phi
// and to the Nijenhuis tensor:
//   4 p1(T) = -Phi(x,y,z) + Phi(y,z,x) - Phi(x,Py,Pz) - Phi(y,Pz,Px)
//             + 2 Phi(z,Px,Py)
//   4 p3(T) = -N(x,y,z)
// Returns the Frobenius norms of both defects; they vanish for torsions
// of connections preserving g and P.
P1P3Residuals natural_p1_p3_residuals(const Tensor3& t, const Tensor3& phi,
                                      const Tensor3& nijenhuis,
                                      const ProductStructure& p);

struct P2P4Residuals {
  double residual_p2 = 0.0;
  double residual_p4 = 0.0;
};

// Closed forms for the second and fourth projections of a natural torsion:
//   p2(T) = 1/2 {T(x,y,z) - T(Px,Py,z) + F(z,x,Py)}
//   p4(T) = 1/2 {T(x,y,z) + T(Px,Py,z)}
// Returns g-norms of both defects (meaningful when T is natural for F).
P2P4Residuals natural_p2_p4_residuals(const Tensor3& t, const Tensor3& f,
                                      const Metric& g, const ProductStructure& p);

// Torsion of the canonical connection: T(x,y,z) = 1/2 F(z,y,Px).
// Antisymmetry of the result is a theorem on the integrable class and is
// verified, not assumed; a residual above tol (relative to max-abs)
// rejects the input as lying outside that class.
Tensor3 canonical_torsion(const Tensor3& f, const ProductStructure& p,
                          double tol = 1e-6);

// Norm of T(x,y,z) + T(y,z,x) + T(Px,y,Pz) + T(y,Pz,Px), the condition
// singling out the canonical connection among natural ones.
double canonical_condition_residual(const Tensor3& t, const ProductStructure& p);

// Canonical torsion on the pure-trace class, direct from theta:
// T(x,y,z) = (1/4n){g(y,z)tta(Px) - g(y,Pz)tta(x) - g(x,z)tta(Py) + g(x,Pz)tta(y)}.
Tensor3 w1_canonical_torsion(const Metric& g, const ProductStructure& p,
                             const Covector& theta);

// The eight tensors F(x,y,z), F(y,z,x), F(Px,y,z), F(Py,z,x), F(x,y,Pz),
// F(y,z,Px), F(Px,Py,z), F(Py,Pz,x), in this fixed order.
std::vector<Tensor3> f_ansatz_basis(const Tensor3& f, const ProductStructure& p);

// Linear combination of the eight F-ansatz terms with coefficients c.
Tensor3 f_ansatz_torsion(const Tensor3& f, const ProductStructure& p,
                         const std::array<double, 8>& c);

// The twelve tensors g(x,y)tta(z), g(y,z)tta(x), g(z,x)tta(y),
// g(x,y)tta(Pz), g(y,z)tta(Px), g(z,x)tta(Py), g(x,Py)tta(z),
// g(y,Pz)tta(x), g(z,Px)tta(y), g(x,Py)tta(Pz), g(y,Pz)tta(Px),
// g(z,Px)tta(Py), in this fixed order.
std::vector<Tensor3> gtheta_ansatz_basis(const Metric& g, const ProductStructure& p,
                                         const Covector& theta);

// Linear combination of the twelve g-theta ansatz terms.
Tensor3 gtheta_ansatz_torsion(const Metric& g, const ProductStructure& p,
                              const Covector& theta,
                              const std::array<double, 12>& c);

struct AnsatzSolution {
  bool consistent = false;      // least-squares residual below tolerance
  double residual = 0.0;        // residual of the assembled linear system
  Eigen::VectorXd coefficients; // minimum-norm particular solution
  Eigen::MatrixXd coeff_null_basis;     // columns: coefficient directions
  Tensor3 torsion;                      // torsion of the particular solution
  std::vector<Tensor3> torsion_directions;  // orthonormal null torsions
  int torsion_dimension = 0;    // rank of the null space as torsions
  double torsion_sv_gap = 0.0;  // kept/discarded singular value ratio
  int basis_rank = 0;           // rank of the basis tensors themselves
};

// Finds all coefficient vectors c whose torsion sum(c_i basis_i) is
// antisymmetric in the first two slots and whose connection preserves g
// and P for the given F. Assembled as one linear system over vectorized
// tensors and solved by SVD; coefficient directions with singular value
// below 1e-10 times the largest span the solution's degrees of freedom.
// An inconsistent system reports consistent=false (empty solution set).
AnsatzSolution solve_natural_ansatz(const std::vector<Tensor3>& basis,
                                    const Tensor3& f, const Metric& g,
                                    const ProductStructure& p,
                                    double tol = 1e-8);

struct FamilyParams {
  double lambda = 0.0;
  double mu = 0.0;
};

// Two-parameter family of torsions, all natural for the pure-trace
// structure tensor with Lee form theta:
//   T = lambda {g(y,z)tta(x) - g(x,z)tta(y) + g(y,Pz)tta(Px) - g(x,Pz)tta(Py)}
//     + mu {g(y,Pz)tta(x) - g(x,Pz)tta(y) + g(y,z)tta(Px) - g(x,z)tta(Py)}
//     + (1/2n){g(y,z)tta(Px) - g(x,z)tta(Py)}.
// At (lambda, mu) = (0, -1/4n) it reduces to w1_canonical_torsion.
Tensor3 w1_family_torsion(const Metric& g, const ProductStructure& p,
                          const Covector& theta, const FamilyParams& params);

// Norm of F(z,x,Py) - T(Px,Py,z) + T(x,y,z); zero characterizes torsions
// whose only projection components are the first and fourth.
double case_b_residual(const Tensor3& t, const Tensor3& f,
                       const ProductStructure& p);

}  // namespace natconn

#endif  // NATCONN_CONNECTIONS_HPP
