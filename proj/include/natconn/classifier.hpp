// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_CLASSIFIER_HPP
#define NATCONN_CLASSIFIER_HPP

#include "natconn/metric.hpp"
#include "natconn/structure_gen.hpp"
#include "natconn/tensor3.hpp"

namespace natconn {

// Lee form: theta(z) = g^{ij} F(e_i, e_j, z).
Covector lee_form(const Tensor3& f, const Metric& g);

// Nijenhuis tensor with the last slot lowered by g:
// g(N(x,y),z) = F(x,Py,z) - F(y,Px,z) + F(Px,y,z) - F(Py,x,z).
// Vanishes exactly on the class W1+W2 (integrable structures).
Tensor3 nijenhuis_from_f(const Tensor3& f, const ProductStructure& p);

// Residuals are g-norms computed on F scaled to unit g-norm (so verdict
// thresholds are scale-free); residual_w0 alone is the unscaled norm of F.
struct ClassReport {
  ManifoldClass verdict = ManifoldClass::kOutside;
  double theta_norm = 0.0;      // g-norm of the Lee form of normalized F
  double residual_w0 = 0.0;     // g-norm of F itself
  double residual_w1 = 0.0;     // distance to the W1 form with matching theta
  double residual_cyclic = 0.0; // cyclic condition map norm
  double residual_w2 = 0.0;     // max(residual_cyclic, theta_norm)
  double nijenhuis_norm = 0.0;
};

// Assigns the minimal class among W0, W1, W2, W1+W2 whose residual falls
// below tol, else kOutside. Requires F to satisfy the structure tensor
// symmetries up to sym_tol (relative to max-abs), which covers tensors
// assembled by finite differences.
ClassReport classify(const Tensor3& f, const Metric& g, const ProductStructure& p,
                     double tol = 1e-8, double sym_tol = 1e-4);

}  // namespace natconn

#endif  // NATCONN_CLASSIFIER_HPP
