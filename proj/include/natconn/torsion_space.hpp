// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_TORSION_SPACE_HPP
#define NATCONN_TORSION_SPACE_HPP

#include <array>

#include "natconn/metric.hpp"
#include "natconn/tensor3.hpp"

namespace natconn {

// Throws InvalidInput unless t is antisymmetric in its first two slots,
// within tol relative to max-abs. Torsion-type tensors are required
// antisymmetric on input; nothing is silently repaired.
void require_torsion(const Tensor3& t, double tol = 1e-8);

// The four projections splitting the torsion space into invariant
// subspaces. Each validates antisymmetry of the input and preserves it.
Tensor3 project_p1(const Tensor3& t, const ProductStructure& p);
Tensor3 project_p2(const Tensor3& t, const ProductStructure& p);
Tensor3 project_p3(const Tensor3& t, const ProductStructure& p);
Tensor3 project_p4(const Tensor3& t, const ProductStructure& p);

struct TorsionDecomposition {
  std::array<Tensor3, 4> parts;
  std::array<double, 4> norms;   // g-norms of the parts
  double norm_total = 0.0;       // g-norm of the input
  double completeness_residual = 0.0;
};

// Runs all four projections and checks they sum back to the input;
// a residual above 1e-9 (relative to max(1, g-norm of t)) throws
// InternalError since it can only come from a projector defect.
TorsionDecomposition decompose(const Tensor3& t, const Metric& g,
                               const ProductStructure& p);

enum class TorsionCase { kA, kB, kC, kOther };

const char* to_string(TorsionCase c);

struct CaseLabel {
  TorsionCase value = TorsionCase::kOther;
  std::array<bool, 4> component_nonzero{};  // one flag per projection
};

// Component i counts as nonzero when norms[i] >= tol * norm_total
// (scale-free). A: only p1; B: exactly p1 and p4; C: exactly p1 and p2;
// anything else, including any nonzero p3, is kOther.
CaseLabel case_label(const TorsionDecomposition& dec, double tol = 1e-8);

}  // namespace natconn

#endif  // NATCONN_TORSION_SPACE_HPP
