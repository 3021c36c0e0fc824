// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/torsion_space.hpp"

#include <algorithm>

#include "natconn/common.hpp"

namespace natconn {
namespace {

struct P1P2Terms {
  Tensor3 tyzx, tzxy;      // cyclic relabelings
  Tensor3 pz_x_py;         // T(Pz,x,Py)
  Tensor3 py_z_px;         // T(Py,z,Px)
  Tensor3 z_px_py;         // T(z,Px,Py)
  Tensor3 px_py_z;         // T(Px,Py,z)
  Tensor3 py_pz_x;         // T(Py,Pz,x)
  Tensor3 pz_px_y;         // T(Pz,Px,y)
  Tensor3 y_pz_px;         // T(y,Pz,Px)
};

P1P2Terms p1p2_terms(const Tensor3& t, const Eigen::MatrixXd& pm) {
  P1P2Terms w;
  w.tyzx = permuted(t, 1, 2, 0);
  w.tzxy = permuted(t, 2, 0, 1);
  w.pz_x_py = compose_p(w.tzxy, pm, {2, 3});
  w.py_z_px = compose_p(w.tyzx, pm, {1, 2});
  w.z_px_py = compose_p(w.tzxy, pm, {1, 2});
  w.px_py_z = compose_p(t, pm, {1, 2});
  w.py_pz_x = compose_p(w.tyzx, pm, {2, 3});
  w.pz_px_y = compose_p(w.tzxy, pm, {1, 3});
  w.y_pz_px = compose_p(w.tyzx, pm, {1, 3});
  return w;
}

void check_inputs(const Tensor3& t, const ProductStructure& p) {
  require(t.dim() == p.dim(), "tensor and structure dimensions differ");
  require_torsion(t);
}

}  // namespace

void require_torsion(const Tensor3& t, double tol) {
  const double scale = std::max(1.0, t.max_abs());
  if (antisymmetry12_residual(t) > tol * scale) {
    throw InvalidInput("tensor is not antisymmetric in its first two slots");
  }
}

Tensor3 project_p1(const Tensor3& t, const ProductStructure& p) {
  check_inputs(t, p);
  const auto w = p1p2_terms(t, p.components());
  Tensor3 out = 2.0 * t - w.tyzx - w.tzxy - w.pz_x_py + w.py_z_px +
                w.z_px_py - 2.0 * w.px_py_z + w.py_pz_x + w.pz_px_y -
                w.y_pz_px;
  out *= 0.125;
  return out;
}

Tensor3 project_p2(const Tensor3& t, const ProductStructure& p) {
  check_inputs(t, p);
  const auto w = p1p2_terms(t, p.components());
  Tensor3 out = 2.0 * t + w.tyzx + w.tzxy + w.pz_x_py - w.py_z_px -
                w.z_px_py - 2.0 * w.px_py_z - w.py_pz_x - w.pz_px_y +
                w.y_pz_px;
  out *= 0.125;
  return out;
}

Tensor3 project_p3(const Tensor3& t, const ProductStructure& p) {
  check_inputs(t, p);
  const Eigen::MatrixXd& pm = p.components();
  Tensor3 out = t + compose_p(t, pm, {1, 2}) - compose_p(t, pm, {1, 3}) -
                compose_p(t, pm, {2, 3});
  out *= 0.25;
  return out;
}

Tensor3 project_p4(const Tensor3& t, const ProductStructure& p) {
  check_inputs(t, p);
  const Eigen::MatrixXd& pm = p.components();
  Tensor3 out = t + compose_p(t, pm, {1, 2}) + compose_p(t, pm, {1, 3}) +
                compose_p(t, pm, {2, 3});
  out *= 0.25;
  return out;
}

TorsionDecomposition decompose(const Tensor3& t, const Metric& g,
                               const ProductStructure& p) {
  require(t.dim() == g.dim(), "tensor and metric dimensions differ");
  TorsionDecomposition dec{{project_p1(t, p), project_p2(t, p),
                            project_p3(t, p), project_p4(t, p)},
                           {},
                           0.0,
                           0.0};
  Tensor3 sum = dec.parts[0];
  for (int i = 1; i < 4; ++i) {
    sum += dec.parts[i];
  }
  dec.norm_total = g_norm(t, g);
  for (int i = 0; i < 4; ++i) {
    dec.norms[i] = g_norm(dec.parts[i], g);
  }
  dec.completeness_residual = g_norm(sum - t, g);
  if (dec.completeness_residual > 1e-9 * std::max(1.0, dec.norm_total)) {
    throw InternalError("projection components fail to sum to the input");
  }
  return dec;
}

const char* to_string(TorsionCase c) {
  switch (c) {
    case TorsionCase::kA:
      return "A";
    case TorsionCase::kB:
      return "B";
    case TorsionCase::kC:
      return "C";
    case TorsionCase::kOther:
      return "other";
  }
  throw InternalError("unhandled TorsionCase");
}

CaseLabel case_label(const TorsionDecomposition& dec, double tol) {
  require(tol > 0.0, "tolerance must be positive");
  CaseLabel label;
  for (int i = 0; i < 4; ++i) {
    label.component_nonzero[i] = dec.norms[i] >= tol * dec.norm_total &&
                                 dec.norms[i] > 0.0;
  }
  const auto& nz = label.component_nonzero;
  if (nz[0] && !nz[1] && !nz[2] && !nz[3]) {
    label.value = TorsionCase::kA;
  } else if (nz[0] && !nz[1] && !nz[2] && nz[3]) {
    label.value = TorsionCase::kB;
  } else if (nz[0] && nz[1] && !nz[2] && !nz[3]) {
    label.value = TorsionCase::kC;
  } else {
    label.value = TorsionCase::kOther;
  }
  return label;
}

}  // namespace natconn
