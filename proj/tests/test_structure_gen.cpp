// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include <Eigen/Eigenvalues>
#include <cmath>

#include "doctest.h"
#include "natconn/classifier.hpp"
#include "natconn/common.hpp"
#include "natconn/structure_gen.hpp"

namespace {

using natconn::Covector;
using natconn::ManifoldClass;
using natconn::Metric;
using natconn::ProductStructure;
using natconn::Tensor3;

}  // namespace

TEST_SUITE("structure_gen") {
  TEST_CASE("uniform generator is deterministic and bounded") {
    natconn::UniformGen a(123);
    natconn::UniformGen b(123);
    for (int i = 0; i < 1000; ++i) {
      const double x = a.next();
      CHECK(x == b.next());
      CHECK(x >= -1.0);
      CHECK(x < 1.0);
    }
    natconn::UniformGen c(124);
    CHECK(a.next() != c.next());
  }

  TEST_CASE("random_metric is symmetric positive definite with margin") {
    const Metric g = natconn::random_metric(2, 42);
    const Eigen::MatrixXd& m = g.components();
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    CHECK(es.eigenvalues().minCoeff() >= 0.1);
  }

  TEST_CASE("identity basis gives the split diagonal structure") {
    const Metric g(Eigen::MatrixXd::Identity(2, 2));
    const ProductStructure p =
        natconn::product_structure_from_basis(g, Eigen::MatrixXd::Identity(2, 2));
    CHECK(p.components()(0, 0) == doctest::Approx(1.0));
    CHECK(p.components()(1, 1) == doctest::Approx(-1.0));
    CHECK(std::abs(p.components()(0, 1)) < 1e-14);
  }

  TEST_CASE("degenerate basis is rejected") {
    const Metric g(Eigen::MatrixXd::Identity(4, 4));
    Eigen::MatrixXd cols = Eigen::MatrixXd::Identity(4, 4);
    cols.col(3) = cols.col(2);  // dependent
    CHECK_THROWS_AS(natconn::product_structure_from_basis(g, cols),
                    natconn::InvalidInput);
  }

  TEST_CASE("random product structures satisfy all invariants") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
      const Metric g = natconn::random_metric(3, seed);
      const ProductStructure p = natconn::random_product_structure(g, seed + 50);
      const Eigen::MatrixXd& pm = p.components();
      const Eigen::MatrixXd& gm = g.components();
      CHECK((pm * pm - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <
            1e-10);
      CHECK(std::abs(pm.trace()) < 1e-10);
      CHECK((pm.transpose() * gm * pm - gm).cwiseAbs().maxCoeff() <
            1e-9 * gm.cwiseAbs().maxCoeff());
    }
  }

  TEST_CASE("symmetry projection of a worked example") {
    // A(x,y,z) = g(x,Py) c(z) with g = I, P = diag(1,-1), c = (1,2).
    // By hand the projection has entries (0-based)
    // F(0,0,1) = F(0,1,0) = c2/2 and F(1,0,1) = F(1,1,0) = -c1/2.
    const Metric g(Eigen::MatrixXd::Identity(2, 2));
    Eigen::MatrixXd pm(2, 2);
    pm << 1.0, 0.0, 0.0, -1.0;
    const ProductStructure p(pm, g);
    Tensor3 a(2);
    const double c1 = 1.0;
    const double c2 = 2.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          a(i, j, k) = pm(i, j) * (k == 0 ? c1 : c2);
    const Tensor3 f = natconn::project_to_f_symmetries(a, p);
    CHECK(f(0, 0, 1) == doctest::Approx(c2 / 2));
    CHECK(f(0, 1, 0) == doctest::Approx(c2 / 2));
    CHECK(f(1, 0, 1) == doctest::Approx(-c1 / 2));
    CHECK(f(1, 1, 0) == doctest::Approx(-c1 / 2));
    CHECK(f(0, 0, 0) == doctest::Approx(0.0));
    CHECK(f(1, 1, 1) == doctest::Approx(0.0));
    CHECK(natconn::f_symmetry_residual(f, p) < 1e-14);
  }

  TEST_CASE("symmetry projection is idempotent and orthogonal") {
    const Metric g = natconn::random_metric(2, 31);
    const ProductStructure p = natconn::random_product_structure(g, 32);
    const Tensor3 a = natconn::random_tensor3(4, 33);
    const Tensor3 f = natconn::project_to_f_symmetries(a, p);
    CHECK((natconn::project_to_f_symmetries(f, p) - f).max_abs() < 1e-12);
    // residual part is inner_product3-orthogonal to the projected part
    const Tensor3 rest = a - f;
    CHECK(std::abs(natconn::inner_product3(rest, f, g)) <
          1e-10 * natconn::g_norm(f, g) * natconn::g_norm(rest, g));
  }

  TEST_CASE("trace-class construction lands in the cyclic kernel") {
    const Metric g = natconn::random_metric(3, 61);
    const ProductStructure p = natconn::random_product_structure(g, 62);
    const Covector theta = natconn::random_covector(6, 63);
    const Tensor3 f = natconn::make_w1_f(g, p, theta);
    CHECK(natconn::f_symmetry_residual(f, p) < 1e-12);
    CHECK(natconn::g_norm(natconn::cyclic_sum_pz(f, p), g) <
          1e-10 * natconn::g_norm(f, g));
  }

  TEST_CASE("constrained generation hits its class constraints") {
    const Metric g = natconn::random_metric(2, 71);
    const ProductStructure p = natconn::random_product_structure(g, 72);
    const Tensor3 f12 =
        natconn::make_constrained_f(g, p, ManifoldClass::kW1plusW2, 73);
    CHECK(natconn::f_symmetry_residual(f12, p) < 1e-9);
    CHECK(natconn::g_norm(natconn::cyclic_sum_pz(f12, p), g) <
          1e-9 * natconn::g_norm(f12, g));
    const Tensor3 f2 = natconn::make_constrained_f(g, p, ManifoldClass::kW2, 74);
    CHECK(natconn::g_norm(natconn::cyclic_sum_pz(f2, p), g) < 1e-9);
    CHECK(natconn::covector_norm(natconn::lee_form(f2, g), g) < 1e-9);
  }

  TEST_CASE("constrained generation rejects classes it cannot produce") {
    const Metric g = natconn::random_metric(2, 81);
    const ProductStructure p = natconn::random_product_structure(g, 82);
    CHECK_THROWS_AS(
        natconn::make_constrained_f(g, p, ManifoldClass::kW1, 83),
        natconn::InvalidInput);
  }

  TEST_CASE("the trace-free class is empty in dimension two") {
    const Metric g = natconn::random_metric(1, 91);
    const ProductStructure p = natconn::random_product_structure(g, 92);
    CHECK_THROWS_AS(natconn::make_constrained_f(g, p, ManifoldClass::kW2, 93),
                    natconn::InvalidInput);
  }

  TEST_CASE("class names") {
    CHECK(std::string(to_string(ManifoldClass::kW0)) == "W0");
    CHECK(std::string(to_string(ManifoldClass::kW1plusW2)) == "W1+W2");
    CHECK(std::string(to_string(ManifoldClass::kOutside)) == "outside W1+W2");
  }
}
