// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include <cmath>

#include "doctest.h"
#include "natconn/classifier.hpp"
#include "natconn/common.hpp"
#include "natconn/structure_gen.hpp"

namespace {

using natconn::ClassReport;
using natconn::Covector;
using natconn::ManifoldClass;
using natconn::Metric;
using natconn::ProductStructure;
using natconn::Tensor3;

struct Fixture {
  Metric g;
  ProductStructure p;
  Fixture(int dim, std::uint64_t seed)
      : g(natconn::random_metric(dim / 2, seed)),
        p(natconn::random_product_structure(g, seed + 1)) {}
};

}  // namespace

TEST_SUITE("classifier") {
  TEST_CASE("lee form round trips through the trace-class display") {
    const Fixture fx(6, 11);
    const Covector theta = natconn::random_covector(6, 13);
    const Tensor3 f = natconn::make_w1_f(fx.g, fx.p, theta);
    const Covector back = natconn::lee_form(f, fx.g);
    CHECK((back - theta).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("hand values of the diagonal fixtures") {
    // 2n = 2: g = I, P = diag(1,-1), theta = (1,0).
    {
      const Metric g(Eigen::MatrixXd::Identity(2, 2));
      Eigen::MatrixXd pm(2, 2);
      pm << 1.0, 0.0, 0.0, -1.0;
      const ProductStructure p(pm, g);
      Covector theta(2);
      theta << 1.0, 0.0;
      const Tensor3 f = natconn::make_w1_f(g, p, theta);
      CHECK(f(1, 1, 0) == 1.0);  // F(e2,e2,e1) in 1-based labels
      CHECK(f(0, 0, 0) == 0.0);
    }
    // 2n = 4: g = I, P = diag(1,1,-1,-1), theta = (1,0,0,0).
    {
      const Metric g(Eigen::MatrixXd::Identity(4, 4));
      Eigen::VectorXd d(4);
      d << 1.0, 1.0, -1.0, -1.0;
      const ProductStructure p(d.asDiagonal(), g);
      Covector theta = Covector::Zero(4);
      theta(0) = 1.0;
      const Tensor3 f = natconn::make_w1_f(g, p, theta);
      CHECK(f(2, 2, 0) == 0.5);
      CHECK(f(3, 3, 0) == 0.5);
      CHECK(f(1, 1, 0) == 0.0);
    }
  }

  TEST_CASE("verdicts for every constructed class") {
    const Fixture fx(6, 21);
    CHECK(natconn::classify(Tensor3(6), fx.g, fx.p).verdict ==
          ManifoldClass::kW0);
    const Covector theta = natconn::random_covector(6, 22);
    CHECK(natconn::classify(natconn::make_w1_f(fx.g, fx.p, theta), fx.g, fx.p)
              .verdict == ManifoldClass::kW1);
    CHECK(natconn::classify(
              natconn::make_constrained_f(fx.g, fx.p, ManifoldClass::kW2, 23),
              fx.g, fx.p)
              .verdict == ManifoldClass::kW2);
    CHECK(natconn::classify(natconn::make_constrained_f(
                                fx.g, fx.p, ManifoldClass::kW1plusW2, 24),
                            fx.g, fx.p)
              .verdict == ManifoldClass::kW1plusW2);
    const Tensor3 generic = natconn::project_to_f_symmetries(
        natconn::random_tensor3(6, 25), fx.p);
    CHECK(natconn::classify(generic, fx.g, fx.p).verdict ==
          ManifoldClass::kOutside);
  }

  TEST_CASE("report residuals are coherent") {
    const Fixture fx(4, 31);
    const Covector theta = natconn::random_covector(4, 32);
    const Tensor3 f = natconn::make_w1_f(fx.g, fx.p, theta);
    const ClassReport rep = natconn::classify(f, fx.g, fx.p);
    // residual_w0 is the unnormalized tensor norm
    CHECK(rep.residual_w0 == doctest::Approx(natconn::g_norm(f, fx.g)));
    CHECK(rep.residual_w1 < 1e-10);
    CHECK(rep.residual_cyclic < 1e-10);
    CHECK(rep.theta_norm > 0.1);
    CHECK(rep.residual_w2 == doctest::Approx(rep.theta_norm));
    CHECK(rep.nijenhuis_norm < 1e-10);
  }

  TEST_CASE("nijenhuis tensor detects non-integrable structures") {
    const Fixture fx(6, 41);
    const Tensor3 f12 =
        natconn::make_constrained_f(fx.g, fx.p, ManifoldClass::kW1plusW2, 42);
    CHECK(natconn::g_norm(natconn::nijenhuis_from_f(f12, fx.p), fx.g) < 1e-9);
    Tensor3 generic = natconn::project_to_f_symmetries(
        natconn::random_tensor3(6, 43), fx.p);
    generic = (1.0 / natconn::g_norm(generic, fx.g)) * generic;
    CHECK(natconn::g_norm(natconn::nijenhuis_from_f(generic, fx.p), fx.g) >
          0.01);
  }

  TEST_CASE("tensors violating the slot symmetries are rejected") {
    const Fixture fx(4, 51);
    const Tensor3 raw = natconn::random_tensor3(4, 52);
    CHECK_THROWS_AS(natconn::classify(raw, fx.g, fx.p), natconn::InvalidInput);
  }

  TEST_CASE("verdicts and residuals survive a change of basis") {
    const Fixture fx(4, 61);
    const Tensor3 f =
        natconn::make_constrained_f(fx.g, fx.p, ManifoldClass::kW1plusW2, 62);
    natconn::UniformGen gen(63);
    const Eigen::MatrixXd a =
        Eigen::MatrixXd::Identity(4, 4) + 0.2 * gen.matrix(4, 4);
    const Metric g2(a.transpose() * fx.g.components() * a);
    const ProductStructure p2(a.inverse() * fx.p.components() * a, g2,
                              natconn::Tolerances{1e-9, 1e-7});
    const Tensor3 f2 = natconn::slot_contract(
        natconn::slot_contract(natconn::slot_contract(f, a, 1), a, 2), a, 3);
    const ClassReport before = natconn::classify(f, fx.g, fx.p);
    const ClassReport after = natconn::classify(f2, g2, p2, 1e-6);
    CHECK(before.verdict == after.verdict);
    CHECK(before.residual_cyclic ==
          doctest::Approx(after.residual_cyclic).epsilon(1e-6));
    CHECK(before.theta_norm == doctest::Approx(after.theta_norm).epsilon(1e-6));
  }
}
