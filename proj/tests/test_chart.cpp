// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include <cmath>

#include "doctest.h"
#include "natconn/chart.hpp"
#include "natconn/classifier.hpp"
#include "natconn/common.hpp"
#include "natconn/connections.hpp"

namespace {

using natconn::Chart;
using natconn::ChartTensors;
using natconn::Christoffel;
using natconn::ManifoldClass;
using natconn::Tensor3;

Eigen::VectorXd pt4(double a, double b, double c, double d) {
  Eigen::VectorXd v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST_SUITE("chart") {
  TEST_CASE("flat chart has zero Christoffel symbols and zero F") {
    const Chart chart = natconn::flat_product_chart(2);
    const Christoffel gamma =
        natconn::christoffel(chart, Eigen::VectorXd::Zero(4));
    for (const auto& m : gamma) {
      CHECK(m.cwiseAbs().maxCoeff() < 1e-10);
    }
    const ChartTensors ct =
        natconn::structure_tensor_at(chart, pt4(0.3, -0.2, 0.5, -0.1));
    CHECK(ct.f.frobenius_norm() < 1e-8);
    CHECK(natconn::classify(ct.f, ct.g, ct.p).verdict == ManifoldClass::kW0);
  }

  TEST_CASE("conformal chart matches the closed-form Christoffel symbols") {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(4);
    s(0) = 0.3;
    const Chart chart = natconn::conformal_product_chart(2, s);
    const Eigen::VectorXd pt = pt4(0.1, -0.05, 0.2, 0.15);
    const Christoffel gamma = natconn::christoffel(chart, pt);
    for (int k = 0; k < 4; ++k) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const double exact = (k == i ? s(j) : 0.0) + (k == j ? s(i) : 0.0) -
                               (i == j ? s(k) : 0.0);
          CHECK(gamma[k](i, j) == doctest::Approx(exact).epsilon(1e-6));
        }
      }
    }
  }

  TEST_CASE("one-dimensional exponential factor gives Gamma = 1") {
    Chart chart;
    chart.dim = 2;
    chart.name = "diag_exp";
    chart.metric = [](const Eigen::VectorXd& u) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
      m(0, 0) = std::exp(2.0 * u(0));
      return m;
    };
    chart.product = [](const Eigen::VectorXd&) {
      Eigen::MatrixXd m(2, 2);
      m << 1.0, 0.0, 0.0, -1.0;
      return m;
    };
    const Christoffel gamma =
        natconn::christoffel(chart, Eigen::VectorXd::Zero(2));
    CHECK(gamma[0](0, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(gamma[1](0, 0)) < 1e-8);
  }

  TEST_CASE("non-definite metrics are rejected by the SPD path") {
    Chart chart;
    chart.dim = 2;
    chart.name = "bad";
    chart.metric = [](const Eigen::VectorXd&) {
      Eigen::MatrixXd m(2, 2);
      m << 1.0, 0.0, 0.0, -1.0;
      return m;
    };
    chart.product = [](const Eigen::VectorXd&) {
      Eigen::MatrixXd m(2, 2);
      m << 1.0, 0.0, 0.0, -1.0;
      return m;
    };
    CHECK_THROWS_AS(natconn::christoffel(chart, Eigen::VectorXd::Zero(2)),
                    natconn::InvalidInput);
  }

  TEST_CASE("conformal chart: structure tensor hand values and class") {
    const Chart chart = natconn::conformal_product_chart(2);  // sigma = 0.3 u1
    const ChartTensors ct =
        natconn::structure_tensor_at(chart, Eigen::VectorXd::Zero(4));
    CHECK(ct.f(2, 2, 0) == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(ct.f(3, 3, 0) == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(std::abs(ct.f(1, 1, 0)) < 1e-6);
    const natconn::Covector theta = natconn::lee_form(ct.f, ct.g);
    CHECK(theta(0) == doctest::Approx(1.2).epsilon(1e-6));
    CHECK(natconn::classify(ct.f, ct.g, ct.p, 1e-6).verdict ==
          ManifoldClass::kW1);
  }

  TEST_CASE("rotated chart is not integrable") {
    const Chart chart = natconn::rotated_p_chart(0.5);
    const ChartTensors ct =
        natconn::structure_tensor_at(chart, Eigen::VectorXd::Zero(4));
    // dP/du1 puts 2*rate at the (1,2)/(2,1) entries, lowered with g = I
    CHECK(ct.f(0, 1, 2) == doctest::Approx(1.0).epsilon(1e-5));
    const Tensor3 n = natconn::nijenhuis_from_f(ct.f, ct.p);
    CHECK(n(0, 1, 2) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(n.frobenius_norm() > 0.01);
    CHECK(natconn::classify(ct.f, ct.g, ct.p).verdict ==
          ManifoldClass::kOutside);
  }

  TEST_CASE("difference tensor from finite differences matches the formula") {
    const Chart chart = natconn::conformal_product_chart(2);
    for (const auto& pt :
         {Eigen::VectorXd(Eigen::VectorXd::Zero(4)), pt4(0.2, -0.1, 0.4, 0.05)}) {
      const ChartTensors ct = natconn::structure_tensor_at(chart, pt);
      const Tensor3 fd = natconn::phi_fd(chart, pt);
      const Tensor3 alg = natconn::phi_from_f(ct.f, ct.p);
      CHECK((fd - alg).max_abs() < 1e-4);
      CHECK((fd - natconn::permuted(fd, 1, 0, 2)).max_abs() < 1e-4);
    }
  }

  TEST_CASE("canonical torsion passes the finite-difference naturality check") {
    const Chart chart = natconn::conformal_product_chart(2);
    const Eigen::VectorXd pt = pt4(0.2, -0.1, 0.4, 0.05);
    const ChartTensors ct = natconn::structure_tensor_at(chart, pt);
    const Tensor3 tc = natconn::canonical_torsion(ct.f, ct.p);
    const natconn::FDCheck check =
        natconn::natural_connection_fd_check(chart, pt, tc);
    CHECK(check.residual_g < 1e-4);
    CHECK(check.residual_p < 1e-4);
    // Levi-Civita (zero torsion) keeps g but not P on this chart
    const natconn::FDCheck lc =
        natconn::natural_connection_fd_check(chart, pt, Tensor3(4));
    CHECK(lc.residual_g < 1e-6);
    CHECK(lc.residual_p > 0.01);
  }

  TEST_CASE("finite differences converge at second order") {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(4);
    s(0) = 0.3;
    const Chart chart = natconn::conformal_product_chart(2, s);
    const Eigen::VectorXd pt = pt4(0.1, -0.05, 0.2, 0.15);
    const auto gamma_err = [&](double h) {
      const Christoffel gamma = natconn::christoffel(chart, pt, {h});
      double worst = 0.0;
      for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            const double exact = (k == i ? s(j) : 0.0) +
                                 (k == j ? s(i) : 0.0) -
                                 (i == j ? s(k) : 0.0);
            worst = std::max(worst, std::abs(gamma[k](i, j) - exact));
          }
      return worst;
    };
    const double ratio = gamma_err(1e-3) / gamma_err(5e-4);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
  }
}
