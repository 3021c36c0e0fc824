// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include <array>
#include <cmath>

#include "doctest.h"
#include "natconn/common.hpp"
#include "natconn/structure_gen.hpp"
#include "natconn/torsion_space.hpp"

namespace {

using natconn::Metric;
using natconn::ProductStructure;
using natconn::Tensor3;
using natconn::TorsionCase;

using Proj = Tensor3 (*)(const Tensor3&, const ProductStructure&);
constexpr std::array<Proj, 4> kProjectors = {
    &natconn::project_p1, &natconn::project_p2, &natconn::project_p3,
    &natconn::project_p4};

struct Fixture {
  Metric g;
  ProductStructure p;
  Fixture(int dim, std::uint64_t seed)
      : g(natconn::random_metric(dim / 2, seed)),
        p(natconn::random_product_structure(g, seed + 1)) {}
};

Tensor3 random_torsion(int dim, std::uint64_t seed) {
  return natconn::antisymmetrize12(natconn::random_tensor3(dim, seed));
}

}  // namespace

TEST_SUITE("torsion_space") {
  TEST_CASE("torsion inputs must be antisymmetric") {
    CHECK_THROWS_AS(natconn::require_torsion(natconn::random_tensor3(4, 1)),
                    natconn::InvalidInput);
    CHECK_NOTHROW(natconn::require_torsion(random_torsion(4, 1)));
  }

  TEST_CASE("the four projections sum to the identity") {
    for (int dim : {2, 4, 6}) {
      const Fixture fx(dim, 13);
      const Tensor3 t = random_torsion(dim, 14);
      Tensor3 sum(dim);
      for (Proj proj : kProjectors) {
        sum += proj(t, fx.p);
      }
      CHECK((sum - t).max_abs() < 1e-12 * t.max_abs());
    }
  }

  TEST_CASE("projections are idempotent and mutually annihilating") {
    const Fixture fx(4, 13);
    const Tensor3 t = random_torsion(4, 15);
    for (int i = 0; i < 4; ++i) {
      const Tensor3 pi = kProjectors[i](t, fx.p);
      CHECK((kProjectors[i](pi, fx.p) - pi).max_abs() < 1e-12 * t.max_abs());
      for (int j = 0; j < 4; ++j) {
        if (i != j) {
          CHECK(kProjectors[j](pi, fx.p).max_abs() < 1e-12 * t.max_abs());
        }
      }
    }
  }

  TEST_CASE("images are orthogonal in the metric inner product") {
    const Fixture fx(6, 21);
    const Tensor3 t = random_torsion(6, 22);
    std::array<Tensor3, 4> parts;
    for (int i = 0; i < 4; ++i) {
      parts[i] = kProjectors[i](t, fx.p);
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const double denom = natconn::g_norm(parts[i], fx.g) *
                             natconn::g_norm(parts[j], fx.g);
        CHECK(std::abs(natconn::inner_product3(parts[i], parts[j], fx.g)) <
              1e-10 * std::max(1.0, denom));
      }
    }
  }

  TEST_CASE("projections keep antisymmetry and commute with P substitution") {
    const Fixture fx(4, 23);
    const Tensor3 t = random_torsion(4, 24);
    const Tensor3 tp = compose_p(t, fx.p.components(), {1, 2, 3});
    for (Proj proj : kProjectors) {
      CHECK(natconn::antisymmetry12_residual(proj(t, fx.p)) <
            1e-12 * t.max_abs());
      const Tensor3 lhs = proj(tp, fx.p);
      const Tensor3 rhs = compose_p(proj(t, fx.p), fx.p.components(), {1, 2, 3});
      CHECK((lhs - rhs).max_abs() < 1e-12 * t.max_abs());
    }
  }

  TEST_CASE("decompose reports norms and completeness") {
    const Fixture fx(4, 25);
    const Tensor3 t = random_torsion(4, 26);
    const natconn::TorsionDecomposition dec = natconn::decompose(t, fx.g, fx.p);
    CHECK(dec.completeness_residual < 1e-10 * std::max(1.0, dec.norm_total));
    double sq = 0.0;
    for (double n : dec.norms) {
      sq += n * n;
    }
    // Pythagoras across orthogonal components
    CHECK(std::sqrt(sq) == doctest::Approx(dec.norm_total).epsilon(1e-9));
    CHECK(dec.norm_total == doctest::Approx(natconn::g_norm(t, fx.g)));
  }

  TEST_CASE("case labels follow the component pattern") {
    const Fixture fx(4, 27);
    const Tensor3 t = random_torsion(4, 28);
    const Tensor3 t1 = natconn::project_p1(t, fx.p);
    REQUIRE(natconn::g_norm(t1, fx.g) > 1e-6);
    CHECK(natconn::case_label(natconn::decompose(t1, fx.g, fx.p)).value ==
          TorsionCase::kA);
    const natconn::CaseLabel zero =
        natconn::case_label(natconn::decompose(Tensor3(4), fx.g, fx.p));
    CHECK(zero.value == TorsionCase::kOther);
    const Tensor3 t14 = t1 + natconn::project_p4(t, fx.p);
    CHECK(natconn::case_label(natconn::decompose(t14, fx.g, fx.p)).value ==
          TorsionCase::kB);
    const Tensor3 t12 = t1 + natconn::project_p2(t, fx.p);
    CHECK(natconn::case_label(natconn::decompose(t12, fx.g, fx.p)).value ==
          TorsionCase::kC);
    CHECK(std::string(to_string(TorsionCase::kA)) == "A");
    CHECK(std::string(to_string(TorsionCase::kOther)) == "other");
  }

  TEST_CASE("third and fourth projections vanish identically at 2n=2") {
    for (std::uint64_t seed : {101, 102, 103}) {
      const Fixture fx(2, seed);
      for (int k = 0; k < 2; ++k) {
        Tensor3 basis(2);
        basis(0, 1, k) = 1.0;
        basis(1, 0, k) = -1.0;
        CHECK(natconn::project_p3(basis, fx.p).max_abs() < 1e-13);
        CHECK(natconn::project_p4(basis, fx.p).max_abs() < 1e-13);
      }
    }
    // and exactly on the diagonal fixture
    const Metric g(Eigen::MatrixXd::Identity(2, 2));
    Eigen::MatrixXd pm(2, 2);
    pm << 1.0, 0.0, 0.0, -1.0;
    const ProductStructure p(pm, g);
    Tensor3 basis(2);
    basis(0, 1, 0) = 1.0;
    basis(1, 0, 0) = -1.0;
    CHECK(natconn::project_p3(basis, p).max_abs() == 0.0);
    CHECK(natconn::project_p4(basis, p).max_abs() == 0.0);
  }
}
