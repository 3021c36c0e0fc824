// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "natconn/common.hpp"
#include "natconn/structure_gen.hpp"
#include "natconn/tensor_file.hpp"

namespace {

using natconn::ParseError;
using natconn::Tensor3;
using natconn::TensorFile;
using nlohmann::json;

TensorFile sample(int dim, std::uint64_t seed) {
  TensorFile tf;
  tf.dim = dim;
  const natconn::Metric g = natconn::random_metric(dim / 2, seed);
  const natconn::ProductStructure p =
      natconn::random_product_structure(g, seed + 1);
  tf.g = g.components();
  tf.p = p.components();
  tf.theta = natconn::random_covector(dim, seed + 2);
  tf.f = natconn::random_tensor3(dim, seed + 3);
  tf.t = natconn::antisymmetrize12(natconn::random_tensor3(dim, seed + 4));
  return tf;
}

}  // namespace

TEST_SUITE("tensor_file") {
  TEST_CASE("json round trip preserves every field exactly") {
    const TensorFile a = sample(4, 5);
    const TensorFile b = natconn::tensor_file_from_json(
        natconn::tensor_file_to_json(a));
    CHECK(b.dim == 4);
    CHECK((a.g - b.g).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.p - b.p).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(b.theta.has_value());
    CHECK((*a.theta - *b.theta).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(b.f.has_value());
    CHECK((*a.f - *b.f).max_abs() == 0.0);
    REQUIRE(b.t.has_value());
    CHECK((*a.t - *b.t).max_abs() == 0.0);
  }

  TEST_CASE("optional fields stay optional") {
    TensorFile a;
    a.dim = 2;
    a.g = Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd pm(2, 2);
    pm << 1.0, 0.0, 0.0, -1.0;
    a.p = pm;
    const json j = natconn::tensor_file_to_json(a);
    CHECK(!j.contains("F"));
    CHECK(!j.contains("T"));
    CHECK(!j.contains("theta"));
    const TensorFile b = natconn::tensor_file_from_json(j);
    CHECK(!b.f.has_value());
    CHECK(!b.t.has_value());
  }

  TEST_CASE("file round trip is byte deterministic") {
    const TensorFile a = sample(4, 7);
    const std::string path = "tensor_file_roundtrip.json";
    natconn::write_tensor_file(a, path);
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    in.close();
    const TensorFile b = natconn::read_tensor_file(path);
    CHECK((a.g - b.g).cwiseAbs().maxCoeff() == 0.0);
    natconn::write_tensor_file(b, path);
    std::ifstream in2(path, std::ios::binary);
    std::string bytes2((std::istreambuf_iterator<char>(in2)),
                       std::istreambuf_iterator<char>());
    in2.close();
    CHECK(bytes == bytes2);
    std::remove(path.c_str());
  }

  TEST_CASE("schema violations raise parse errors") {
    const json good = natconn::tensor_file_to_json(sample(4, 9));

    json missing = good;
    missing.erase("dim");
    CHECK_THROWS_AS(natconn::tensor_file_from_json(missing), ParseError);

    json odd = good;
    odd["dim"] = 5;
    CHECK_THROWS_AS(natconn::tensor_file_from_json(odd), ParseError);

    json huge = good;
    huge["dim"] = 40;
    CHECK_THROWS_AS(natconn::tensor_file_from_json(huge), ParseError);

    json bad_g = good;
    bad_g["g"] = {1.0, 2.0};  // not nested rows
    CHECK_THROWS_AS(natconn::tensor_file_from_json(bad_g), ParseError);

    json bad_f = good;
    bad_f["F"] = std::vector<double>(7, 0.0);  // wrong length
    CHECK_THROWS_AS(natconn::tensor_file_from_json(bad_f), ParseError);

    json bad_type = good;
    bad_type["theta"] = "nope";
    CHECK_THROWS_AS(natconn::tensor_file_from_json(bad_type), ParseError);

    CHECK_THROWS_AS(natconn::read_tensor_file("does_not_exist.json"),
                    ParseError);
  }

  TEST_CASE("value level validation is deferred to the math types") {
    // a parseable file whose g is not symmetric parses fine here and is
    // rejected only when a Metric is built from it
    TensorFile tf;
    tf.dim = 2;
    Eigen::MatrixXd g(2, 2);
    g << 1.0, 0.3, 0.0, 1.0;
    tf.g = g;
    Eigen::MatrixXd pm(2, 2);
    pm << 1.0, 0.0, 0.0, -1.0;
    tf.p = pm;
    const TensorFile b =
        natconn::tensor_file_from_json(natconn::tensor_file_to_json(tf));
    CHECK_THROWS_AS(natconn::Metric{b.g}, natconn::InvalidInput);
  }

  TEST_CASE("fnv1a digests match the reference constants") {
    CHECK(natconn::fnv1a_hex("") == "cbf29ce484222325");
    CHECK(natconn::fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(natconn::fnv1a_hex("hello") == "a430d84680aabd0b");
  }
}
