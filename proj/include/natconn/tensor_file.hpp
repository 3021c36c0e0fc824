// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_TENSOR_FILE_HPP
#define NATCONN_TENSOR_FILE_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "natconn/metric.hpp"
#include "natconn/tensor3.hpp"

namespace natconn {

// Schema or type problems in an interchange file. Distinct from
// InvalidInput (mathematically inconsistent values) so the CLI can map
// them to different exit codes.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON interchange record. "dim" is the full dimension 2n; "g" and "P"
// are nested row arrays; "F" and "T" are flat row-major arrays of dim^3
// values with index (i*dim + j)*dim + k; "theta" is a flat array of dim
// values. Optional fields are simply absent.
struct TensorFile {
  int dim = 0;
  Eigen::MatrixXd g;
  Eigen::MatrixXd p;
  std::optional<Covector> theta;
  std::optional<Tensor3> f;
  std::optional<Tensor3> t;
};

nlohmann::json tensor_file_to_json(const TensorFile& tf);

// Throws ParseError on schema violations (missing keys, wrong types,
// inconsistent shapes). Value-level validity (symmetry of g, P^2 = I) is
// not checked here; constructing Metric / ProductStructure does that.
TensorFile tensor_file_from_json(const nlohmann::json& j);

TensorFile read_tensor_file(const std::string& path);
void write_tensor_file(const TensorFile& tf, const std::string& path);

// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits; used to
// fingerprint CLI inputs in reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace natconn

#endif  // NATCONN_TENSOR_FILE_HPP
