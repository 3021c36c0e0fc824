// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#include "natconn/tensor_file.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include "natconn/common.hpp"

namespace natconn {
namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double number_at(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number()) {
    throw ParseError(what + ": expected a number");
  }
  return j.get<double>();
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int dim,
                                 const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ParseError(what + ": expected " + std::to_string(dim) + " rows");
  }
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError(what + ": row " + std::to_string(i) + " must hold " +
                       std::to_string(dim) + " numbers");
    }
    for (int k = 0; k < dim; ++k) {
      m(i, k) = number_at(row[k], what);
    }
  }
  return m;
}

std::vector<double> flat_from_json(const nlohmann::json& j, size_t count,
                                   const std::string& what) {
  if (!j.is_array() || j.size() != count) {
    throw ParseError(what + ": expected a flat array of " +
                     std::to_string(count) + " numbers");
  }
  std::vector<double> v(count);
  for (size_t i = 0; i < count; ++i) {
    v[i] = number_at(j[i], what);
  }
  return v;
}

}  // namespace

nlohmann::json tensor_file_to_json(const TensorFile& tf) {
  nlohmann::json j;
  j["dim"] = tf.dim;
  j["g"] = matrix_to_json(tf.g);
  j["P"] = matrix_to_json(tf.p);
  if (tf.theta) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < tf.theta->size(); ++i) {
      arr.push_back((*tf.theta)(i));
    }
    j["theta"] = std::move(arr);
  }
  if (tf.f) {
    j["F"] = tf.f->flat();
  }
  if (tf.t) {
    j["T"] = tf.t->flat();
  }
  return j;
}

TensorFile tensor_file_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ParseError("top level: expected a JSON object");
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ParseError("dim: required integer field");
  }
  TensorFile tf;
  tf.dim = j["dim"].get<int>();
  if (tf.dim < 2 || tf.dim > kMaxDim || tf.dim % 2 != 0) {
    throw ParseError("dim: must be an even integer in [2, " +
                     std::to_string(kMaxDim) + "]");
  }
  if (!j.contains("g") || !j.contains("P")) {
    throw ParseError("g, P: required fields");
  }
  tf.g = matrix_from_json(j["g"], tf.dim, "g");
  tf.p = matrix_from_json(j["P"], tf.dim, "P");
  const size_t cube = static_cast<size_t>(tf.dim) * tf.dim * tf.dim;
  if (j.contains("theta")) {
    const auto v = flat_from_json(j["theta"], static_cast<size_t>(tf.dim),
                                  "theta");
    Covector theta(tf.dim);
    for (int i = 0; i < tf.dim; ++i) {
      theta(i) = v[i];
    }
    tf.theta = theta;
  }
  if (j.contains("F")) {
    tf.f = Tensor3::from_flat(tf.dim, flat_from_json(j["F"], cube, "F"));
  }
  if (j.contains("T")) {
    tf.t = Tensor3::from_flat(tf.dim, flat_from_json(j["T"], cube, "T"));
  }
  return tf;
}

TensorFile read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return tensor_file_from_json(j);
}

void write_tensor_file(const TensorFile& tf, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInput("cannot write file: " + path);
  }
  out << tensor_file_to_json(tf).dump(2) << "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int i = 15; i >= 0; --i) {
    os << ((h >> (4 * i)) & 0xF);
  }
  return os.str();
}

}  // namespace natconn
