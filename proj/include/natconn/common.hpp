// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.

#ifndef NATCONN_COMMON_HPP
#define NATCONN_COMMON_HPP

#include <stdexcept>
#include <string>

namespace natconn {

// Thrown when an input violates a documented precondition or type invariant
// (non-SPD metric, P*P != I, missing antisymmetry, dimension mismatch, ...).
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal algebraic identity fails, which indicates a bug in
// a formula transcription rather than bad user input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Default comparison tolerances. A residual r against a reference scale s
// passes when r <= atol + rtol * s.
struct Tolerances {
  double atol = 1e-10;
  double rtol = 1e-8;

  bool close(double residual, double scale) const {
    return residual <= atol + rtol * scale;
  }
};

// Maximum supported dimension 2n for dense rank-3 storage.
inline constexpr int kMaxDim = 16;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInput(msg);
}

}  // namespace natconn

#endif  // NATCONN_COMMON_HPP
