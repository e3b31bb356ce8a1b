#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace vilab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Error hierarchy. Every failure mode named in the module contracts maps to
// one of these, so callers (CLI, bindings) can translate them to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct UnsupportedProjection : Error {
  using Error::Error;
};

struct IncompatibleStructure : Error {
  using Error::Error;
};

struct NonContraction : Error {
  using Error::Error;
};

struct KernelMismatch : Error {
  using Error::Error;
};

struct SmallnessViolated : Error {
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace vilab
