#pragma once

#include "vilab/types.hpp"

namespace vilab {

// Inner product structure of the discrete space: either the euclidean
// coefficient inner product or a Gram-matrix product (u,v) = u^T M v with
// M symmetric positive definite.
class InnerProduct {
 public:
  enum class Kind { Euclidean, Gram };

  static InnerProduct euclidean() { return InnerProduct(); }

  // Validates symmetry (relative 1e-12) and positive definiteness.
  static InnerProduct gram(const Matrix& M);

  Kind kind() const { return kind_; }
  const Matrix& gram_matrix() const { return gram_; }

  double inner(const Vector& u, const Vector& v) const {
    if (kind_ == Kind::Euclidean) return u.dot(v);
    return u.dot(gram_ * v);
  }

  double norm(const Vector& u) const {
    double s = inner(u, u);
    return s > 0.0 ? std::sqrt(s) : 0.0;
  }

 private:
  InnerProduct() : kind_(Kind::Euclidean) {}
  Kind kind_;
  Matrix gram_;
};

}  // namespace vilab
