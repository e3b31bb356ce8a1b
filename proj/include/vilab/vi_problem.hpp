#pragma once

#include "vilab/functional.hpp"
#include "vilab/operators.hpp"

namespace vilab {

// The full inequality data bundle: find u in K with
//   (Au, v - u) + j(v) - j(u) >= (f, v - u)   for all v in K.
struct VIProblem {
  MonotoneOperator A = MonotoneOperator::identity(1);
  ConvexFunctional j = ConvexFunctional::zero();
  ConvexSet K = ConvexSet::whole_space(1);
  Vector f = Vector::Zero(1);
  InnerProduct ip = InnerProduct::euclidean();

  int dim() const { return A.dim(); }

  void validate() const {
    require(A.m() > 0.0, "VIProblem: operator not strongly monotone (m <= 0)");
    require(A.m() <= A.M() + 1e-12 * A.M(), "VIProblem: m > M");
    require(K.dim() == A.dim() && f.size() == A.dim(),
            "VIProblem: dimensions disagree");
  }

  // Raw inequality slack of the pair (u_n, v):
  //   (f - A u_n, v - u_n) + j(u_n) - j(v).
  // Positive values mean the inequality is violated at v by that amount.
  double vi_slack(const Vector& u_n, const Vector& v) const {
    return ip.inner(f - A.apply(u_n), v - u_n) + j.value(u_n) - j.value(v);
  }
};

// A scalar instance used throughout the golden tests: X = R, K = [lo, hi],
// A = I, j = 0, given f.
inline VIProblem scalar_projection_problem(double lo, double hi, double f) {
  VIProblem p;
  p.A = MonotoneOperator::identity(1);
  p.K = ConvexSet::interval(lo, hi);
  p.f = Vector::Constant(1, f);
  return p;
}

}  // namespace vilab
