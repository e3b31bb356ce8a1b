#pragma once

#include <vector>

#include "vilab/convex_set.hpp"
#include "vilab/types.hpp"

namespace vilab {

// Convex nonsmooth term of the inequality. Coordinate-separable by
// construction:
//   zero                     j(v) = 0
//   weighted_positive_part   j(v) = sum_i w_i * max(s_i * v_i, 0)
//   tangential_weighted_abs  j(v) = sum_i c_i * |v_i|
// The sign s_i lets the positive part act on an oriented component (the
// contact normal v_nu = -u_y in the default geometry). All kinds are
// nonnegative, so the affine minorant alpha = 0, beta = 0 is valid.
class ConvexFunctional {
 public:
  enum class Kind { Zero, WeightedPositivePart, TangentialWeightedAbs, Mixed };

  struct Term {
    int index = 0;
    double weight = 0.0;  // >= 0
    double sign = 1.0;    // +-1, positive-part kind only
  };

  static ConvexFunctional zero();
  static ConvexFunctional weighted_positive_part(std::vector<Term> terms);
  static ConvexFunctional tangential_weighted_abs(std::vector<Term> terms);

  Kind kind() const { return kind_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const;

  double value(const Vector& v) const;

  // Lipschitz constant on { ||v|| <= D }: sum of weights (each term is
  // 1-Lipschitz in its coordinate under the euclidean structure, uniformly
  // in D for these kinds).
  double lipschitz_on_ball(double D) const;

  // Coordinatewise prox: argmin_v 1/2 ||v - x||^2 + rho * j(v).
  Vector prox(double rho, const Vector& x) const;

  // Sum of two separable functionals acting coordinatewise (used by the
  // quasi-variational outer loop: j_n + frozen friction term).
  friend ConvexFunctional operator+(const ConvexFunctional& a,
                                    const ConvexFunctional& b);

  // One arbitrary subgradient at v (coordinatewise; 0 at kinks).
  Vector subgradient(const Vector& v) const;

 private:
  Kind kind_ = Kind::Zero;
  std::vector<Term> terms_;           // positive-part terms
  std::vector<Term> abs_terms_;       // absolute-value terms
  friend class FunctionalAccess;
 public:
  const std::vector<Term>& abs_terms() const { return abs_terms_; }
};

// argmin_{v in K} 1/2 ||v - x||^2 + rho * j(v), coordinatewise in closed
// form: shrink/soft-threshold per term, then clamp to the box. Requires the
// euclidean structure and a separable (set, j) pair.
Vector combined_prox(const ConvexSet& set, const ConvexFunctional& j,
                     double rho, const Vector& x);

}  // namespace vilab
