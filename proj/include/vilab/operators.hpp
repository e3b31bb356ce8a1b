#pragma once

#include <memory>
#include <vector>

#include "vilab/convex_set.hpp"
#include "vilab/types.hpp"

namespace vilab {

class MonotoneOperator;

// Penalty operator G of a set K: monotone, Lipschitz, with kernel exactly K.
//   proj_residual   G = I - P_K
//   boundary_mass   (Gu)_i = w_i (u_i - b_i) on an index set, 0 elsewhere
class PenaltyOperator {
 public:
  enum class Kind { ProjResidual, BoundaryMass };

  static PenaltyOperator proj_residual(ConvexSet set);
  static PenaltyOperator boundary_mass(int dim, std::vector<int> indices,
                                       Vector targets, Vector weights);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const ConvexSet& set() const { return set_; }
  const std::vector<int>& indices() const { return indices_; }
  const Vector& targets() const { return targets_; }
  const Vector& weights() const { return weights_; }

  Vector apply(const Vector& u) const;

  // Lipschitz constant: 1 for proj_residual (euclidean), max weight for
  // boundary_mass.
  double lipschitz() const;

  // The kernel {u : Gu = 0} as a set oracle (K itself, or the affine slice
  // {u_i = b_i}).
  ConvexSet kernel_set() const;

 private:
  PenaltyOperator() : set_(ConvexSet::whole_space(1)) {}
  Kind kind_ = Kind::ProjResidual;
  int dim_ = 0;
  ConvexSet set_;
  std::vector<int> indices_;
  Vector targets_, weights_;
};

// Strongly monotone Lipschitz operator with certified constants (m, M).
// Linear and affine kinds certify m = lambda_min of the symmetric part and
// M = sigma_max; the penalized kind composes base + (1/lambda) G.
class MonotoneOperator {
 public:
  enum class Kind { Linear, Affine, Penalized };

  static MonotoneOperator linear(Matrix A);
  static MonotoneOperator affine(Matrix A, Vector shift);
  static MonotoneOperator identity(int dim);
  static MonotoneOperator penalized(MonotoneOperator base, PenaltyOperator G,
                                    double lambda);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double m() const { return m_; }
  double M() const { return M_; }
  const Matrix& matrix() const { return A_; }
  const Vector& shift() const { return shift_; }
  bool is_linear_kind() const { return kind_ != Kind::Penalized; }
  bool symmetric(double tol = 1e-10) const;
  const MonotoneOperator* base() const { return base_.get(); }
  const PenaltyOperator* penalty() const { return penalty_.get(); }
  double penalty_lambda() const { return lambda_; }

  Vector apply(const Vector& u) const;

 private:
  MonotoneOperator() = default;
  Kind kind_ = Kind::Linear;
  int dim_ = 0;
  Matrix A_;
  Vector shift_;
  std::shared_ptr<const MonotoneOperator> base_;
  std::shared_ptr<const PenaltyOperator> penalty_;
  double lambda_ = 0.0;
  double m_ = 0.0, M_ = 0.0;
};

}  // namespace vilab
