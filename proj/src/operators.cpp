#include "vilab/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace vilab {

PenaltyOperator PenaltyOperator::proj_residual(ConvexSet set) {
  PenaltyOperator g;
  g.kind_ = Kind::ProjResidual;
  g.dim_ = set.dim();
  g.set_ = std::move(set);
  return g;
}

PenaltyOperator PenaltyOperator::boundary_mass(int dim,
                                               std::vector<int> indices,
                                               Vector targets,
                                               Vector weights) {
  require(static_cast<int>(indices.size()) == targets.size() &&
              targets.size() == weights.size(),
          "boundary_mass: index/target/weight sizes disagree");
  for (int i : indices)
    require(i >= 0 && i < dim, "boundary_mass: index out of range");
  require(weights.size() == 0 || weights.minCoeff() > 0.0,
          "boundary_mass: weights must be positive");
  PenaltyOperator g;
  g.kind_ = Kind::BoundaryMass;
  g.dim_ = dim;
  g.indices_ = std::move(indices);
  g.targets_ = std::move(targets);
  g.weights_ = std::move(weights);
  return g;
}

Vector PenaltyOperator::apply(const Vector& u) const {
  require(static_cast<int>(u.size()) == dim_, "penalty: dimension mismatch");
  if (kind_ == Kind::ProjResidual) return u - set_.project(u);
  Vector g = Vector::Zero(dim_);
  for (size_t t = 0; t < indices_.size(); ++t)
    g[indices_[t]] = weights_[t] * (u[indices_[t]] - targets_[t]);
  return g;
}

double PenaltyOperator::lipschitz() const {
  if (kind_ == Kind::ProjResidual) return 1.0;
  return indices_.empty() ? 0.0 : weights_.maxCoeff();
}

ConvexSet PenaltyOperator::kernel_set() const {
  if (kind_ == Kind::ProjResidual) return set_;
  return ConvexSet::affine_slice(dim_, indices_, targets_);
}

namespace {

void certify_linear(const Matrix& A, double& m, double& M) {
  Matrix sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  m = es.eigenvalues().minCoeff();
  M = A.jacobiSvd().singularValues().maxCoeff();
}

}  // namespace

MonotoneOperator MonotoneOperator::linear(Matrix A) {
  require(A.rows() == A.cols() && A.rows() > 0, "linear: matrix must be square");
  MonotoneOperator op;
  op.kind_ = Kind::Linear;
  op.dim_ = static_cast<int>(A.rows());
  certify_linear(A, op.m_, op.M_);
  op.A_ = std::move(A);
  return op;
}

MonotoneOperator MonotoneOperator::affine(Matrix A, Vector shift) {
  require(A.rows() == shift.size(), "affine: shift dimension mismatch");
  MonotoneOperator op = linear(std::move(A));
  op.kind_ = Kind::Affine;
  op.shift_ = std::move(shift);
  return op;
}

MonotoneOperator MonotoneOperator::identity(int dim) {
  return linear(Matrix::Identity(dim, dim));
}

MonotoneOperator MonotoneOperator::penalized(MonotoneOperator base,
                                             PenaltyOperator G,
                                             double lambda) {
  require(lambda > 0.0, "penalized: lambda must be positive");
  require(base.dim() == G.dim(), "penalized: dimension mismatch");
  MonotoneOperator op;
  op.kind_ = Kind::Penalized;
  op.dim_ = base.dim();
  // G is monotone, so the strong monotonicity constant of the base carries
  // over; Lipschitz grows by L_G / lambda.
  op.m_ = base.m();
  op.M_ = base.M() + G.lipschitz() / lambda;
  op.lambda_ = lambda;
  op.base_ = std::make_shared<const MonotoneOperator>(std::move(base));
  op.penalty_ = std::make_shared<const PenaltyOperator>(std::move(G));
  return op;
}

bool MonotoneOperator::symmetric(double tol) const {
  // Both penalty kinds are gradients of convex energies (scaled boundary
  // mass is quadratic; the projection residual is grad of dist^2 / 2).
  if (kind_ == Kind::Penalized) return base_->symmetric(tol);
  const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
  return (A_ - A_.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Vector MonotoneOperator::apply(const Vector& u) const {
  require(static_cast<int>(u.size()) == dim_, "operator: dimension mismatch");
  switch (kind_) {
    case Kind::Linear:
      return A_ * u;
    case Kind::Affine:
      return A_ * u + shift_;
    case Kind::Penalized:
      return base_->apply(u) + (1.0 / lambda_) * penalty_->apply(u);
  }
  throw ValidationError("operator: unknown kind");
}

}  // namespace vilab
