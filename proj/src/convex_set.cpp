#include "vilab/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vilab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConvexSet ConvexSet::whole_space(int dim) {
  require(dim > 0, "whole_space: dim must be positive");
  ConvexSet s;
  s.kind_ = Kind::WholeSpace;
  s.dim_ = dim;
  return s;
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  require(lower.size() == upper.size() && lower.size() > 0,
          "box: bound dimensions disagree");
  for (int i = 0; i < lower.size(); ++i)
    require(lower[i] <= upper[i], "box: empty (lower > upper)");
  ConvexSet s;
  s.kind_ = Kind::Box;
  s.dim_ = static_cast<int>(lower.size());
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

ConvexSet ConvexSet::affine_slice(int dim, std::vector<int> fixed_indices,
                                  Vector fixed_values) {
  require(dim > 0, "affine_slice: dim must be positive");
  require(static_cast<int>(fixed_indices.size()) == fixed_values.size(),
          "affine_slice: index/value count mismatch");
  for (int i : fixed_indices)
    require(i >= 0 && i < dim, "affine_slice: index out of range");
  ConvexSet s;
  s.kind_ = Kind::AffineSlice;
  s.dim_ = dim;
  s.fixed_indices_ = std::move(fixed_indices);
  s.fixed_values_ = std::move(fixed_values);
  return s;
}

bool ConvexSet::contains(const Vector& x, double tol) const {
  require(static_cast<int>(x.size()) == dim_, "contains: dimension mismatch");
  switch (kind_) {
    case Kind::WholeSpace:
      return true;
    case Kind::Box:
      for (int i = 0; i < dim_; ++i)
        if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
      return true;
    case Kind::AffineSlice:
      for (size_t t = 0; t < fixed_indices_.size(); ++t)
        if (std::abs(x[fixed_indices_[t]] - fixed_values_[t]) > tol)
          return false;
      return true;
  }
  return false;
}

Vector ConvexSet::project(const Vector& x, const InnerProduct& ip) const {
  require(static_cast<int>(x.size()) == dim_, "project: dimension mismatch");
  switch (kind_) {
    case Kind::WholeSpace:
      return x;
    case Kind::Box: {
      if (ip.kind() != InnerProduct::Kind::Euclidean)
        throw UnsupportedProjection(
            "box projection has no closed form under a gram inner product");
      return x.cwiseMax(lower_).cwiseMin(upper_);
    }
    case Kind::AffineSlice: {
      Vector y = x;
      if (ip.kind() == InnerProduct::Kind::Euclidean) {
        for (size_t t = 0; t < fixed_indices_.size(); ++t)
          y[fixed_indices_[t]] = fixed_values_[t];
        return y;
      }
      // M-orthogonal projection onto the affine subspace: fix the listed
      // coordinates and solve for the free block,
      //   M_FF (y_F - x_F) = -M_FS (b - x_S).
      std::vector<bool> fixed(dim_, false);
      for (int i : fixed_indices_) fixed[i] = true;
      std::vector<int> free;
      for (int i = 0; i < dim_; ++i)
        if (!fixed[i]) free.push_back(i);
      for (size_t t = 0; t < fixed_indices_.size(); ++t)
        y[fixed_indices_[t]] = fixed_values_[t];
      if (free.empty()) return y;
      const Matrix& M = ip.gram_matrix();
      const int nf = static_cast<int>(free.size());
      Matrix Mff(nf, nf);
      Vector rhs = Vector::Zero(nf);
      for (int a = 0; a < nf; ++a) {
        for (int b = 0; b < nf; ++b) Mff(a, b) = M(free[a], free[b]);
        for (size_t t = 0; t < fixed_indices_.size(); ++t)
          rhs[a] -= M(free[a], fixed_indices_[t]) *
                    (fixed_values_[t] - x[fixed_indices_[t]]);
      }
      Vector df = Mff.ldlt().solve(rhs);
      for (int a = 0; a < nf; ++a) y[free[a]] = x[free[a]] + df[a];
      return y;
    }
  }
  throw ValidationError("project: unknown set kind");
}

double ConvexSet::distance(const Vector& x, const InnerProduct& ip) const {
  return ip.norm(x - project(x, ip));
}

ConvexSet ConvexSet::scaled(double s) const {
  require(kind_ == Kind::Box, "scaled: only box sets support scaling");
  require(s > 0.0, "scaled: scale must be positive");
  Vector lo = lower_, hi = upper_;
  for (int i = 0; i < dim_; ++i) {
    lo[i] = std::isinf(lo[i]) ? lo[i] : s * lo[i];
    hi[i] = std::isinf(hi[i]) ? hi[i] : s * hi[i];
  }
  return box(lo, hi);
}

Vector ConvexSet::sample(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector x(dim_);
  switch (kind_) {
    case Kind::WholeSpace:
      for (int i = 0; i < dim_; ++i) x[i] = gauss(rng);
      return x;
    case Kind::Box:
      for (int i = 0; i < dim_; ++i) {
        const double lo = lower_[i], hi = upper_[i];
        if (std::isfinite(lo) && std::isfinite(hi))
          x[i] = lo + unif(rng) * (hi - lo);
        else if (std::isfinite(lo))
          x[i] = lo + std::abs(gauss(rng));
        else if (std::isfinite(hi))
          x[i] = hi - std::abs(gauss(rng));
        else
          x[i] = gauss(rng);
      }
      return x;
    case Kind::AffineSlice: {
      for (int i = 0; i < dim_; ++i) x[i] = gauss(rng);
      for (size_t t = 0; t < fixed_indices_.size(); ++t)
        x[fixed_indices_[t]] = fixed_values_[t];
      return x;
    }
  }
  throw ValidationError("sample: unknown set kind");
}

std::vector<Vector> ConvexSet::vertices(int max_count) const {
  std::vector<Vector> out;
  if (kind_ != Kind::Box) return out;
  for (int i = 0; i < dim_; ++i)
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) return out;
  if (dim_ > 30 || (1LL << dim_) > max_count) return out;
  const long long count = 1LL << dim_;
  for (long long mask = 0; mask < count; ++mask) {
    Vector v(dim_);
    for (int i = 0; i < dim_; ++i)
      v[i] = (mask >> i) & 1 ? upper_[i] : lower_[i];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace vilab
