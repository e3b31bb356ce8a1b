#pragma once

#include <random>
#include <vector>

#include "vilab/inner_product.hpp"
#include "vilab/types.hpp"

namespace vilab {

// Closed convex set with exact membership / projection / distance oracles.
// Supported families: whole space, coordinate box (infinite bounds allowed),
// and affine slices {x : x_i = b_i for i in a fixed index set}.
class ConvexSet {
 public:
  enum class Kind { WholeSpace, Box, AffineSlice };

  static ConvexSet whole_space(int dim);
  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet interval(double lo, double hi) {
    Vector l(1), u(1);
    l << lo;
    u << hi;
    return box(l, u);
  }
  static ConvexSet affine_slice(int dim, std::vector<int> fixed_indices,
                                Vector fixed_values);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const std::vector<int>& fixed_indices() const { return fixed_indices_; }
  const Vector& fixed_values() const { return fixed_values_; }

  bool contains(const Vector& x, double tol = 1e-12) const;

  // Exact projection. Box projection requires the euclidean inner product;
  // requesting box + gram throws UnsupportedProjection.
  Vector project(const Vector& x,
                 const InnerProduct& ip = InnerProduct::euclidean()) const;

  double distance(const Vector& x,
                  const InnerProduct& ip = InnerProduct::euclidean()) const;

  // Box with bounds scaled by s > 0 (used by Mosco ladders k_n -> k).
  ConvexSet scaled(double s) const;

  // A feasible point drawn from the set (clamped gaussian for boxes).
  Vector sample(std::mt19937_64& rng) const;

  // Finite box vertices, empty when any bound is infinite or kind is not box.
  std::vector<Vector> vertices(int max_count = 64) const;

 private:
  ConvexSet() = default;
  Kind kind_ = Kind::WholeSpace;
  int dim_ = 0;
  Vector lower_, upper_;                // box
  std::vector<int> fixed_indices_;      // affine slice
  Vector fixed_values_;
};

}  // namespace vilab
