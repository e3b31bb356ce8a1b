#include "vilab/functional.hpp"

#include <algorithm>
#include <cmath>

namespace vilab {

ConvexFunctional ConvexFunctional::zero() { return ConvexFunctional(); }

ConvexFunctional ConvexFunctional::weighted_positive_part(
    std::vector<Term> terms) {
  for (const Term& t : terms) {
    require(t.weight >= 0.0, "positive_part: weights must be nonnegative");
    require(t.sign == 1.0 || t.sign == -1.0, "positive_part: sign must be +-1");
  }
  ConvexFunctional j;
  j.kind_ = Kind::WeightedPositivePart;
  j.terms_ = std::move(terms);
  return j;
}

ConvexFunctional ConvexFunctional::tangential_weighted_abs(
    std::vector<Term> terms) {
  for (const Term& t : terms)
    require(t.weight >= 0.0, "weighted_abs: weights must be nonnegative");
  ConvexFunctional j;
  j.kind_ = Kind::TangentialWeightedAbs;
  j.abs_terms_ = std::move(terms);
  return j;
}

bool ConvexFunctional::is_zero() const {
  for (const Term& t : terms_)
    if (t.weight != 0.0) return false;
  for (const Term& t : abs_terms_)
    if (t.weight != 0.0) return false;
  return true;
}

double ConvexFunctional::value(const Vector& v) const {
  double s = 0.0;
  for (const Term& t : terms_)
    s += t.weight * std::max(t.sign * v[t.index], 0.0);
  for (const Term& t : abs_terms_) s += t.weight * std::abs(v[t.index]);
  return s;
}

double ConvexFunctional::lipschitz_on_ball(double) const {
  double s = 0.0;
  for (const Term& t : terms_) s += t.weight;
  for (const Term& t : abs_terms_) s += t.weight;
  return s;
}

Vector ConvexFunctional::prox(double rho, const Vector& x) const {
  require(rho > 0.0, "prox: rho must be positive");
  Vector y = x;
  // 1-D prox of w*max(s*v,0): shift by rho*w against the oriented direction,
  // pinning to 0 inside [0, rho*w].
  for (const Term& t : terms_) {
    const double w = rho * t.weight;
    if (w == 0.0) continue;
    double z = t.sign * y[t.index];
    if (z > w)
      z -= w;
    else if (z > 0.0)
      z = 0.0;
    y[t.index] = t.sign * z;
  }
  for (const Term& t : abs_terms_) {
    const double w = rho * t.weight;
    if (w == 0.0) continue;
    double& z = y[t.index];
    if (z > w)
      z -= w;
    else if (z < -w)
      z += w;
    else
      z = 0.0;
  }
  return y;
}

Vector ConvexFunctional::subgradient(const Vector& v) const {
  Vector g = Vector::Zero(v.size());
  for (const Term& t : terms_)
    if (t.sign * v[t.index] > 0.0) g[t.index] += t.sign * t.weight;
  for (const Term& t : abs_terms_)
    if (v[t.index] != 0.0) g[t.index] += t.weight * (v[t.index] > 0 ? 1 : -1);
  return g;
}

ConvexFunctional operator+(const ConvexFunctional& a,
                           const ConvexFunctional& b) {
  if (b.is_zero() && b.kind_ == ConvexFunctional::Kind::Zero) return a;
  if (a.is_zero() && a.kind_ == ConvexFunctional::Kind::Zero) return b;
  ConvexFunctional c;
  c.kind_ = ConvexFunctional::Kind::Mixed;
  c.terms_ = a.terms_;
  c.terms_.insert(c.terms_.end(), b.terms_.begin(), b.terms_.end());
  c.abs_terms_ = a.abs_terms_;
  c.abs_terms_.insert(c.abs_terms_.end(), b.abs_terms_.begin(),
                      b.abs_terms_.end());
  return c;
}

namespace {

bool term_touches_fixed(const std::vector<ConvexFunctional::Term>& terms,
                        const std::vector<int>& fixed) {
  for (const auto& t : terms)
    for (int i : fixed)
      if (t.index == i && t.weight != 0.0) return true;
  return false;
}

}  // namespace

Vector combined_prox(const ConvexSet& set, const ConvexFunctional& j,
                     double rho, const Vector& x) {
  require(static_cast<int>(x.size()) == set.dim(),
          "combined_prox: dimension mismatch");
  if (set.kind() == ConvexSet::Kind::AffineSlice) {
    // The separable argument needs j constant on the fixed coordinates.
    if (term_touches_fixed(j.terms(), set.fixed_indices()) ||
        term_touches_fixed(j.abs_terms(), set.fixed_indices()))
      throw IncompatibleStructure(
          "combined_prox: functional acts on fixed slice coordinates");
  }
  // Coordinatewise: the 1-D objective is convex, so clamping the
  // unconstrained prox to the interval gives the exact constrained minimizer.
  return set.project(j.prox(rho, x));
}

}  // namespace vilab
