#pragma once

#include <optional>
#include <vector>

#include "vilab/vi_problem.hpp"

namespace vilab {

struct SolveConfig {
  // Relaxation step; 0 means the default m / M^2. Must stay inside the
  // contraction window (0, 2m/M^2).
  double rho = 0.0;
  double tol = 1e-10;
  long max_iter = 200000;
  // Nesterov acceleration for symmetric operators (restarted, step 1/M).
  // Off by default: the plain iteration carries the contraction certificate.
  bool accelerate = false;
  // Direct linear solve for equality-constrained/unconstrained linear
  // problems with j = 0. On by default; the FEM paths depend on it.
  bool allow_direct = true;
  std::optional<Vector> x0;
  // When set, record every iterate (used by the criterion cross-checks).
  bool record_iterates = false;
};

struct SolveReport {
  Vector u;
  long iterations = 0;
  double final_step = 0.0;
  // Max observed consecutive-step ratio after burn-in (plain iteration
  // only; NaN when a direct or accelerated path was taken).
  double contraction_estimate = 0.0;
  bool converged = false;
  std::vector<Vector> iterates;
};

struct MaxIterExceeded : Error {
  explicit MaxIterExceeded(SolveReport best)
      : Error("solver: max_iter exceeded"), report(std::move(best)) {}
  SolveReport report;
};

// Banach fixed-point iteration u <- prox_{K,rho j}(u - rho (Au - f)).
SolveReport solve_vi(const VIProblem& problem, SolveConfig config = {});

// Problem with operator A + (1/lambda) G over the whole space, same j and f.
// Validates that the kernel of G matches K on probe points.
SolveReport solve_penalized(const VIProblem& problem, const PenaltyOperator& G,
                            double lambda, SolveConfig config = {});

// Friction coupling for the quasi-variational problem: the nonsmooth term
// phi(eta, v) = sum_i weight_i * max(sign_i * eta[normal_dof_i], 0) *
// |v[tangential_dof_i]| is refrozen at each outer step.
struct FrictionCoupling {
  struct Term {
    int normal_dof = 0;
    double normal_sign = 1.0;
    int tangential_dof = 0;
    double weight = 0.0;  // mu_i * F_i * boundary measure share
  };
  std::vector<Term> terms;
  // Constants of the smallness condition d0^2 * mu_max * F_max < m_F.
  double d0 = 0.0;
  double m_F = 0.0;
  double mu_max = 0.0;
  double F_max = 0.0;

  bool smallness_holds() const { return d0 * d0 * mu_max * F_max < m_F; }
  ConvexFunctional frozen_term(const Vector& eta) const;
};

struct QviReport {
  SolveReport inner;
  long outer_iterations = 0;
  double outer_ratio = 0.0;  // observed contraction of the outer map
};

QviReport solve_qvi_friction(const VIProblem& problem,
                             const FrictionCoupling& coupling,
                             SolveConfig config = {}, double outer_tol = 1e-9,
                             long max_outer = 100);

}  // namespace vilab
