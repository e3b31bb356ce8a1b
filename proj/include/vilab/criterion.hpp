#pragma once

#include <optional>
#include <vector>

#include "vilab/solver.hpp"
#include "vilab/vi_problem.hpp"

namespace vilab {

// Denominator of the perturbed inequality:
//   OnePlusNorm   eps * (1 + ||v - u_n||)   (the criterion's condition)
//   Norm          eps * ||v - u_n||         (Tykhonov / LP definitions)
enum class ResidualMode { OnePlusNorm, Norm };

// Finite-prefix proxy for "-> 0": fit log(value) against log(n) over the
// last half of the indices; accept iff the slope is steep enough and the
// final value is small, or the final value is negligible outright.
struct DecayConfig {
  double slope_max = -0.5;
  double final_tol = 1e-3;
  double abs_tol = 1e-8;
};

bool decay_test(const std::vector<double>& values, const DecayConfig& cfg = {});

struct CriterionOptions {
  int probe_budget = 32;
  unsigned long seed = 12345;
  DecayConfig decay;
  // Reference solution; solved internally when absent.
  std::optional<Vector> reference_u;
  SolveConfig solve;
};

// Certified lower bound on the smallest feasible eps for the perturbed
// inequality at u_n: max over a probe set of
//   [(f - A u_n, v - u_n) + j(u_n) - j(v)] / denom(v),  floored at 0.
// Probes: the reference solution, P_K(u_n), one projected-gradient point,
// box vertices (dim <= 6), random feasible points, each refined by projected
// local ascent. Exact (dense grid + golden refine) for 1-D intervals.
double epsilon_residual(const VIProblem& problem, const Vector& u_n,
                        ResidualMode mode, const CriterionOptions& opts = {});

struct CriterionRow {
  double distance = 0.0;       // d(u_n, K)
  double eps_one_plus = 0.0;   // estimate under OnePlusNorm
  double eps_norm = 0.0;       // estimate under Norm
  double lp_witness_norm = 0.0;  // ||P_K(u_n) - u_n||
  double err_to_solution = 0.0;  // ||u_n - u||
  bool member = false;           // u_n in K
};

struct CriterionReport {
  std::vector<CriterionRow> rows;
  Vector reference_u;
  double bound_D = 0.0;          // max ||u_n||
  double apriori_bound = 0.0;    // a-priori bound from the quadratic estimate
  bool bounded_ok = true;        // D within the a-priori bound
  bool t_approximating = false;
  bool tykhonov_approximating = false;
  bool lp_approximating = false;
  bool converging_trend = false;
};

using CandidateSequence = std::vector<Vector>;

// Convergence-criterion test: distance condition (a) + eps-residual condition (b)
// under OnePlusNorm, with the decay proxy, against the converging trend.
CriterionReport check_criterion(const VIProblem& problem,
                                const CandidateSequence& seq,
                                const CriterionOptions& opts = {});

// Full classification: Tykhonov / Levitin-Polyak / T-approximating flags.
CriterionReport classify_sequence(const VIProblem& problem,
                                  const CandidateSequence& seq,
                                  const CriterionOptions& opts = {});

// D = max ||u_n||, plus the a-priori bound computed from
// (m, ||Au||, ||f||, |j(u)|, max eps). Sequences exceeding the bound cannot
// satisfy condition (b).
double boundedness_check(const VIProblem& problem, const CandidateSequence& seq,
                         double eps_max, double* apriori_bound = nullptr);

}  // namespace vilab
