#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vilab/criterion.hpp"
#include "vilab/solver.hpp"

namespace vilab {

struct StudyRow {
  double param = 0.0;      // lambda, ||f_n - f||, or ladder index
  double err = 0.0;        // ||u_n - u||
  double dist = 0.0;       // d(u_n, K)
  double eps_hat = 0.0;    // criterion estimate (OnePlusNorm)
  long iterations = 0;
  double extra = 0.0;      // study-specific diagnostic (see each runner)
  bool ok = true;
  std::string error;
};

struct ConvergenceTable {
  std::string kind;
  std::vector<StudyRow> rows;
  Vector reference_u;

  std::vector<Vector> iterate_sequence;  // the u_n per row, for cross-checks
};

// Penalty regime: rows solve with operator A + (1/lambda_n) G; extra reports
// the worst (G u_n, v - u_n) over feasible probes (should stay <= 0).
ConvergenceTable run_penalty_study(const VIProblem& base,
                                   const PenaltyOperator& G,
                                   const std::vector<double>& lambdas,
                                   SolveConfig cfg = {});

// Data regime: rows solve with perturbed right-hand sides; extra reports
// ||f_n - f||, and each row checks eps_hat <= ||f_n - f|| + 10 tol.
ConvergenceTable run_data_study(const VIProblem& base,
                                const std::vector<Vector>& f_seq,
                                SolveConfig cfg = {});

// Mosco regime over constructive box/slice families; extra reports the
// recovery-witness distance ||clamp_{K_n}(u) - u||.
ConvergenceTable run_mosco_study(const VIProblem& base,
                                 const std::vector<ConvexSet>& sets,
                                 SolveConfig cfg = {});

// Default ladders mirroring the 2^-n / 1/n structure of the examples.
std::vector<double> geometric_lambda_ladder(int count = 13);

void write_csv(const ConvergenceTable& table, std::ostream& os);

}  // namespace vilab
