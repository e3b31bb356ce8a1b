#include "vilab/studies.hpp"

#include <cmath>
#include <ostream>

namespace vilab {

namespace {

void finish_row(const VIProblem& base, const Vector& u_ref, StudyRow& row,
                const Vector& u_n) {
  row.err = base.ip.norm(u_n - u_ref);
  row.dist = base.K.distance(u_n, base.ip);
  CriterionOptions copts;
  copts.reference_u = u_ref;
  row.eps_hat =
      epsilon_residual(base, u_n, ResidualMode::OnePlusNorm, copts);
}

}  // namespace

ConvergenceTable run_penalty_study(const VIProblem& base,
                                   const PenaltyOperator& G,
                                   const std::vector<double>& lambdas,
                                   SolveConfig cfg) {
  require(lambdas.size() >= 4, "penalty study: ladder too short");
  for (size_t i = 1; i < lambdas.size(); ++i)
    require(lambdas[i] < lambdas[i - 1] && lambdas[i] > 0.0,
            "penalty study: lambdas must decrease and stay positive");
  ConvergenceTable table;
  table.kind = "penalty";
  table.reference_u = solve_vi(base, cfg).u;
  std::mt19937_64 rng(7);
  for (double lambda : lambdas) {
    StudyRow row;
    row.param = lambda;
    try {
      SolveReport rep = solve_penalized(base, G, lambda, cfg);
      finish_row(base, table.reference_u, row, rep.u);
      row.iterations = rep.iterations;
      // Spot-check the monotonicity consequence (G u_n, v - u_n) <= 0 on
      // feasible v.
      double worst = 0.0;
      Vector gu = G.apply(rep.u);
      for (int t = 0; t < 8; ++t) {
        Vector v = base.K.project(base.K.sample(rng), base.ip);
        worst = std::max(worst, base.ip.inner(gu, v - rep.u));
      }
      row.extra = worst;
      table.iterate_sequence.push_back(rep.u);
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ConvergenceTable run_data_study(const VIProblem& base,
                                const std::vector<Vector>& f_seq,
                                SolveConfig cfg) {
  require(f_seq.size() >= 4, "data study: ladder too short");
  ConvergenceTable table;
  table.kind = "data";
  table.reference_u = solve_vi(base, cfg).u;
  for (const Vector& f_n : f_seq) {
    StudyRow row;
    row.param = base.ip.norm(f_n - base.f);
    try {
      VIProblem pert = base;
      pert.f = f_n;
      SolveReport rep = solve_vi(pert, cfg);
      finish_row(base, table.reference_u, row, rep.u);
      row.iterations = rep.iterations;
      row.extra = row.param;  // the corollary's witness eps_n = ||f - f_n||
      row.ok = row.eps_hat <= row.param + 10.0 * cfg.tol + 1e-8;
      table.iterate_sequence.push_back(rep.u);
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ConvergenceTable run_mosco_study(const VIProblem& base,
                                 const std::vector<ConvexSet>& sets,
                                 SolveConfig cfg) {
  require(sets.size() >= 4, "mosco study: ladder too short");
  ConvergenceTable table;
  table.kind = "mosco";
  table.reference_u = solve_vi(base, cfg).u;
  for (const ConvexSet& K_n : sets) {
    StudyRow row;
    try {
      VIProblem pert = base;
      pert.K = K_n;
      SolveReport rep = solve_vi(pert, cfg);
      finish_row(base, table.reference_u, row, rep.u);
      row.iterations = rep.iterations;
      // Recovery witness for Mosco condition (a): clamp of u into K_n.
      row.extra = base.ip.norm(K_n.project(table.reference_u, base.ip) -
                               table.reference_u);
      row.param = row.extra;
      table.iterate_sequence.push_back(rep.u);
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> geometric_lambda_ladder(int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(std::pow(2.0, -i));
  return out;
}

void write_csv(const ConvergenceTable& table, std::ostream& os) {
  os << "row,param,err,dist,eps_hat,iterations,extra,ok,error\n";
  int i = 0;
  for (const StudyRow& r : table.rows) {
    os << i++ << ',' << r.param << ',' << r.err << ',' << r.dist << ','
       << r.eps_hat << ',' << r.iterations << ',' << r.extra << ','
       << (r.ok ? 1 : 0) << ',' << r.error << '\n';
  }
}

}  // namespace vilab
