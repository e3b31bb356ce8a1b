#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vilab/studies.hpp"

using namespace vilab;

namespace {

bool smoothed_nonincreasing(const ConvergenceTable& t, double slack = 1e-9) {
  // Averaged over windows of 2 to forgive single-row noise.
  std::vector<double> s;
  for (size_t i = 0; i + 1 < t.rows.size(); ++i)
    s.push_back(0.5 * (t.rows[i].err + t.rows[i + 1].err));
  for (size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i + 1] > s[i] + slack) return false;
  return true;
}

}  // namespace

TEST_CASE("scalar penalty ladder reproduces lambda/(1+lambda) errors") {
  VIProblem base = scalar_projection_problem(0, 1, 2);
  PenaltyOperator G = PenaltyOperator::proj_residual(base.K);
  ConvergenceTable t = run_penalty_study(base, G, geometric_lambda_ladder());
  REQUIRE(t.rows.size() == 13);
  for (const auto& row : t.rows) {
    CHECK(row.ok);
    CHECK(std::abs(row.err - row.param / (1.0 + row.param)) <= 1e-9);
    CHECK(row.extra <= 1e-9);  // (G u_n, v - u_n) <= 0 on feasible probes
  }
  CHECK(smoothed_nonincreasing(t));
  CHECK(std::abs(t.reference_u[0] - 1.0) <= 1e-10);
}

TEST_CASE("ladder validation rejects short or non-decreasing input") {
  VIProblem base = scalar_projection_problem(0, 1, 2);
  PenaltyOperator G = PenaltyOperator::proj_residual(base.K);
  CHECK_THROWS_AS(run_penalty_study(base, G, {1.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(run_penalty_study(base, G, {1.0, 0.5, 0.7, 0.1}),
                  ValidationError);
}

TEST_CASE("data study satisfies the strong-monotonicity rate row-wise") {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    VIProblem base;
    base.A = MonotoneOperator::linear(oracles::random_spd(n, rng));
    base.K = ConvexSet::box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0));
    base.f = Vector::Random(n);
    std::vector<Vector> f_seq;
    Vector dir = Vector::Random(n).normalized();
    for (int k = 1; k <= 10; ++k) f_seq.push_back(base.f + dir / k);
    ConvergenceTable t = run_data_study(base, f_seq);
    for (const auto& row : t.rows) {
      CHECK(row.ok);
      CHECK(row.err <= row.param / base.A.m() + 1e-9);
      CHECK(row.eps_hat <= row.param + 1e-8 + 1e-9);
    }
    CHECK(smoothed_nonincreasing(t));
  }
}

TEST_CASE("mosco interval ladder recovers harmonic errors") {
  VIProblem base = scalar_projection_problem(0, 1, 2);
  std::vector<ConvexSet> sets;
  for (int n = 1; n <= 12; ++n)
    sets.push_back(ConvexSet::interval(0.0, 1.0 - 1.0 / (n + 1.0)));
  ConvergenceTable t = run_mosco_study(base, sets);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].ok);
    CHECK(t.rows[i].err == doctest::Approx(1.0 / (i + 2.0)).epsilon(1e-8));
    CHECK(t.rows[i].extra == doctest::Approx(1.0 / (i + 2.0)).epsilon(1e-8));
  }
  CHECK(smoothed_nonincreasing(t));
}

TEST_CASE("study iterates classify as t-approximating") {
  VIProblem base = scalar_projection_problem(0, 1, 2);
  PenaltyOperator G = PenaltyOperator::proj_residual(base.K);
  std::vector<double> long_ladder;
  for (int i = 0; i < 24; ++i) long_ladder.push_back(std::pow(2.0, -i));
  ConvergenceTable t = run_penalty_study(base, G, long_ladder);
  CriterionOptions opts;
  opts.reference_u = t.reference_u;
  CriterionReport rep = check_criterion(base, t.iterate_sequence, opts);
  CHECK(rep.t_approximating);
  CHECK(rep.converging_trend);
}

TEST_CASE("csv serialization is stable and complete") {
  VIProblem base = scalar_projection_problem(0, 1, 2);
  PenaltyOperator G = PenaltyOperator::proj_residual(base.K);
  ConvergenceTable t =
      run_penalty_study(base, G, {1.0, 0.5, 0.25, 0.125});
  std::ostringstream os;
  write_csv(t, os);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "row,param,err,dist,eps_hat,iterations,extra,ok,error");
  int lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == 4);
  // Same run serializes to the same bytes.
  std::ostringstream os2;
  write_csv(run_penalty_study(base, G, {1.0, 0.5, 0.25, 0.125}), os2);
  CHECK(os.str() == os2.str());
}

TEST_CASE("failed rows are recorded, not thrown") {
  // lambda below the hard floor: the row fails but the table survives.
  VIProblem base = scalar_projection_problem(0, 1, 2);
  PenaltyOperator G = PenaltyOperator::proj_residual(base.K);
  ConvergenceTable t =
      run_penalty_study(base, G, {1.0, 0.5, 0.25, 1e-13});
  CHECK(t.rows[3].ok == false);
  CHECK(!t.rows[3].error.empty());
  CHECK(t.rows[0].ok);
}
