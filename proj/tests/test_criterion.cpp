#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vilab/criterion.hpp"

using namespace vilab;

namespace {

constexpr int kN = 1024;

CandidateSequence scalar_seq(double base, double sign, int count = kN) {
  CandidateSequence seq;
  for (int n = 1; n <= count; ++n)
    seq.push_back(Vector::Constant(1, base + sign / n));
  return seq;
}

}  // namespace

TEST_CASE("decay test accepts vanishing sequences and rejects stalls") {
  std::vector<double> harmonic, geometric, stalled, tiny;
  for (int n = 1; n <= kN; ++n) {
    harmonic.push_back(1.0 / n);
    geometric.push_back(std::pow(0.9, n));
    stalled.push_back(0.3 + 1.0 / n);
    tiny.push_back(1e-12);
  }
  CHECK(decay_test(harmonic));
  CHECK(decay_test(geometric));
  CHECK(!decay_test(stalled));
  CHECK(decay_test(tiny));
  // Short harmonic prefixes end too high to certify.
  CHECK(!decay_test(std::vector<double>(harmonic.begin(), harmonic.begin() + 16)));
}

TEST_CASE("interval residual is exact: feasible stall at the derived supremum") {
  // f = 1/2, u_n = 0 on K = [0,1]: sup over v of 0.5 v / (1 + v) = 0.25.
  VIProblem p = scalar_projection_problem(0, 1, 0.5);
  const Vector zero = Vector::Zero(1);
  CHECK(epsilon_residual(p, zero, ResidualMode::OnePlusNorm) ==
        doctest::Approx(0.25).epsilon(1e-6));
  // Norm denominator: 0.5 v / v = 0.5.
  CHECK(epsilon_residual(p, zero, ResidualMode::Norm) ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("infeasible copy of the data has zero residual but unit distance") {
  VIProblem p = scalar_projection_problem(0, 1, 2);
  const Vector two = Vector::Constant(1, 2.0);
  CHECK(epsilon_residual(p, two, ResidualMode::OnePlusNorm) <= 1e-12);
  CHECK(p.K.distance(two) == doctest::Approx(1.0));
  CriterionReport rep = check_criterion(p, CandidateSequence(kN, two));
  CHECK(!rep.t_approximating);
  CHECK(!rep.converging_trend);
}

TEST_CASE("denominator mode separation on the interior harmonic sequence") {
  // u_n = 1 - 1/n, u = 1, f = 2: only v = 1 matters and the slack is
  // (1/n)(1 - u_n + ...); NORM mode divides by 1/n and stays >= 1,
  // ONE_PLUS mode keeps the residual at 1/n.
  VIProblem p = scalar_projection_problem(0, 1, 2);
  for (int n : {2, 10, 100}) {
    Vector u_n = Vector::Constant(1, 1.0 - 1.0 / n);
    CHECK(epsilon_residual(p, u_n, ResidualMode::Norm) >= 1.0 - 1e-9);
    CHECK(epsilon_residual(p, u_n, ResidualMode::OnePlusNorm) <=
          2.0 / n + 1e-9);
  }
  CriterionReport rep = classify_sequence(p, scalar_seq(1.0, -1.0));
  CHECK(rep.t_approximating);
  CHECK(rep.converging_trend);
  CHECK(!rep.tykhonov_approximating);
}

TEST_CASE("exterior harmonic sequence is lp- but not tykhonov-approximating") {
  // f = 1 = u on K = [0,1]; u_n = 1 + 1/n is infeasible with witness -1/n.
  VIProblem p = scalar_projection_problem(0, 1, 1.0);
  CriterionReport rep = classify_sequence(p, scalar_seq(1.0, 1.0));
  CHECK(rep.lp_approximating);
  CHECK(!rep.tykhonov_approximating);
  CHECK(rep.converging_trend);
  for (int i : {0, 99, kN - 1})
    CHECK(rep.rows[i].lp_witness_norm ==
          doctest::Approx(1.0 / (i + 1)).epsilon(1e-9));
}

TEST_CASE("implication chain: tykhonov implies lp implies convergence") {
  // Feasible harmonic approach of the interior solution u = 1/2.
  VIProblem p = scalar_projection_problem(0, 1, 0.5);
  CandidateSequence seq;
  for (int n = 1; n <= kN; ++n)
    seq.push_back(Vector::Constant(1, 0.5 - 0.25 / n));
  CriterionReport rep = classify_sequence(p, seq);
  CHECK(rep.tykhonov_approximating);
  CHECK(rep.lp_approximating);
  CHECK(rep.t_approximating);
  CHECK(rep.converging_trend);
}

TEST_CASE("solver iterates pass the criterion on random problems") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    VIProblem p;
    p.A = MonotoneOperator::linear(oracles::random_spd(n, rng));
    p.K = ConvexSet::box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0));
    p.j = ConvexFunctional::weighted_positive_part({{0, 0.3, 1.0}});
    p.f = Vector::Random(n) * 2.0;
    SolveConfig cfg;
    cfg.record_iterates = true;
    cfg.allow_direct = false;
    cfg.tol = 1e-12;
    SolveReport rep = solve_vi(p, cfg);
    CriterionReport crep = check_criterion(p, rep.iterates);
    CHECK(crep.t_approximating);
    CHECK(crep.converging_trend);
    CHECK(crep.bounded_ok);
  }
}

TEST_CASE("breaking exactly one condition declassifies the sequence") {
  VIProblem p = scalar_projection_problem(0, 1, 2);
  // (a) holds, (b) fails: feasible but stuck away from the solution.
  CriterionReport stuck =
      check_criterion(p, CandidateSequence(kN, Vector::Constant(1, 0.25)));
  CHECK(!stuck.t_approximating);
  CHECK(!stuck.converging_trend);
  // (b) holds, (a) fails: exact translate of the unconstrained solution.
  CriterionReport off =
      check_criterion(p, CandidateSequence(kN, Vector::Constant(1, 2.0)));
  CHECK(!off.t_approximating);
  CHECK(!off.converging_trend);
}

TEST_CASE("unbounded sequences are rejected via the a-priori bound") {
  VIProblem p = scalar_projection_problem(0, 1, 2);
  CandidateSequence seq;
  for (int n = 1; n <= 64; ++n)
    seq.push_back(Vector::Constant(1, static_cast<double>(n * n)));
  CriterionReport rep = classify_sequence(p, seq);
  CHECK(!rep.bounded_ok);
  CHECK(!rep.t_approximating);
  CHECK(!rep.tykhonov_approximating);
  CHECK(!rep.lp_approximating);
}

TEST_CASE("residual estimator is a lower bound everywhere it probes") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    VIProblem p;
    p.A = MonotoneOperator::linear(oracles::random_spd(n, rng));
    p.K = ConvexSet::box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0));
    p.f = Vector::Random(n);
    Vector u_n = Vector::Random(n);
    const double eps =
        epsilon_residual(p, u_n, ResidualMode::OnePlusNorm);
    // The estimated eps must make the perturbed inequality hold on random
    // feasible probes with that eps (it upper-bounds the sampled ratios).
    for (int t = 0; t < 200; ++t) {
      Vector v = p.K.project(Vector::Random(n) * 2.0);
      const double slack = p.vi_slack(u_n, v);
      const double denom = 1.0 + (v - u_n).norm();
      CHECK(slack <= eps * denom + 1e-6);
    }
  }
}
