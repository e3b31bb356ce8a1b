#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vilab/fem_contact.hpp"

using namespace vilab;

namespace {

ContactProblemData default_data() { return ContactProblemData{}; }

}  // namespace

TEST_CASE("assembled elasticity stiffness is SPD with a positive trace constant") {
  ContactModel model = assemble_contact(default_data());
  const Matrix& K = model.stiffness;
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> es(K);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK(model.d0 > 0.0);
  CHECK(!model.contact_nodes.empty());
}

TEST_CASE("downward load presses the contact boundary onto the layer bound") {
  ContactProblemData data = default_data();
  data.f0 = {0.0, -5.0};
  data.f2 = {0.0, -5.0};
  ContactModel model = assemble_contact(data);
  SolveReport rep = solve_contact_frictionless(model, data);
  CHECK(rep.converged);
  bool some_at_bound = false;
  for (const auto& cn : model.contact_nodes) {
    // Constraint u_y >= -k everywhere on the contact boundary.
    CHECK(rep.u[cn.y_dof] >= -data.k - 1e-9);
    some_at_bound |= rep.u[cn.y_dof] <= -data.k + 1e-6;
  }
  CHECK(some_at_bound);
}

TEST_CASE("solution satisfies the inequality against feasible probes") {
  ContactProblemData data = default_data();
  ContactModel model = assemble_contact(data);
  VIProblem p = model.make_problem(data.F, data.k, data.f0, data.f2);
  SolveReport rep = solve_contact_frictionless(model, data);
  std::mt19937_64 rng(77);
  for (int t = 0; t < 300; ++t) {
    Vector v = p.K.project(p.K.sample(rng));
    CHECK(p.vi_slack(rep.u, v) <= 1e-7);
  }
}

TEST_CASE("frictional solve with mu = 0 equals the frictionless one") {
  ContactProblemData data = default_data();
  data.mu_n = 0.0;
  ContactModel model = assemble_contact(data);
  SolveConfig cfg;
  cfg.tol = 1e-11;
  Vector u0 = solve_contact_frictionless(model, data, cfg).u;
  QviReport q = solve_contact_frictional(model, data, cfg);
  CHECK((q.inner.u - u0).norm() <= 10.0 * cfg.tol);
  CHECK(q.outer_iterations == 0);
}

TEST_CASE("friction shrinks tangential sliding") {
  ContactProblemData data = default_data();
  data.f2 = {0.4, -2.0};  // shear component induces sliding
  ContactModel model = assemble_contact(data);
  Vector u0 = solve_contact_frictionless(model, data).u;
  data.mu_n = 0.04;
  QviReport q = solve_contact_frictional(model, data);
  double slide0 = 0.0, slide1 = 0.0;
  for (const auto& cn : model.contact_nodes) {
    slide0 += std::abs(u0[cn.x_dof]);
    slide1 += std::abs(q.inner.u[cn.x_dof]);
  }
  CHECK(slide1 <= slide0 + 1e-12);
  CHECK(q.outer_ratio < 1.0);
}

TEST_CASE("smallness violation is rejected before iterating") {
  ContactProblemData data = default_data();
  data.mu_n = 1e6;
  ContactModel model = assemble_contact(data);
  CHECK_THROWS_AS(solve_contact_frictional(model, data), SmallnessViolated);
}

TEST_CASE("perturbation ladder converges and satisfies the distance bound") {
  ContactProblemData data = default_data();
  ContactModel model = assemble_contact(data);
  ConvergenceTable t = run_contact_perturbation_study(model, data, 0.02, 1024);
  REQUIRE(t.rows.size() == 1024);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].ok);
    // d(u_n, K) <= |1 - k/k_n| ||u_n|| with tight slack.
    CHECK(t.rows[i].dist <= t.rows[i].extra + 1e-12);
    if (i >= 2) CHECK(t.rows[i].err < t.rows[i - 1].err);
  }
  CHECK(t.rows.back().err <= 1e-3 * (1.0 + t.reference_u.norm()));
}

TEST_CASE("data validation rejects inverted layer ladders") {
  ContactProblemData data = default_data();
  data.k_n = data.k / 2.0;  // k_n < k breaks K_n superset structure
  CHECK_THROWS_AS(data.validate(), ValidationError);
}
