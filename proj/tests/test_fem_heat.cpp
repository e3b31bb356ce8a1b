#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vilab/fem_heat.hpp"

using namespace vilab;

namespace {

HeatModel make_1d(int elements, double g, double b) {
  Mesh mesh = Mesh::interval(elements);
  const int n = mesh.num_nodes();
  return assemble_heat(mesh, Vector::Constant(n, g), Vector::Zero(n),
                       Vector::Constant(n, b));
}

}  // namespace

TEST_CASE("1-D constrained solve matches -u'' = g with u(0)=0, u(1)=b") {
  // g = 2, b = 0: u(x) = x(1 - x).
  HeatModel model = make_1d(64, 2.0, 0.0);
  SolveReport rep = solve_vi(model.problem);
  Vector full = model.expand(rep.u);
  for (int i = 0; i < model.mesh.num_nodes(); ++i) {
    const double x = model.mesh.nodes(i, 0);
    CHECK(full[i] == doctest::Approx(x * (1.0 - x)).epsilon(1e-3));
  }
}

TEST_CASE("1-D penalized boundary trace is lambda/(1+lambda) for g=2, b=0") {
  HeatModel model = make_1d(64, 2.0, 0.0);
  for (double lambda : {1.0, 0.5, 0.1, 0.01}) {
    SolveReport rep = solve_penalized(model.problem, model.penalty, lambda);
    const double trace = rep.u[model.gamma3_dofs[0]];
    CHECK(trace == doctest::Approx(lambda / (1.0 + lambda)).epsilon(2e-3));
  }
}

TEST_CASE("1-D penalty study decays monotonically to the constrained solve") {
  HeatModel model = make_1d(64, 2.0, 0.0);
  ConvergenceTable t =
      run_heat_penalty_study(model, geometric_lambda_ladder(16));
  double prev = 1e30;
  for (const auto& row : t.rows) {
    CHECK(row.ok);
    CHECK(row.err < prev + 1e-12);
    prev = row.err;
  }
  CHECK(t.rows.back().err <= 1e-3 * (1.0 + t.reference_u.norm()));
}

TEST_CASE("2-D stiffness is symmetric positive definite and scales right") {
  Mesh mesh = Mesh::rectangle_heat(8, 8);
  const int n = mesh.num_nodes();
  HeatModel model = assemble_heat(mesh, Vector::Constant(n, 1.0),
                                  Vector::Zero(n), Vector::Zero(n));
  const Matrix& K = model.stiffness;
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> es(K);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  // Discrete maximum principle flavor: positive source, nonnegative field.
  SolveReport rep = solve_vi(model.problem);
  CHECK(rep.u.minCoeff() >= -1e-10);
}

TEST_CASE("2-D constrained and penalized solves agree for small lambda") {
  Mesh mesh = Mesh::rectangle_heat(8, 8);
  const int n = mesh.num_nodes();
  HeatModel model = assemble_heat(mesh, Vector::Constant(n, 2.0),
                                  Vector::Zero(n), Vector::Constant(n, 0.5));
  Vector u_con = solve_vi(model.problem).u;
  Vector u_pen = solve_penalized(model.problem, model.penalty, 1e-8).u;
  CHECK((u_pen - u_con).norm() <= 1e-5 * (1.0 + u_con.norm()));
}

TEST_CASE("2-D refinement shrinks the penalized-constrained gap with lambda") {
  Mesh mesh = Mesh::rectangle_heat(6, 6);
  const int n = mesh.num_nodes();
  HeatModel model = assemble_heat(mesh, Vector::Constant(n, 1.0),
                                  Vector::Zero(n), Vector::Zero(n));
  Vector u_con = solve_vi(model.problem).u;
  double prev = 1e30;
  for (double lambda : {1.0, 0.1, 0.01, 1e-3}) {
    const double gap =
        (solve_penalized(model.problem, model.penalty, lambda).u - u_con)
            .norm();
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("assembly validates boundary partitions") {
  Mesh broken = Mesh::interval(4);
  for (auto& tag : broken.node_tag) tag = BoundaryTag::None;
  const int n = broken.num_nodes();
  CHECK_THROWS_AS(assemble_heat(broken, Vector::Zero(n), Vector::Zero(n),
                                Vector::Zero(n)),
                  ValidationError);
}
