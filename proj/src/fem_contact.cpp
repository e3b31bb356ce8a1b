#include "vilab/fem_contact.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace vilab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Vector ContactModel::assemble_load(const Eigen::Vector2d& f0,
                                   const Eigen::Vector2d& f2) const {
  const int nf = static_cast<int>(free_dofs.size());
  Vector load = Vector::Zero(nf);
  for (const auto& tri : mesh.triangles) {
    Eigen::Vector2d p0 = mesh.nodes.row(tri[0]), p1 = mesh.nodes.row(tri[1]),
                    p2 = mesh.nodes.row(tri[2]);
    const double area =
        0.5 * std::abs((p1 - p0).x() * (p2 - p0).y() -
                       (p2 - p0).x() * (p1 - p0).y());
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 2; ++c) {
        const int d = dof_of[2 * tri[a] + c];
        if (d >= 0) load[d] += area / 3.0 * f0[c];
      }
  }
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag != BoundaryTag::Gamma2) continue;
    const double len =
        (mesh.nodes.row(be.nodes[0]) - mesh.nodes.row(be.nodes[1])).norm();
    for (int v : be.nodes)
      for (int c = 0; c < 2; ++c) {
        const int d = dof_of[2 * v + c];
        if (d >= 0) load[d] += 0.5 * len * f2[c];
      }
  }
  return load;
}

VIProblem ContactModel::make_problem(double F, double k,
                                     const Eigen::Vector2d& f0,
                                     const Eigen::Vector2d& f2) const {
  const int nf = static_cast<int>(free_dofs.size());
  VIProblem p;
  p.A = MonotoneOperator::linear(stiffness);
  Vector lo = Vector::Constant(nf, -kInf), hi = Vector::Constant(nf, kInf);
  std::vector<ConvexFunctional::Term> terms;
  for (const auto& cn : contact_nodes) {
    lo[cn.y_dof] = -k;  // v_nu = -v_y <= k
    terms.push_back({cn.y_dof, F * cn.weight, -1.0});
  }
  p.K = ConvexSet::box(lo, hi);
  p.j = ConvexFunctional::weighted_positive_part(std::move(terms));
  p.f = assemble_load(f0, f2);
  return p;
}

FrictionCoupling ContactModel::make_coupling(double mu, double F) const {
  FrictionCoupling c;
  for (const auto& cn : contact_nodes)
    c.terms.push_back({cn.y_dof, -1.0, cn.x_dof, mu * F * cn.weight});
  c.d0 = d0;
  c.m_F = material.m_F();
  c.mu_max = mu;
  c.F_max = F;
  return c;
}

Matrix ContactModel::expand(const Vector& reduced) const {
  Matrix full = Matrix::Zero(mesh.num_nodes(), 2);
  for (int node = 0; node < mesh.num_nodes(); ++node)
    for (int c = 0; c < 2; ++c)
      if (dof_of[2 * node + c] >= 0)
        full(node, c) = reduced[dof_of[2 * node + c]];
  return full;
}

ContactModel assemble_contact(const ContactProblemData& data) {
  data.validate();
  ContactModel model;
  model.mesh = Mesh::rectangle(data.nx, data.ny, data.Lx, data.Ly);
  model.material = data.material;
  const Mesh& mesh = model.mesh;
  const int n = mesh.num_nodes();

  // Plane-strain elasticity matrix in Voigt form (exx, eyy, gamma_xy).
  const double la = data.material.lame_lambda, mu = data.material.lame_mu;
  Eigen::Matrix3d D;
  D << 2 * mu + la, la, 0, la, 2 * mu + la, 0, 0, 0, mu;

  Matrix S = Matrix::Zero(2 * n, 2 * n);
  for (const auto& tri : mesh.triangles) {
    Eigen::Vector2d p0 = mesh.nodes.row(tri[0]), p1 = mesh.nodes.row(tri[1]),
                    p2 = mesh.nodes.row(tri[2]);
    const double det =
        (p1 - p0).x() * (p2 - p0).y() - (p2 - p0).x() * (p1 - p0).y();
    const double area = 0.5 * std::abs(det);
    require(area > 0.0, "assemble_contact: degenerate triangle");
    Eigen::Matrix<double, 2, 3> grad;
    grad.col(0) << p1.y() - p2.y(), p2.x() - p1.x();
    grad.col(1) << p2.y() - p0.y(), p0.x() - p2.x();
    grad.col(2) << p0.y() - p1.y(), p1.x() - p0.x();
    grad /= det;
    Eigen::Matrix<double, 3, 6> B = Eigen::Matrix<double, 3, 6>::Zero();
    for (int a = 0; a < 3; ++a) {
      B(0, 2 * a) = grad(0, a);
      B(1, 2 * a + 1) = grad(1, a);
      B(2, 2 * a) = grad(1, a);
      B(2, 2 * a + 1) = grad(0, a);
    }
    Eigen::Matrix<double, 6, 6> Ke = area * B.transpose() * D * B;
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c)
        for (int ia = 0; ia < 2; ++ia)
          for (int ic = 0; ic < 2; ++ic)
            S(2 * tri[a] + ia, 2 * tri[c] + ic) += Ke(2 * a + ia, 2 * c + ic);
  }

  model.dof_of.assign(2 * n, -1);
  for (int node = 0; node < n; ++node) {
    if (mesh.node_tag[node] == BoundaryTag::Gamma1) continue;  // clamped
    for (int c = 0; c < 2; ++c) {
      model.dof_of[2 * node + c] = static_cast<int>(model.free_dofs.size());
      model.free_dofs.push_back(2 * node + c);
    }
  }
  const int nf = static_cast<int>(model.free_dofs.size());
  model.stiffness.resize(nf, nf);
  for (int a = 0; a < nf; ++a)
    for (int c = 0; c < nf; ++c)
      model.stiffness(a, c) = S(model.free_dofs[a], model.free_dofs[c]);
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(model.stiffness,
                                             Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() > 0.0,
            "assemble_contact: reduced stiffness not SPD (Gamma1 clamping "
            "insufficient)");
  }

  // Contact nodes on Gamma3 with lumped edge measure.
  std::vector<double> gamma3_weight(n, 0.0);
  Matrix Mb = Matrix::Zero(nf, nf);  // lumped boundary trace mass, free part
  for (const auto& be : mesh.boundary_edges) {
    const double len =
        (mesh.nodes.row(be.nodes[0]) - mesh.nodes.row(be.nodes[1])).norm();
    for (int v : be.nodes) {
      if (be.tag == BoundaryTag::Gamma3) gamma3_weight[v] += 0.5 * len;
      for (int c = 0; c < 2; ++c) {
        const int d = model.dof_of[2 * v + c];
        if (d >= 0) Mb(d, d) += 0.5 * len;
      }
    }
  }
  for (int node : mesh.nodes_with_tag(BoundaryTag::Gamma3)) {
    ContactModel::ContactNode cn;
    cn.node = node;
    cn.x_dof = model.dof_of[2 * node];
    cn.y_dof = model.dof_of[2 * node + 1];
    cn.weight = gamma3_weight[node];
    if (cn.x_dof >= 0 && cn.y_dof >= 0) model.contact_nodes.push_back(cn);
  }
  require(!model.contact_nodes.empty(), "assemble_contact: no contact nodes");

  // Discrete trace constant: largest generalized eigenvalue of the boundary
  // mass against the stiffness, so the smallness condition is checkable on
  // the assembled operator.
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(Mb, model.stiffness,
                                                       Eigen::EigenvaluesOnly);
  model.d0 = std::sqrt(std::max(0.0, ges.eigenvalues().maxCoeff()));
  return model;
}

SolveReport solve_contact_frictionless(const ContactModel& model,
                                       const ContactProblemData& data,
                                       SolveConfig cfg) {
  VIProblem p = model.make_problem(data.F, data.k, data.f0, data.f2);
  cfg.accelerate = true;
  return solve_vi(p, std::move(cfg));
}

QviReport solve_contact_frictional(const ContactModel& model,
                                   const ContactProblemData& data,
                                   SolveConfig cfg, double outer_tol) {
  data.validate();
  VIProblem p = model.make_problem(data.F_n, data.k_n, data.f0_n, data.f2_n);
  FrictionCoupling coupling = model.make_coupling(data.mu_n, data.F_n);
  cfg.accelerate = true;
  return solve_qvi_friction(p, coupling, std::move(cfg), outer_tol);
}

ConvergenceTable run_contact_perturbation_study(const ContactModel& model,
                                    const ContactProblemData& data,
                                    double mu0, int rows, SolveConfig cfg) {
  require(rows >= 4, "contact perturbation study: too few rows");
  ConvergenceTable table;
  table.kind = "contact";
  VIProblem base = model.make_problem(data.F, data.k, data.f0, data.f2);
  SolveConfig ref_cfg = cfg;
  ref_cfg.accelerate = true;
  table.reference_u = solve_vi(base, ref_cfg).u;

  for (int nidx = 1; nidx <= rows; ++nidx) {
    const double h = 1.0 / nidx;
    ContactProblemData pert = data;
    pert.k_n = data.k * (1.0 + h);
    pert.mu_n = mu0 * h;
    pert.F_n = data.F * (1.0 + h);
    pert.f0_n = data.f0 * (1.0 + h);
    pert.f2_n = data.f2 * (1.0 + h);
    StudyRow row;
    row.param = h;
    try {
      QviReport rep = solve_contact_frictional(model, pert, cfg);
      const Vector& u_n = rep.inner.u;
      row.err = (u_n - table.reference_u).norm();
      row.dist = base.K.distance(u_n);
      row.iterations = rep.inner.iterations;
      CriterionOptions copts;
      copts.reference_u = table.reference_u;
      row.eps_hat =
          epsilon_residual(base, u_n, ResidualMode::OnePlusNorm, copts);
      // Distance bound for the perturbed gap: d(u_n, K) <= |1 - k/k_n| ||u_n||.
      row.extra = std::abs(1.0 - data.k / pert.k_n) * u_n.norm();
      row.ok = row.dist <= row.extra + 1e-12;
      table.iterate_sequence.push_back(u_n);
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace vilab
