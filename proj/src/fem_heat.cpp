#include "vilab/fem_heat.hpp"

#include <cmath>

namespace vilab {

Vector HeatModel::expand(const Vector& reduced) const {
  Vector full = Vector::Zero(mesh.num_nodes());
  for (int node = 0; node < mesh.num_nodes(); ++node)
    if (dof_of[node] >= 0) full[node] = reduced[dof_of[node]];
  return full;
}

HeatModel assemble_heat(const Mesh& mesh, const Vector& g, const Vector& q,
                        const Vector& b) {
  mesh.validate();
  const int n = mesh.num_nodes();
  require(g.size() == n && q.size() == n && b.size() == n,
          "assemble_heat: nodal data must cover every node");

  Matrix S = Matrix::Zero(n, n);
  Vector load = Vector::Zero(n);

  if (mesh.dim == 1) {
    for (const auto& seg : mesh.segments) {
      const double h = mesh.nodes(seg[1], 0) - mesh.nodes(seg[0], 0);
      const double k = 1.0 / h;
      S(seg[0], seg[0]) += k;
      S(seg[1], seg[1]) += k;
      S(seg[0], seg[1]) -= k;
      S(seg[1], seg[0]) -= k;
      // Lumped source: exact for P1 data up to the usual mass-lumping error.
      load[seg[0]] += 0.5 * h * g[seg[0]];
      load[seg[1]] += 0.5 * h * g[seg[1]];
    }
  } else {
    for (const auto& tri : mesh.triangles) {
      Eigen::Vector2d p0 = mesh.nodes.row(tri[0]), p1 = mesh.nodes.row(tri[1]),
                      p2 = mesh.nodes.row(tri[2]);
      const double det =
          (p1 - p0).x() * (p2 - p0).y() - (p2 - p0).x() * (p1 - p0).y();
      const double area = 0.5 * std::abs(det);
      require(area > 0.0, "assemble_heat: degenerate triangle");
      // Gradients of the barycentric shape functions.
      Eigen::Matrix<double, 2, 3> grad;
      grad.col(0) << p1.y() - p2.y(), p2.x() - p1.x();
      grad.col(1) << p2.y() - p0.y(), p0.x() - p2.x();
      grad.col(2) << p0.y() - p1.y(), p1.x() - p0.x();
      grad /= det;
      for (int a = 0; a < 3; ++a) {
        for (int c = 0; c < 3; ++c)
          S(tri[a], tri[c]) += area * grad.col(a).dot(grad.col(c));
        load[tri[a]] += area / 3.0 * g[tri[a]];
      }
    }
    for (const auto& be : mesh.boundary_edges) {
      if (be.tag != BoundaryTag::Gamma2) continue;
      const double len =
          (mesh.nodes.row(be.nodes[0]) - mesh.nodes.row(be.nodes[1])).norm();
      load[be.nodes[0]] -= 0.5 * len * q[be.nodes[0]];
      load[be.nodes[1]] -= 0.5 * len * q[be.nodes[1]];
    }
  }

  HeatModel model;
  model.mesh = mesh;
  model.dof_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (mesh.node_tag[i] == BoundaryTag::Gamma1) continue;
    model.dof_of[i] = static_cast<int>(model.free_dofs.size());
    model.free_dofs.push_back(i);
  }
  const int nf = static_cast<int>(model.free_dofs.size());
  model.stiffness.resize(nf, nf);
  model.load.resize(nf);
  for (int a = 0; a < nf; ++a) {
    model.load[a] = load[model.free_dofs[a]];
    for (int c = 0; c < nf; ++c)
      model.stiffness(a, c) = S(model.free_dofs[a], model.free_dofs[c]);
  }

  // Gamma3 dofs, targets, and lumped boundary mass for the penalty operator.
  std::vector<double> weights_acc(nf, 0.0);
  if (mesh.dim == 1) {
    for (int node : mesh.nodes_with_tag(BoundaryTag::Gamma3))
      if (model.dof_of[node] >= 0) weights_acc[model.dof_of[node]] = 1.0;
  } else {
    for (const auto& be : mesh.boundary_edges) {
      if (be.tag != BoundaryTag::Gamma3) continue;
      const double len =
          (mesh.nodes.row(be.nodes[0]) - mesh.nodes.row(be.nodes[1])).norm();
      for (int v : be.nodes)
        if (mesh.node_tag[v] == BoundaryTag::Gamma3 && model.dof_of[v] >= 0)
          weights_acc[model.dof_of[v]] += 0.5 * len;
    }
  }
  for (int node : mesh.nodes_with_tag(BoundaryTag::Gamma3)) {
    const int d = model.dof_of[node];
    if (d < 0) continue;
    model.gamma3_dofs.push_back(d);
    model.gamma3_values.conservativeResize(model.gamma3_dofs.size());
    model.gamma3_values[model.gamma3_dofs.size() - 1] = b[node];
    model.gamma3_weights.conservativeResize(model.gamma3_dofs.size());
    model.gamma3_weights[model.gamma3_dofs.size() - 1] =
        weights_acc[d] > 0.0 ? weights_acc[d] : 1.0;
  }
  require(!model.gamma3_dofs.empty(), "assemble_heat: no Gamma3 dofs");

  model.problem.A = MonotoneOperator::linear(model.stiffness);
  require(model.problem.A.m() > 0.0,
          "assemble_heat: reduced stiffness not SPD");
  model.problem.j = ConvexFunctional::zero();
  model.problem.K =
      ConvexSet::affine_slice(nf, model.gamma3_dofs, model.gamma3_values);
  model.problem.f = model.load;
  model.penalty = PenaltyOperator::boundary_mass(
      nf, model.gamma3_dofs, model.gamma3_values, model.gamma3_weights);
  return model;
}

ConvergenceTable run_heat_penalty_study(const HeatModel& model,
                                        const std::vector<double>& lambdas,
                                        SolveConfig cfg) {
  return run_penalty_study(model.problem, model.penalty, lambdas, cfg);
}

}  // namespace vilab
