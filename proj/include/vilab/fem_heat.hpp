#pragma once

#include "vilab/mesh.hpp"
#include "vilab/studies.hpp"

namespace vilab {

// P1 discretization of the stationary heat problem: Dirichlet value b on
// Gamma3 (affine-slice constraint) or penalized boundary flux
// -du/dnu = (1/lambda)(u - b) on Gamma3. Gamma1 dofs are eliminated at
// assembly; the exported problem lives on the free dofs in the euclidean
// coefficient structure.
struct HeatModel {
  Mesh mesh;
  std::vector<int> free_dofs;       // node -> position via dof_of
  std::vector<int> dof_of;          // -1 for eliminated Gamma1 nodes
  Matrix stiffness;                 // reduced, SPD
  Vector load;                      // reduced
  std::vector<int> gamma3_dofs;     // reduced indices of Gamma3 nodes
  Vector gamma3_values;             // b at those nodes
  Vector gamma3_weights;            // lumped boundary mass on Gamma3

  VIProblem problem;                // A = stiffness, K = affine slice, j = 0
  PenaltyOperator penalty = PenaltyOperator::boundary_mass(1, {}, {}, {});

  // Full nodal field from a reduced solution (Gamma1 nodes at 0).
  Vector expand(const Vector& reduced) const;
  double energy(const Vector& reduced) const {
    return 0.5 * reduced.dot(stiffness * reduced) - load.dot(reduced);
  }
};

// g: nodal source values (all nodes); q: nodal flux values on Gamma2 nodes
// (indexed by node, ignored elsewhere); b: nodal target values on Gamma3
// nodes (indexed by node).
HeatModel assemble_heat(const Mesh& mesh, const Vector& g, const Vector& q,
                        const Vector& b);

// Penalty regime lambda_n -> 0 against the constrained reference solve.
ConvergenceTable run_heat_penalty_study(const HeatModel& model,
                                        const std::vector<double>& lambdas,
                                        SolveConfig cfg = {});

}  // namespace vilab
