#pragma once

#include "vilab/mesh.hpp"
#include "vilab/studies.hpp"

namespace vilab {

// Linear isotropic elasticity with certified operator constants
// m_F = 2 mu, M_F = 2 mu + dim * lambda.
struct ElasticMaterial {
  double lame_lambda = 1.0;
  double lame_mu = 1.0;

  double m_F() const { return 2.0 * lame_mu; }
  double M_F(int dim = 2) const { return 2.0 * lame_mu + dim * lame_lambda; }
  void validate() const {
    require(lame_lambda >= 0.0 && lame_mu > 0.0,
            "material: need lambda >= 0, mu > 0");
  }
};

// Rectangle geometry, fixed orientation: Gamma1 = left edge (clamped),
// Gamma2 = top + right (traction), Gamma3 = bottom (contact, outward normal
// nu = (0,-1), so v_nu = -v_y and the layer bound v_nu <= k reads
// v_y >= -k on the contact nodes).
struct ContactProblemData {
  int nx = 4, ny = 2;
  double Lx = 2.0, Ly = 1.0;
  ElasticMaterial material;
  double F = 1.0;   // yield limit of the rigid-plastic layer, uniform
  double k = 0.05;  // layer thickness
  Eigen::Vector2d f0{0.0, -1.0};  // body force density
  Eigen::Vector2d f2{0.0, -1.0};  // traction on Gamma2

  // Perturbed data of the frictional problem.
  double mu_n = 0.0;
  double F_n = 1.0;
  double k_n = 0.05;
  Eigen::Vector2d f0_n{0.0, -1.0};
  Eigen::Vector2d f2_n{0.0, -1.0};

  void validate() const {
    material.validate();
    require(F >= 0.0 && F_n >= 0.0, "contact: yield limits must be >= 0");
    require(k > 0.0, "contact: layer thickness must be positive");
    require(mu_n >= 0.0, "contact: friction coefficient must be >= 0");
    require(k_n >= k, "contact: k_n >= k required");
  }
};

struct ContactModel {
  Mesh mesh;
  ElasticMaterial material;
  std::vector<int> dof_of;     // 2*node + comp -> reduced dof, -1 if clamped
  std::vector<int> free_dofs;  // reduced dof -> full dof index
  Matrix stiffness;            // reduced, SPD
  double d0 = 0.0;             // discrete trace constant

  struct ContactNode {
    int node = 0;
    int x_dof = 0;   // reduced index of the tangential component
    int y_dof = 0;   // reduced index of the normal component
    double weight = 0.0;  // lumped Gamma3 edge measure share
  };
  std::vector<ContactNode> contact_nodes;

  Vector assemble_load(const Eigen::Vector2d& f0,
                       const Eigen::Vector2d& f2) const;
  VIProblem make_problem(double F, double k, const Eigen::Vector2d& f0,
                         const Eigen::Vector2d& f2) const;
  FrictionCoupling make_coupling(double mu, double F) const;

  // Full nodal displacement (num_nodes x 2) from a reduced solution.
  Matrix expand(const Vector& reduced) const;
  double energy(const VIProblem& p, const Vector& u) const {
    return 0.5 * u.dot(p.A.apply(u)) + p.j.value(u) - p.f.dot(u);
  }
};

ContactModel assemble_contact(const ContactProblemData& data);

SolveReport solve_contact_frictionless(const ContactModel& model,
                                       const ContactProblemData& data,
                                       SolveConfig cfg = {});

QviReport solve_contact_frictional(const ContactModel& model,
                                   const ContactProblemData& data,
                                   SolveConfig cfg = {},
                                   double outer_tol = 1e-9);

// Harmonic perturbation ladders k_n = k(1+1/n), mu_n = mu0/n,
// F_n = F(1+1/n), loads scaled by (1+1/n); rows report ||u_n - u||, the
// distance bound |1 - k/k_n| ||u_n|| (in extra), and the measured distance.
ConvergenceTable run_contact_perturbation_study(const ContactModel& model,
                                    const ContactProblemData& data,
                                    double mu0, int rows,
                                    SolveConfig cfg = {});

}  // namespace vilab
