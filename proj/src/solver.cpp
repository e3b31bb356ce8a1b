#include "vilab/solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>

namespace vilab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool direct_path_applies(const VIProblem& p) {
  if (!p.A.is_linear_kind() && p.A.kind() != MonotoneOperator::Kind::Penalized)
    return false;
  if (!p.j.is_zero()) return false;
  if (p.ip.kind() != InnerProduct::Kind::Euclidean) return false;
  if (p.A.kind() == MonotoneOperator::Kind::Penalized) {
    // Penalized operator is linear iff base is linear and G is boundary_mass.
    if (!p.A.base()->is_linear_kind()) return false;
    if (p.A.penalty()->kind() != PenaltyOperator::Kind::BoundaryMass)
      return false;
  }
  return p.K.kind() == ConvexSet::Kind::WholeSpace ||
         p.K.kind() == ConvexSet::Kind::AffineSlice;
}

// Dense matrix + shift of the (possibly penalized) linear operator.
void materialize(const MonotoneOperator& A, Matrix& mat, Vector& shift) {
  if (A.kind() == MonotoneOperator::Kind::Penalized) {
    materialize(*A.base(), mat, shift);
    const PenaltyOperator& G = *A.penalty();
    const double inv_l = 1.0 / A.penalty_lambda();
    for (size_t t = 0; t < G.indices().size(); ++t) {
      const int i = G.indices()[t];
      mat(i, i) += inv_l * G.weights()[t];
      shift[i] -= inv_l * G.weights()[t] * G.targets()[t];
    }
    return;
  }
  mat = A.matrix();
  shift = A.kind() == MonotoneOperator::Kind::Affine
              ? A.shift()
              : Vector::Zero(A.dim()).eval();
}

// Linear problems with j = 0 and an equality (or no) constraint reduce to a
// linear system; the fixed-point iteration count scales with the squared
// condition number and overruns max_iter already at desk-scale FEM meshes.
SolveReport solve_direct(const VIProblem& p) {
  Matrix mat;
  Vector shift;
  materialize(p.A, mat, shift);
  const Vector rhs = p.f - shift;
  SolveReport rep;
  rep.contraction_estimate = kNaN;
  if (p.K.kind() == ConvexSet::Kind::WholeSpace) {
    rep.u = mat.partialPivLu().solve(rhs);
  } else {
    const int n = p.dim();
    std::vector<bool> fixed(n, false);
    for (int i : p.K.fixed_indices()) fixed[i] = true;
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (!fixed[i]) free.push_back(i);
    Vector u(n);
    for (size_t t = 0; t < p.K.fixed_indices().size(); ++t)
      u[p.K.fixed_indices()[t]] = p.K.fixed_values()[t];
    if (!free.empty()) {
      const int nf = static_cast<int>(free.size());
      Matrix Aff(nf, nf);
      Vector b(nf);
      for (int a = 0; a < nf; ++a) {
        for (int c = 0; c < nf; ++c) Aff(a, c) = mat(free[a], free[c]);
        double s = rhs[free[a]];
        for (size_t t = 0; t < p.K.fixed_indices().size(); ++t)
          s -= mat(free[a], p.K.fixed_indices()[t]) * p.K.fixed_values()[t];
        b[a] = s;
      }
      Vector uf = Aff.partialPivLu().solve(b);
      for (int a = 0; a < nf; ++a) u[free[a]] = uf[a];
    }
    rep.u = u;
  }
  rep.converged = true;
  rep.iterations = 0;
  rep.final_step = 0.0;
  return rep;
}

SolveReport iterate_plain(const VIProblem& p, const SolveConfig& cfg,
                          double rho) {
  const int n = p.dim();
  // With contraction factor q the distance to the fixed point is bounded by
  // step * q / (1 - q); shrink the step threshold so tol bounds the error.
  const double m = p.A.m(), M = p.A.M();
  const double q =
      std::sqrt(std::max(0.0, 1.0 - 2.0 * rho * m + rho * rho * M * M));
  const double step_tol =
      q < 1.0 ? cfg.tol * std::min(1.0, (1.0 - q) / std::max(q, 1e-300))
              : cfg.tol;
  Vector u = cfg.x0 ? *cfg.x0 : p.K.project(Vector::Zero(n));
  SolveReport rep;
  if (cfg.record_iterates) rep.iterates.push_back(u);
  double prev_step = -1.0, worst_ratio = 0.0;
  const int burn_in = 5;
  for (long k = 0; k < cfg.max_iter; ++k) {
    Vector next =
        combined_prox(p.K, p.j, rho, u - rho * (p.A.apply(u) - p.f));
    const double step = (next - u).norm();
    if (k >= burn_in && prev_step > 0.0)
      worst_ratio = std::max(worst_ratio, step / prev_step);
    prev_step = step;
    u = std::move(next);
    if (cfg.record_iterates) rep.iterates.push_back(u);
    if (step <= step_tol) {
      rep.u = std::move(u);
      rep.iterations = k + 1;
      rep.final_step = step;
      rep.contraction_estimate = worst_ratio;
      rep.converged = true;
      return rep;
    }
  }
  rep.u = std::move(u);
  rep.iterations = cfg.max_iter;
  rep.final_step = prev_step;
  rep.contraction_estimate = worst_ratio;
  rep.converged = false;
  throw MaxIterExceeded(std::move(rep));
}

// Restarted Nesterov iteration with step 1/M; valid for symmetric operators
// (gradient of the energy). Used by the FEM paths where cond(A) is large.
SolveReport iterate_accelerated(const VIProblem& p, const SolveConfig& cfg) {
  const int n = p.dim();
  const double step = 1.0 / p.A.M();
  Vector u = cfg.x0 ? *cfg.x0 : p.K.project(Vector::Zero(n));
  Vector y = u;
  double t = 1.0;
  SolveReport rep;
  rep.contraction_estimate = kNaN;
  for (long k = 0; k < cfg.max_iter; ++k) {
    Vector next =
        combined_prox(p.K, p.j, step, y - step * (p.A.apply(y) - p.f));
    const double diff = (next - u).norm();
    // Gradient restart: drop momentum when the extrapolation overshoots.
    if ((y - next).dot(next - u) > 0.0) {
      t = 1.0;
      y = next;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = next + ((t - 1.0) / t_next) * (next - u);
      t = t_next;
    }
    u = std::move(next);
    if (diff <= cfg.tol) {
      rep.u = std::move(u);
      rep.iterations = k + 1;
      rep.final_step = diff;
      rep.converged = true;
      return rep;
    }
    rep.final_step = diff;
  }
  rep.u = std::move(u);
  rep.iterations = cfg.max_iter;
  rep.converged = false;
  throw MaxIterExceeded(std::move(rep));
}

}  // namespace

SolveReport solve_vi(const VIProblem& problem, SolveConfig config) {
  problem.validate();
  require(config.tol > 0.0, "solve_vi: tol must be positive");
  const double m = problem.A.m(), M = problem.A.M();
  const double window = 2.0 * m / (M * M);
  double rho = config.rho > 0.0 ? config.rho : m / (M * M);
  if (rho <= 0.0 || rho >= window)
    throw NonContraction("solve_vi: rho outside contraction window (0, 2m/M^2)");

  if (config.allow_direct && !config.record_iterates &&
      direct_path_applies(problem))
    return solve_direct(problem);
  if (config.accelerate && problem.A.symmetric())
    return iterate_accelerated(problem, config);
  // The plain iteration contracts like 1 - (m/M)^2 per step; when the
  // implied count dwarfs max_iter (stiff penalized operators), fall back to
  // the accelerated path rather than failing.
  if (config.rho <= 0.0 && problem.A.symmetric() &&
      50.0 * (M / m) * (M / m) > static_cast<double>(config.max_iter))
    return iterate_accelerated(problem, config);
  return iterate_plain(problem, config, rho);
}

SolveReport solve_penalized(const VIProblem& problem, const PenaltyOperator& G,
                            double lambda, SolveConfig config) {
  require(lambda > 1e-12, "solve_penalized: lambda below 1e-12 rejected");
  require(G.dim() == problem.dim(), "solve_penalized: dimension mismatch");
  // Kernel invariant: G vanishes exactly on K. Probed on the projections of
  // a few deterministic points.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  for (int t = 0; t < 8; ++t) {
    Vector inside = problem.K.project(problem.K.sample(rng), problem.ip);
    if (G.apply(inside).norm() > 1e-8 * (1.0 + inside.norm()))
      throw KernelMismatch("solve_penalized: G does not vanish on K");
    Vector outside = problem.K.sample(rng);
    outside.array() += 1.0;  // push off the set when K is bounded
    if (!problem.K.contains(outside) && G.apply(outside).norm() == 0.0)
      throw KernelMismatch("solve_penalized: G vanishes outside K");
  }
  VIProblem pen;
  pen.A = MonotoneOperator::penalized(problem.A, G, lambda);
  pen.j = problem.j;
  pen.K = ConvexSet::whole_space(problem.dim());
  pen.f = problem.f;
  pen.ip = problem.ip;
  return solve_vi(pen, std::move(config));
}

ConvexFunctional FrictionCoupling::frozen_term(const Vector& eta) const {
  std::vector<ConvexFunctional::Term> abs_terms;
  for (const Term& t : terms) {
    const double coef =
        t.weight * std::max(t.normal_sign * eta[t.normal_dof], 0.0);
    if (coef > 0.0)
      abs_terms.push_back({t.tangential_dof, coef, 1.0});
  }
  return ConvexFunctional::tangential_weighted_abs(std::move(abs_terms));
}

QviReport solve_qvi_friction(const VIProblem& problem,
                             const FrictionCoupling& coupling,
                             SolveConfig config, double outer_tol,
                             long max_outer) {
  require(outer_tol > 0.0, "solve_qvi_friction: outer_tol must be positive");
  if (!coupling.smallness_holds())
    throw SmallnessViolated(
        "solve_qvi_friction: d0^2 * |mu| * |F| >= m_F, uniqueness argument "
        "fails");
  QviReport out;
  if (coupling.mu_max == 0.0 ||
      std::all_of(coupling.terms.begin(), coupling.terms.end(),
                  [](const FrictionCoupling::Term& t) {
                    return t.weight == 0.0;
                  })) {
    // Frictionless: identical iterate path to plain solve_vi.
    out.inner = solve_vi(problem, std::move(config));
    out.outer_iterations = 0;
    return out;
  }
  Vector eta = config.x0 ? *config.x0
                         : problem.K.project(Vector::Zero(problem.dim()));
  double prev_change = -1.0;
  for (long s = 0; s < max_outer; ++s) {
    VIProblem frozen = problem;
    frozen.j = problem.j + coupling.frozen_term(eta);
    SolveConfig inner_cfg = config;
    inner_cfg.x0 = eta;  // warm start from the previous outer iterate
    SolveReport rep = solve_vi(frozen, std::move(inner_cfg));
    const double change = (rep.u - eta).norm();
    if (prev_change > 0.0 && change > 0.0)
      out.outer_ratio = std::max(out.outer_ratio, change / prev_change);
    prev_change = change;
    eta = rep.u;
    out.outer_iterations = s + 1;
    if (change <= outer_tol) {
      out.inner = std::move(rep);
      return out;
    }
  }
  SolveReport best;
  best.u = eta;
  best.converged = false;
  throw MaxIterExceeded(std::move(best));
}

}  // namespace vilab
