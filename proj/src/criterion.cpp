#include "vilab/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vilab {

namespace {

double tail_max(const std::vector<double>& v, int tail) {
  double m = 0.0;
  const int start = std::max<int>(0, static_cast<int>(v.size()) - tail);
  for (size_t i = start; i < v.size(); ++i) m = std::max(m, v[i]);
  return m;
}

int quarter(size_t n) { return std::max<int>(1, static_cast<int>(n) / 4); }

}  // namespace

bool decay_test(const std::vector<double>& values, const DecayConfig& cfg) {
  if (values.empty()) return false;
  const double final_value = values.back();
  if (final_value <= cfg.abs_tol) return true;
  if (final_value > cfg.final_tol) return false;
  const int n = static_cast<int>(values.size());
  const int start = n / 2;
  if (n - start < 3) return false;  // too short for a trend fit
  // Least-squares slope of log(value) vs log(index) on the last half.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int i = start; i < n; ++i) {
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(std::max(values[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  const double denom = cnt * sxx - sx * sx;
  if (denom <= 0.0) return false;
  const double slope = (cnt * sxy - sx * sy) / denom;
  return slope <= cfg.slope_max;
}

namespace {

struct RatioObjective {
  const VIProblem& p;
  const Vector& u_n;
  Vector b;  // f - A u_n, constant in v
  ResidualMode mode;

  RatioObjective(const VIProblem& p_, const Vector& u_n_, ResidualMode mode_)
      : p(p_), u_n(u_n_), b(p_.f - p_.A.apply(u_n_)), mode(mode_) {}

  double slack(const Vector& v) const {
    return p.ip.inner(b, v - u_n) + p.j.value(u_n) - p.j.value(v);
  }

  double denom(const Vector& v) const {
    const double d = p.ip.norm(v - u_n);
    return mode == ResidualMode::OnePlusNorm ? 1.0 + d : d;
  }

  // Ratio, or 0 when undefined (v == u_n under Norm mode).
  double eval(const Vector& v) const {
    const double d = denom(v);
    if (d < 1e-14) return 0.0;
    return slack(v) / d;
  }
};

// Exact path for 1-D finite intervals: dense grid then golden-section refine
// inside the bracket around the best grid point.
double exact_interval_sup(const RatioObjective& obj, double lo, double hi) {
  const int grid = 4096;
  double best = 0.0, best_v = lo;
  for (int i = 0; i <= grid; ++i) {
    const double v = lo + (hi - lo) * i / grid;
    Vector vv(1);
    vv << v;
    const double r = obj.eval(vv);
    if (r > best) {
      best = r;
      best_v = v;
    }
  }
  double a = std::max(lo, best_v - (hi - lo) / grid);
  double c = std::min(hi, best_v + (hi - lo) / grid);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80 && c - a > 1e-14; ++it) {
    const double x1 = c - gr * (c - a), x2 = a + gr * (c - a);
    Vector v1(1), v2(1);
    v1 << x1;
    v2 << x2;
    if (obj.eval(v1) < obj.eval(v2))
      a = x1;
    else
      c = x2;
  }
  Vector vm(1);
  vm << 0.5 * (a + c);
  best = std::max(best, obj.eval(vm));
  return std::max(0.0, best);
}

// Projected local ascent on the ratio, keeping the best visited point.
double refine_probe(const RatioObjective& obj, Vector v, int steps) {
  double best = obj.eval(v);
  Vector best_v = v;
  double step = 0.25 * (1.0 + obj.u_n.norm());
  for (int s = 0; s < steps; ++s) {
    const double d = obj.p.ip.norm(v - obj.u_n);
    Vector gd = Vector::Zero(v.size());
    if (d > 1e-14) gd = (v - obj.u_n) / d;
    if (obj.mode == ResidualMode::Norm && d < 1e-14) {
      // Ascend away from u_n along the linear part first.
      v = obj.p.K.project(v + 1e-6 * obj.b);
      continue;
    }
    const double den = obj.denom(v);
    const double num = obj.slack(v);
    Vector gnum = obj.b - obj.p.j.subgradient(v);
    Vector grad = (gnum * den - num * gd) / (den * den);
    const double gn = grad.norm();
    if (gn < 1e-16) break;
    Vector cand = obj.p.K.project(v + (step / gn) * grad);
    const double val = obj.eval(cand);
    if (val > best) {
      best = val;
      best_v = cand;
      v = std::move(cand);
    } else {
      step *= 0.5;
      if (step < 1e-12) break;
    }
  }
  return best;
}

}  // namespace

double epsilon_residual(const VIProblem& problem, const Vector& u_n,
                        ResidualMode mode, const CriterionOptions& opts) {
  require(opts.probe_budget >= 8, "epsilon_residual: probe_budget >= 8");
  RatioObjective obj(problem, u_n, mode);

  if (problem.dim() == 1 && problem.K.kind() == ConvexSet::Kind::Box &&
      std::isfinite(problem.K.lower()[0]) &&
      std::isfinite(problem.K.upper()[0]))
    return exact_interval_sup(obj, problem.K.lower()[0], problem.K.upper()[0]);

  std::mt19937_64 rng(opts.seed);
  std::vector<Vector> probes;
  Vector ref;
  if (opts.reference_u) {
    ref = *opts.reference_u;
  } else {
    ref = solve_vi(problem, opts.solve).u;
  }
  probes.push_back(ref);
  probes.push_back(problem.K.project(u_n, problem.ip));
  const double rho = problem.A.m() / (problem.A.M() * problem.A.M());
  probes.push_back(problem.K.project(
      u_n - rho * (problem.A.apply(u_n) - problem.f), problem.ip));
  for (const Vector& v : problem.K.vertices(64)) probes.push_back(v);
  for (int t = 0; t < opts.probe_budget; ++t)
    probes.push_back(problem.K.project(problem.K.sample(rng), problem.ip));

  double best = 0.0;
  for (Vector& v : probes)
    best = std::max(best, refine_probe(obj, std::move(v), 20));
  return best;
}

double boundedness_check(const VIProblem& problem,
                         const CandidateSequence& seq, double eps_max,
                         double* apriori_bound) {
  require(!seq.empty(), "boundedness_check: empty sequence");
  double D = 0.0;
  for (const Vector& u_n : seq) D = std::max(D, problem.ip.norm(u_n));
  if (apriori_bound) {
    // Quadratic-estimate chain with the affine minorant alpha = 0, beta = 0:
    //   m x^2 <= a x + b,  x = ||u - u_n||,
    //   a = ||Au|| + ||f|| + eps,  b = |j(u)| + eps,
    // so x <= a/m + sqrt(b/m) and ||u_n|| <= ||u|| + that.
    Vector u = solve_vi(problem).u;
    const double m = problem.A.m();
    const double a =
        problem.ip.norm(problem.A.apply(u)) + problem.ip.norm(problem.f) +
        eps_max;
    const double b = std::abs(problem.j.value(u)) + eps_max;
    *apriori_bound = problem.ip.norm(u) + a / m + std::sqrt(b / m);
  }
  return D;
}

namespace {

CriterionReport build_report(const VIProblem& problem,
                             const CandidateSequence& seq,
                             const CriterionOptions& opts, bool full) {
  require(!seq.empty(), "classify: empty sequence");
  const int n = problem.dim();
  for (const Vector& v : seq)
    require(static_cast<int>(v.size()) == n, "classify: dimension mismatch");

  CriterionReport rep;
  rep.reference_u =
      opts.reference_u ? *opts.reference_u : solve_vi(problem, opts.solve).u;
  CriterionOptions per = opts;
  per.reference_u = rep.reference_u;

  std::vector<double> dist, eps_op, eps_nm, wit, err, combined;
  for (const Vector& u_n : seq) {
    CriterionRow row;
    Vector proj = problem.K.project(u_n, problem.ip);
    row.distance = problem.ip.norm(u_n - proj);
    row.lp_witness_norm = row.distance;  // minimal-norm witness P_K(u_n)-u_n
    row.member = problem.K.contains(u_n, 1e-12);
    row.eps_one_plus =
        epsilon_residual(problem, u_n, ResidualMode::OnePlusNorm, per);
    if (full)
      row.eps_norm = epsilon_residual(problem, u_n, ResidualMode::Norm, per);
    row.err_to_solution = problem.ip.norm(u_n - rep.reference_u);
    dist.push_back(row.distance);
    eps_op.push_back(row.eps_one_plus);
    eps_nm.push_back(row.eps_norm);
    wit.push_back(row.lp_witness_norm);
    err.push_back(row.err_to_solution);
    combined.push_back(std::max(row.distance, row.eps_one_plus));
    rep.rows.push_back(row);
  }

  // Budget for the a-priori bound: an approximating sequence must reach
  // eps = o(1), so the tail estimate is capped at 1; a diverging sequence
  // otherwise inflates its own budget and the bound becomes vacuous.
  const double eps_budget =
      std::min(tail_max(eps_op, quarter(seq.size())), 1.0);
  rep.bound_D = boundedness_check(problem, seq, eps_budget, &rep.apriori_bound);
  rep.bounded_ok = rep.bound_D <= rep.apriori_bound + 1e-9;

  const DecayConfig& dc = opts.decay;
  rep.t_approximating = decay_test(combined, dc);
  rep.converging_trend = decay_test(err, dc);
  if (full) {
    bool all_member = true;
    for (const auto& row : rep.rows) all_member &= row.member;
    rep.tykhonov_approximating = all_member && decay_test(eps_nm, dc);
    rep.lp_approximating = decay_test(wit, dc) && decay_test(eps_nm, dc);
  }
  if (!rep.bounded_ok) {
    // A sequence violating the a-priori bound cannot satisfy (c2)(b).
    rep.t_approximating = false;
    rep.tykhonov_approximating = false;
    rep.lp_approximating = false;
  }
  return rep;
}

}  // namespace

CriterionReport check_criterion(const VIProblem& problem,
                                const CandidateSequence& seq,
                                const CriterionOptions& opts) {
  return build_report(problem, seq, opts, /*full=*/false);
}

CriterionReport classify_sequence(const VIProblem& problem,
                                  const CandidateSequence& seq,
                                  const CriterionOptions& opts) {
  return build_report(problem, seq, opts, /*full=*/true);
}

}  // namespace vilab
