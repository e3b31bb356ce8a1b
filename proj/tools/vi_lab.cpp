// vi_lab: batch driver for variational-inequality solves, convergence
// studies, and sequence classification.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vilab/fem_contact.hpp"
#include "vilab/fem_heat.hpp"
#include "vilab/json_io.hpp"

namespace fs = std::filesystem;
using namespace vilab;

namespace {

unsigned long probe_seed() {
  if (const char* env = std::getenv("VI_LAB_SEED")) return std::stoul(env);
  return 12345;
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is.good()) throw ValidationError("cannot open " + path);
  json doc;
  is >> doc;
  return doc;
}

// FNV-1a over the CSV bytes; stable fingerprint for the manifest.
std::string fingerprint(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string table_csv(const ConvergenceTable& table) {
  std::ostringstream os;
  os << std::setprecision(17);
  write_csv(table, os);
  return os.str();
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    unsigned long seed, const json& params,
                    const ConvergenceTable& table, const std::string& csv) {
  json manifest = {{"command", command},
                   {"seed", seed},
                   {"params", params},
                   {"rows", table.rows.size()},
                   {"reference_u_hash",
                    fingerprint([&] {
                      std::ostringstream os;
                      os << std::setprecision(17);
                      for (int i = 0; i < table.reference_u.size(); ++i)
                        os << table.reference_u[i] << '\n';
                      return os.str();
                    }())},
                   {"table_hash", fingerprint(csv)}};
  write_file_atomic((out_dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

void emit_gnuplot(const fs::path& out_dir, const std::string& csv_name) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'row'\n"
     << "set ylabel 'error'\n"
     << "plot '" << csv_name << "' every ::1 using 1:3 with linespoints"
     << " title 'err', '' every ::1 using 1:5 with linespoints title 'eps'\n";
  write_file_atomic((out_dir / "plot.gp").string(), os.str());
}

int finish_study(const ConvergenceTable& table, const fs::path& out_dir,
                 const std::string& command, const json& params,
                 double threshold, bool gnuplot) {
  fs::create_directories(out_dir);
  const std::string csv = table_csv(table);
  write_file_atomic((out_dir / "study.csv").string(), csv);
  write_manifest(out_dir, command, probe_seed(), params, table, csv);
  if (gnuplot) emit_gnuplot(out_dir, "study.csv");
  bool any_failed = false;
  for (const auto& row : table.rows) any_failed |= !row.ok;
  if (any_failed) {
    std::cerr << "vi_lab: study has failed rows\n";
    return 3;
  }
  const double final_err = table.rows.back().err;
  const double scale = 1.0 + table.reference_u.norm();
  if (final_err > threshold * scale) {
    std::cerr << "vi_lab: final error " << final_err
              << " above threshold " << threshold * scale << "\n";
    return 3;
  }
  return 0;
}

std::vector<double> harmonic_ladder(int rows, double scale = 1.0) {
  std::vector<double> out;
  for (int n = 1; n <= rows; ++n) out.push_back(scale / n);
  return out;
}

int cmd_solve(const std::string& spec_path, const std::string& out,
              double tol, bool accelerate) {
  const VIProblem problem = problem_from_json(read_json_file(spec_path));
  SolveConfig cfg;
  cfg.tol = tol;
  cfg.accelerate = accelerate;
  SolveReport rep;
  try {
    rep = solve_vi(problem, cfg);
  } catch (const MaxIterExceeded& e) {
    rep = e.report;
    fs::create_directories(out);
    write_file_atomic((fs::path(out) / "solve_report.json").string(),
                      report_to_json(rep).dump(2) + "\n");
    std::cerr << "vi_lab: " << e.what() << "\n";
    return 2;
  }
  fs::create_directories(out);
  write_file_atomic((fs::path(out) / "solve_report.json").string(),
                    report_to_json(rep).dump(2) + "\n");
  std::ostringstream csv;
  csv << std::setprecision(17) << "i,u\n";
  for (int i = 0; i < rep.u.size(); ++i) csv << i << ',' << rep.u[i] << '\n';
  write_file_atomic((fs::path(out) / "solution.csv").string(), csv.str());
  return 0;
}

ConvergenceTable scalar_penalty_table() {
  VIProblem base = scalar_projection_problem(0.0, 1.0, 2.0);
  PenaltyOperator G = PenaltyOperator::proj_residual(base.K);
  return run_penalty_study(base, G, geometric_lambda_ladder());
}

int cmd_study(const std::string& kind, const std::string& preset,
              const std::string& out, int dim, int nx, int ny, double g_val,
              double b_val, int rows, double mu0, double threshold,
              bool gnuplot) {
  std::string use_preset = preset;
  if (use_preset.empty())
    use_preset = (kind == "mosco") ? "interval" : "scalar";
  json params = {{"kind", kind}, {"preset", use_preset}};
  if (kind == "penalty") {
    if (use_preset != "scalar")
      throw ValidationError("study penalty: unknown preset '" + use_preset + "'");
    return finish_study(scalar_penalty_table(), out, "study penalty", params,
                        threshold, gnuplot);
  }
  if (kind == "data") {
    if (use_preset != "scalar")
      throw ValidationError("study data: unknown preset '" + use_preset + "'");
    if (rows <= 0) rows = 16;
    VIProblem base = scalar_projection_problem(0.0, 1.0, 2.0);
    std::vector<Vector> f_seq;
    for (double d : harmonic_ladder(rows))
      f_seq.push_back(Vector::Constant(1, 2.0 + d));
    return finish_study(run_data_study(base, f_seq), out, "study data", params,
                        threshold, gnuplot);
  }
  if (kind == "mosco") {
    if (use_preset != "interval")
      throw ValidationError("study mosco: unknown preset '" + use_preset + "'");
    if (rows <= 0) rows = 1000;  // errors 1/(n+1): long enough to pass the gate
    VIProblem base = scalar_projection_problem(0.0, 1.0, 2.0);
    std::vector<ConvexSet> sets;
    for (int n = 1; n <= rows; ++n)
      sets.push_back(ConvexSet::interval(0.0, 1.0 - 1.0 / (n + 1.0)));
    return finish_study(run_mosco_study(base, sets), out, "study mosco",
                        params, threshold, gnuplot);
  }
  if (kind == "heat") {
    const int hx = nx > 0 ? nx : 64;
    Mesh mesh = (dim == 1) ? Mesh::interval(hx)
                           : Mesh::rectangle_heat(hx, ny > 0 ? ny : hx);
    const int n = mesh.num_nodes();
    HeatModel model =
        assemble_heat(mesh, Vector::Constant(n, g_val), Vector::Zero(n),
                      Vector::Constant(n, b_val));
    params["dim"] = dim;
    params["nx"] = hx;
    params["g"] = g_val;
    params["b"] = b_val;
    const std::vector<double> ladder = {1.0,  0.5,   0.25,   0.1,   0.05,
                                        0.01, 0.005, 0.001,  1e-4,  1e-5};
    return finish_study(run_heat_penalty_study(model, ladder), out,
                        "study heat", params, threshold, gnuplot);
  }
  if (kind == "contact") {
    if (rows <= 0) rows = 1200;
    ContactProblemData data;
    data.nx = nx > 0 ? nx : 4;
    data.ny = ny > 0 ? ny : 2;
    ContactModel model = assemble_contact(data);
    params["nx"] = data.nx;
    params["ny"] = data.ny;
    params["mu0"] = mu0;
    return finish_study(
        run_contact_perturbation_study(model, data, mu0, rows), out,
        "study contact", params, threshold, gnuplot);
  }
  throw ValidationError("study: unknown kind '" + kind + "'");
}

int cmd_classify(const std::string& spec_path, const std::string& seq_path,
                 const std::string& out) {
  const VIProblem problem = problem_from_json(read_json_file(spec_path));
  std::ifstream is(seq_path);
  if (!is.good()) throw ValidationError("cannot open " + seq_path);
  const CandidateSequence seq = sequence_from_csv(is, problem.dim());
  CriterionOptions opts;
  opts.seed = probe_seed();
  const CriterionReport rep = classify_sequence(problem, seq, opts);
  fs::create_directories(out);
  std::ostringstream csv;
  csv << std::setprecision(17);
  criterion_report_to_csv(rep, csv);
  write_file_atomic((fs::path(out) / "criterion.csv").string(), csv.str());
  write_file_atomic((fs::path(out) / "flags.json").string(),
                    criterion_report_to_json(rep).dump(2) + "\n");
  return 0;
}

// Golden suite over the closed-form scalar examples. Deterministic for a
// fixed seed; acceptance compares the output bytes of two runs.
int cmd_selftest(const std::string& out) {
  fs::create_directories(out);
  std::ostringstream log;
  log << std::setprecision(17);
  CriterionOptions opts;
  opts.seed = probe_seed();
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    log << (ok ? "ok   " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  // Projection problem: K=[0,1], A=I, f=2 -> u = 1.
  VIProblem p = scalar_projection_problem(0.0, 1.0, 2.0);
  SolveReport rep = solve_vi(p);
  check("projection u=1", std::abs(rep.u[0] - 1.0) <= 1e-10);
  log << "u " << rep.u[0] << '\n';

  const int N = 1024;
  auto harmonic_seq = [&](double base, double sign) {
    CandidateSequence seq;
    for (int n = 1; n <= N; ++n)
      seq.push_back(Vector::Constant(1, base + sign / n));
    return seq;
  };

  // Infeasible constant sequence u_n = f = 2: zero residual, unit distance.
  {
    CandidateSequence seq(N, Vector::Constant(1, 2.0));
    CriterionReport crep = classify_sequence(p, seq, opts);
    check("constant-2 residual 0",
          crep.rows.back().eps_one_plus <= 1e-12);
    check("constant-2 distance 1",
          std::abs(crep.rows.back().distance - 1.0) <= 1e-12);
    check("constant-2 non-convergent", !crep.t_approximating);
  }

  // Feasible constant sequence u_n = 0 for f = 1/2: residual stuck at 1/4.
  {
    VIProblem ph = scalar_projection_problem(0.0, 1.0, 0.5);
    CandidateSequence seq(N, Vector::Zero(1));
    CriterionReport crep = classify_sequence(ph, seq, opts);
    check("half residual 0.25",
          std::abs(crep.rows.back().eps_one_plus - 0.25) <= 1e-6);
    check("half distance 0", crep.rows.back().distance <= 1e-12);
    check("half non-convergent", !crep.t_approximating);
  }

  // u_n = 1 - 1/n from inside: mode separation between denominators.
  {
    CriterionReport crep = classify_sequence(p, harmonic_seq(1.0, -1.0), opts);
    const auto& last = crep.rows.back();
    check("inside eps_norm >= 1", last.eps_norm >= 1.0 - 1e-9);
    check("inside eps_one_plus <= 2/n", last.eps_one_plus <= 2.0 / N + 1e-12);
    check("inside t-approximating", crep.t_approximating);
    check("inside not tykhonov", !crep.tykhonov_approximating);
    std::ostringstream csv;
    csv << std::setprecision(17);
    criterion_report_to_csv(crep, csv);
    write_file_atomic((fs::path(out) / "inside.csv").string(), csv.str());
  }

  // u_n = 1 + 1/n from outside with f = 1: lp-approximating, not tykhonov.
  {
    VIProblem p1 = scalar_projection_problem(0.0, 1.0, 1.0);
    CriterionReport crep = classify_sequence(p1, harmonic_seq(1.0, 1.0), opts);
    check("outside lp", crep.lp_approximating);
    check("outside not tykhonov", !crep.tykhonov_approximating);
    check("outside witness 1/n",
          std::abs(crep.rows.back().lp_witness_norm - 1.0 / N) <= 1e-12);
    write_file_atomic((fs::path(out) / "outside.json").string(),
                      criterion_report_to_json(crep).dump(2) + "\n");
  }

  // Scalar penalty ladder: errors lambda/(1+lambda).
  {
    ConvergenceTable table = scalar_penalty_table();
    bool ok = true;
    for (const auto& row : table.rows)
      ok = ok && std::abs(row.err - row.param / (1.0 + row.param)) <= 1e-9;
    check("penalty err lambda/(1+lambda)", ok);
    write_file_atomic((fs::path(out) / "penalty.csv").string(),
                      table_csv(table));
  }

  log << "seed " << probe_seed() << '\n'
      << (failures == 0 ? "SELFTEST PASS" : "SELFTEST FAIL") << '\n';
  write_file_atomic((fs::path(out) / "selftest.txt").string(), log.str());
  std::cout << log.str();
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational inequality solver and convergence lab"};
  app.require_subcommand(1);

  std::string spec_path, seq_path, out = "vi_lab_out";
  std::string kind, preset;
  double tol = 1e-10, threshold = 1e-3, g_val = 2.0, b_val = 0.0, mu0 = 0.02;
  int dim = 1, nx = 0, ny = 0, rows = 0;
  bool accelerate = false, gnuplot = false;

  auto* solve = app.add_subcommand("solve", "solve a problem spec");
  solve->add_option("--spec", spec_path, "problem spec JSON")->required();
  solve->add_option("--out", out, "output directory");
  solve->add_option("--tol", tol, "fixed-point tolerance");
  solve->add_flag("--accelerate", accelerate, "restarted Nesterov iteration");

  auto* study = app.add_subcommand("study", "run a convergence study");
  study->add_option("kind", kind, "penalty|data|mosco|heat|contact")
      ->required();
  study->add_option("--preset", preset, "named problem preset");
  study->add_option("--out", out, "output directory");
  study->add_option("--dim", dim, "heat: mesh dimension (1 or 2)");
  study->add_option("--nx", nx, "mesh cells in x");
  study->add_option("--ny", ny, "mesh cells in y");
  study->add_option("--g", g_val, "heat: uniform source");
  study->add_option("--b", b_val, "heat: target boundary value");
  study->add_option("--rows", rows, "ladder length (0 = per-study default)");
  study->add_option("--mu0", mu0, "contact: friction ladder scale");
  study->add_option("--threshold", threshold, "relative final-error gate");
  study->add_flag("--emit-gnuplot", gnuplot, "write plot.gp next to the CSV");

  auto* classify = app.add_subcommand("classify", "classify a sequence");
  classify->add_option("--spec", spec_path, "problem spec JSON")->required();
  classify->add_option("--sequence", seq_path, "sequence CSV")->required();
  classify->add_option("--out", out, "output directory");

  auto* selftest = app.add_subcommand("selftest", "run the golden suite");
  selftest->add_option("--out", out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(spec_path, out, tol, accelerate);
    if (study->parsed())
      return cmd_study(kind, preset, out, dim, nx, ny, g_val, b_val, rows,
                       mu0, threshold, gnuplot);
    if (classify->parsed()) return cmd_classify(spec_path, seq_path, out);
    if (selftest->parsed()) return cmd_selftest(out);
  } catch (const MaxIterExceeded& e) {
    std::cerr << "vi_lab: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "vi_lab: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "vi_lab: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "vi_lab: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
