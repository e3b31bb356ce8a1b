#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vilab/json_io.hpp"

using namespace vilab;

namespace {

json sample_doc() {
  return json::parse(R"({
    "inner_product": {"kind": "euclidean"},
    "operator": {"kind": "linear", "matrix": [[2.0, 0.5], [0.5, 1.5]]},
    "set": {"kind": "box", "lower": [0.0, null], "upper": [1.0, 2.5]},
    "functional": {"kind": "weighted_positive_part",
                   "terms": [{"index": 0, "weight": 0.3, "sign": -1.0}]},
    "rhs": [1.0, -0.5]
  })");
}

}  // namespace

TEST_CASE("problem docs round-trip through serialization") {
  VIProblem p = problem_from_json(sample_doc());
  CHECK(p.dim() == 2);
  CHECK(p.K.lower()[0] == 0.0);
  CHECK(std::isinf(p.K.lower()[1]));
  CHECK(p.K.lower()[1] < 0.0);
  CHECK(p.j.terms()[0].sign == -1.0);
  VIProblem q = problem_from_json(problem_to_json(p));
  CHECK((q.f - p.f).norm() == 0.0);
  CHECK((q.A.matrix() - p.A.matrix()).norm() == 0.0);
  CHECK(q.K.upper() == p.K.upper());
  // Serialized form is stable: dump(load(dump(x))) == dump(x).
  CHECK(problem_to_json(q).dump() == problem_to_json(p).dump());
}

TEST_CASE("identity, affine, slice, and gram variants all load") {
  json doc = sample_doc();
  doc["operator"] = {{"kind", "identity"}, {"dim", 2}};
  doc["set"] = {{"kind", "affine_slice"},
                {"dim", 2},
                {"indices", {1}},
                {"values", {0.25}}};
  doc["functional"] = {{"kind", "zero"}};
  VIProblem p = problem_from_json(doc);
  CHECK(p.K.fixed_values()[0] == 0.25);
  CHECK(solve_vi(p).u[1] == doctest::Approx(0.25));

  doc["inner_product"] = {{"kind", "gram"},
                          {"matrix", {{2.0, 0.0}, {0.0, 1.0}}}};
  doc["operator"] = {{"kind", "affine"},
                     {"matrix", {{1.0, 0.0}, {0.0, 1.0}}},
                     {"shift", {0.1, -0.1}}};
  CHECK(problem_from_json(doc).A.shift()[0] == 0.1);
}

TEST_CASE("malformed docs raise validation errors naming the field") {
  json doc = sample_doc();
  doc["operator"]["kind"] = "cubic";
  CHECK_THROWS_WITH_AS(problem_from_json(doc),
                       doctest::Contains("operator"), ValidationError);
  doc = sample_doc();
  doc["set"]["kind"] = "simplex";
  CHECK_THROWS_WITH_AS(problem_from_json(doc), doctest::Contains("set"),
                       ValidationError);
  doc = sample_doc();
  doc["rhs"] = "nope";
  CHECK_THROWS_WITH_AS(problem_from_json(doc), doctest::Contains("rhs"),
                       ValidationError);
  doc = sample_doc();
  doc["operator"]["matrix"] = {{1.0, 0.0}, {0.0}};
  CHECK_THROWS_WITH_AS(problem_from_json(doc), doctest::Contains("ragged"),
                       ValidationError);
}

TEST_CASE("non-monotone operators fail validation at load time") {
  json doc = sample_doc();
  doc["operator"]["matrix"] = {{1.0, 0.0}, {0.0, -1.0}};
  CHECK_THROWS_AS(problem_from_json(doc), ValidationError);
}

TEST_CASE("sequence csv parses rows and enforces dimensions") {
  std::istringstream is("1.0,2.0\n# comment\n3.0,4.0\n");
  CandidateSequence seq = sequence_from_csv(is, 2);
  REQUIRE(seq.size() == 2);
  CHECK(seq[1][0] == 3.0);
  std::istringstream bad("1.0,2.0,3.0\n");
  CHECK_THROWS_AS(sequence_from_csv(bad, 2), ValidationError);
  std::istringstream empty("");
  CHECK_THROWS_AS(sequence_from_csv(empty, 2), ValidationError);
}

TEST_CASE("criterion csv has one row per sequence element") {
  VIProblem p = scalar_projection_problem(0, 1, 2);
  CandidateSequence seq(8, Vector::Constant(1, 0.5));
  CriterionReport rep = classify_sequence(p, seq);
  std::ostringstream os;
  criterion_report_to_csv(rep, os);
  std::istringstream is(os.str());
  int lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == 9);  // header + 8 rows
}

TEST_CASE("atomic writes land complete and leave no temp files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vilab_io_test";
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";
  write_file_atomic(target.string(), "payload\n");
  std::ifstream is(target);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str() == "payload\n");
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
  fs::remove_all(dir);
}

TEST_CASE("solve report serializes the iterate summary") {
  SolveReport rep = solve_vi(scalar_projection_problem(0, 1, 2));
  json doc = report_to_json(rep);
  CHECK(doc["converged"] == true);
  CHECK(doc["u"].size() == 1);
  CHECK(doc["u"][0].get<double>() == doctest::Approx(1.0));
}
