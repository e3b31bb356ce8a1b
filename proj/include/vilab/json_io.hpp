#pragma once

#include <string>

#include <json.hpp>

#include "vilab/criterion.hpp"
#include "vilab/solver.hpp"
#include "vilab/studies.hpp"

namespace vilab {

using nlohmann::json;

// Problem document schema (tagged unions, dense row-major matrices):
// {
//   "inner_product": {"kind": "euclidean"} |
//                    {"kind": "gram", "matrix": [[...], ...]},
//   "operator": {"kind": "identity", "dim": n} |
//               {"kind": "linear", "matrix": [[...], ...]} |
//               {"kind": "affine", "matrix": ..., "shift": [...]},
//   "set": {"kind": "whole_space", "dim": n} |
//          {"kind": "box", "lower": [...], "upper": [...]} |   (null = inf)
//          {"kind": "affine_slice", "dim": n, "indices": [...],
//           "values": [...]},
//   "functional": {"kind": "zero"} |
//                 {"kind": "weighted_positive_part",
//                  "terms": [{"index": i, "weight": w, "sign": s}, ...]} |
//                 {"kind": "tangential_weighted_abs", "terms": [...]},
//   "rhs": [...]
// }
VIProblem problem_from_json(const json& doc);
json problem_to_json(const VIProblem& p);

json report_to_json(const SolveReport& rep);
json criterion_report_to_json(const CriterionReport& rep);
void criterion_report_to_csv(const CriterionReport& rep, std::ostream& os);

// One vector per row, comma-separated coefficients.
CandidateSequence sequence_from_csv(std::istream& is, int expected_dim);

// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace vilab
