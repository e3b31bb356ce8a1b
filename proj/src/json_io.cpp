#include "vilab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace vilab {

namespace {

Vector vector_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + ": expected array");
  Vector v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (arr[i].is_null())
      v[i] = std::numeric_limits<double>::infinity();
    else
      v[i] = arr[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const json& arr, const char* what) {
  if (!arr.is_array() || arr.empty() || !arr[0].is_array())
    throw ValidationError(std::string(what) + ": expected array of rows");
  const size_t rows = arr.size(), cols = arr[0].size();
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (arr[r].size() != cols)
      throw ValidationError(std::string(what) + ": ragged matrix");
    for (size_t c = 0; c < cols; ++c) m(r, c) = arr[r][c].get<double>();
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) {
    if (std::isinf(v[i]))
      arr.push_back(nullptr);
    else
      arr.push_back(v[i]);
  }
  return arr;
}

json matrix_to_json(const Matrix& m) {
  json arr = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    arr.push_back(row);
  }
  return arr;
}

std::vector<ConvexFunctional::Term> terms_from_json(const json& arr) {
  std::vector<ConvexFunctional::Term> terms;
  for (const auto& t : arr)
    terms.push_back({t.at("index").get<int>(), t.at("weight").get<double>(),
                     t.value("sign", 1.0)});
  return terms;
}

json terms_to_json(const std::vector<ConvexFunctional::Term>& terms) {
  json arr = json::array();
  for (const auto& t : terms)
    arr.push_back({{"index", t.index}, {"weight", t.weight}, {"sign", t.sign}});
  return arr;
}

}  // namespace

VIProblem problem_from_json(const json& doc) {
  VIProblem p;
  const json& ipj = doc.at("inner_product");
  const std::string ip_kind = ipj.at("kind").get<std::string>();
  if (ip_kind == "euclidean")
    p.ip = InnerProduct::euclidean();
  else if (ip_kind == "gram")
    p.ip = InnerProduct::gram(matrix_from_json(ipj.at("matrix"), "inner_product"));
  else
    throw ValidationError("inner_product: unknown kind '" + ip_kind + "'");

  const json& opj = doc.at("operator");
  const std::string op_kind = opj.at("kind").get<std::string>();
  if (op_kind == "identity")
    p.A = MonotoneOperator::identity(opj.at("dim").get<int>());
  else if (op_kind == "linear")
    p.A = MonotoneOperator::linear(matrix_from_json(opj.at("matrix"), "operator"));
  else if (op_kind == "affine")
    p.A = MonotoneOperator::affine(matrix_from_json(opj.at("matrix"), "operator"),
                                   vector_from_json(opj.at("shift"), "operator.shift"));
  else
    throw ValidationError("operator: unknown kind '" + op_kind + "'");

  const json& setj = doc.at("set");
  const std::string set_kind = setj.at("kind").get<std::string>();
  if (set_kind == "whole_space")
    p.K = ConvexSet::whole_space(setj.at("dim").get<int>());
  else if (set_kind == "box") {
    Vector lo = vector_from_json(setj.at("lower"), "set.lower");
    for (int i = 0; i < lo.size(); ++i)
      if (std::isinf(lo[i]) && lo[i] > 0) lo[i] = -lo[i];  // null lower = -inf
    p.K = ConvexSet::box(lo, vector_from_json(setj.at("upper"), "set.upper"));
  }
  else if (set_kind == "affine_slice")
    p.K = ConvexSet::affine_slice(setj.at("dim").get<int>(),
                                  setj.at("indices").get<std::vector<int>>(),
                                  vector_from_json(setj.at("values"), "set.values"));
  else
    throw ValidationError("set: unknown kind '" + set_kind + "'");

  const json& fj = doc.at("functional");
  const std::string f_kind = fj.at("kind").get<std::string>();
  if (f_kind == "zero")
    p.j = ConvexFunctional::zero();
  else if (f_kind == "weighted_positive_part")
    p.j = ConvexFunctional::weighted_positive_part(terms_from_json(fj.at("terms")));
  else if (f_kind == "tangential_weighted_abs")
    p.j = ConvexFunctional::tangential_weighted_abs(terms_from_json(fj.at("terms")));
  else
    throw ValidationError("functional: unknown kind '" + f_kind + "'");

  p.f = vector_from_json(doc.at("rhs"), "rhs");
  p.validate();
  return p;
}

json problem_to_json(const VIProblem& p) {
  json doc;
  if (p.ip.kind() == InnerProduct::Kind::Euclidean)
    doc["inner_product"] = {{"kind", "euclidean"}};
  else
    doc["inner_product"] = {{"kind", "gram"},
                            {"matrix", matrix_to_json(p.ip.gram_matrix())}};
  switch (p.A.kind()) {
    case MonotoneOperator::Kind::Linear:
      doc["operator"] = {{"kind", "linear"}, {"matrix", matrix_to_json(p.A.matrix())}};
      break;
    case MonotoneOperator::Kind::Affine:
      doc["operator"] = {{"kind", "affine"},
                         {"matrix", matrix_to_json(p.A.matrix())},
                         {"shift", vector_to_json(p.A.shift())}};
      break;
    case MonotoneOperator::Kind::Penalized:
      throw ValidationError("problem_to_json: penalized operators are not serialized");
  }
  switch (p.K.kind()) {
    case ConvexSet::Kind::WholeSpace:
      doc["set"] = {{"kind", "whole_space"}, {"dim", p.K.dim()}};
      break;
    case ConvexSet::Kind::Box: {
      json lo = json::array(), hi = json::array();
      for (int i = 0; i < p.K.dim(); ++i) {
        if (std::isinf(p.K.lower()[i])) lo.push_back(nullptr); else lo.push_back(p.K.lower()[i]);
        if (std::isinf(p.K.upper()[i])) hi.push_back(nullptr); else hi.push_back(p.K.upper()[i]);
      }
      doc["set"] = {{"kind", "box"}, {"lower", lo}, {"upper", hi}};
      break;
    }
    case ConvexSet::Kind::AffineSlice:
      doc["set"] = {{"kind", "affine_slice"},
                    {"dim", p.K.dim()},
                    {"indices", p.K.fixed_indices()},
                    {"values", vector_to_json(p.K.fixed_values())}};
      break;
  }
  switch (p.j.kind()) {
    case ConvexFunctional::Kind::Zero:
      doc["functional"] = {{"kind", "zero"}};
      break;
    case ConvexFunctional::Kind::WeightedPositivePart:
      doc["functional"] = {{"kind", "weighted_positive_part"},
                           {"terms", terms_to_json(p.j.terms())}};
      break;
    case ConvexFunctional::Kind::TangentialWeightedAbs:
      doc["functional"] = {{"kind", "tangential_weighted_abs"},
                           {"terms", terms_to_json(p.j.abs_terms())}};
      break;
    case ConvexFunctional::Kind::Mixed:
      throw ValidationError("problem_to_json: mixed functionals are not serialized");
  }
  doc["rhs"] = vector_to_json(p.f);
  return doc;
}

json report_to_json(const SolveReport& rep) {
  json u = json::array();
  for (int i = 0; i < rep.u.size(); ++i) u.push_back(rep.u[i]);
  json doc = {{"u", u},
              {"iterations", rep.iterations},
              {"converged", rep.converged}};
  if (std::isnan(rep.contraction_estimate))
    doc["contraction_estimate"] = nullptr;
  else
    doc["contraction_estimate"] = rep.contraction_estimate;
  return doc;
}

json criterion_report_to_json(const CriterionReport& rep) {
  json doc = {{"t_approximating", rep.t_approximating},
              {"tykhonov_approximating", rep.tykhonov_approximating},
              {"lp_approximating", rep.lp_approximating},
              {"converging_trend", rep.converging_trend},
              {"bounded_ok", rep.bounded_ok},
              {"bound_D", rep.bound_D},
              {"apriori_bound", rep.apriori_bound}};
  return doc;
}

void criterion_report_to_csv(const CriterionReport& rep, std::ostream& os) {
  os << "n,distance,eps_one_plus,eps_norm,lp_witness_norm,err_to_solution\n";
  int n = 1;
  for (const auto& row : rep.rows)
    os << n++ << ',' << row.distance << ',' << row.eps_one_plus << ','
       << row.eps_norm << ',' << row.lp_witness_norm << ','
       << row.err_to_solution << '\n';
}

CandidateSequence sequence_from_csv(std::istream& is, int expected_dim) {
  CandidateSequence seq;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    Vector v(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
    if (expected_dim > 0 && static_cast<int>(vals.size()) != expected_dim)
      throw ValidationError("sequence: row dimension mismatch");
    seq.push_back(std::move(v));
  }
  require(!seq.empty(), "sequence: no rows");
  return seq;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    require(os.good(), "cannot open " + tmp);
    os << contents;
  }
  require(std::rename(tmp.c_str(), path.c_str()) == 0,
          "cannot rename " + tmp + " to " + path);
}

}  // namespace vilab
