#include "dla/serialization.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dla {

std::string format_coefficient(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_coefficient(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) fail(ErrorCode::kMalformedInput, "coefficient must be a string or number");
  const std::string s = v.get<std::string>();
  double out = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out))
    fail(ErrorCode::kMalformedInput, "bad coefficient '" + s + "'");
  return out;
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorCode::kMalformedInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t require_count(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    fail(ErrorCode::kMalformedInput, std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

Json pauli_to_json(const PauliCombination& a) {
  Json terms = Json::array();
  for (const auto& e : a.terms())
    terms.push_back({{"string", e.term.to_string()}, {"coeff", format_coefficient(e.coeff)}});
  return {{"pauli_sum", terms}};
}

Json dense_to_json(const DenseOperator& a) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < a.dim(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < a.dim(); ++c)
      row.push_back({format_coefficient(a.matrix()(r, c).real()),
                     format_coefficient(a.matrix()(r, c).imag())});
    rows.push_back(std::move(row));
  }
  return {{"dense", rows}};
}

PauliCombination pauli_from_json(const Json& terms, std::size_t qubits) {
  if (!terms.is_array()) fail(ErrorCode::kMalformedInput, "'pauli_sum' must be an array");
  std::vector<PauliCombination::Entry> entries;
  for (const Json& t : terms) {
    const Json& s = require(t, "string");
    if (!s.is_string()) fail(ErrorCode::kMalformedInput, "'string' must be a string");
    PauliTerm term;
    try {
      term = PauliTerm::from_string(s.get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::kMalformedInput, e.what());
    }
    if (term.qubit_count() != qubits)
      fail(ErrorCode::kMalformedInput, "Pauli string '" + s.get<std::string>() + "' has length " +
                                           std::to_string(term.qubit_count()) + ", expected " +
                                           std::to_string(qubits));
    entries.push_back({std::move(term), parse_coefficient(require(t, "coeff"))});
  }
  return PauliCombination::from_entries(qubits, std::move(entries));
}

DenseOperator dense_from_json(const Json& rows, std::size_t qubits) {
  if (qubits > static_cast<std::size_t>(kDenseQubitCap))
    fail(ErrorCode::kDenseCapExceeded, "dense generators beyond the qubit cap");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim)
    fail(ErrorCode::kMalformedInput, "'dense' must have 2^qubits rows");
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      fail(ErrorCode::kMalformedInput, "'dense' rows must have 2^qubits entries");
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2)
        fail(ErrorCode::kMalformedInput, "dense entries must be [re, im] pairs");
      m(r, c) = Complex(parse_coefficient(z[0]), parse_coefficient(z[1]));
    }
  }
  return DenseOperator(std::move(m));
}

}  // namespace

Json spec_to_json(const GeneratorSpec& spec, const Json& meta) {
  Json j;
  j["qubits"] = spec.qubit_count();
  Json gens = Json::array();
  if (spec.is_pauli())
    for (const auto& a : spec.pauli()) gens.push_back(pauli_to_json(a));
  else
    for (const auto& a : spec.dense()) gens.push_back(dense_to_json(a));
  j["generators"] = std::move(gens);
  Json m = meta.is_object() ? meta : Json::object();
  if (!spec.family_tag().empty() && !m.contains("family")) m["family"] = spec.family_tag();
  j["meta"] = std::move(m);
  return j;
}

GeneratorSpec spec_from_json(const Json& j, const TolerancePolicy& policy) {
  if (!j.is_object()) fail(ErrorCode::kMalformedInput, "spec must be a JSON object");
  const std::size_t qubits = require_count(j, "qubits");
  if (qubits == 0) fail(ErrorCode::kMalformedInput, "'qubits' must be positive");
  const Json& gens = require(j, "generators");
  if (!gens.is_array()) fail(ErrorCode::kMalformedInput, "'generators' must be an array");
  if (gens.empty()) fail(ErrorCode::kMalformedInput, "generator list is empty");

  std::vector<PauliCombination> pauli;
  std::vector<DenseOperator> dense;
  std::vector<bool> is_pauli;
  for (const Json& g : gens) {
    if (g.is_object() && g.contains("pauli_sum")) {
      pauli.push_back(pauli_from_json(g.at("pauli_sum"), qubits));
      is_pauli.push_back(true);
    } else if (g.is_object() && g.contains("dense")) {
      dense.push_back(dense_from_json(g.at("dense"), qubits));
      is_pauli.push_back(false);
    } else {
      fail(ErrorCode::kMalformedInput, "each generator needs 'pauli_sum' or 'dense'");
    }
  }
  std::string tag;
  if (j.contains("meta") && j["meta"].is_object() && j["meta"].contains("family") &&
      j["meta"]["family"].is_string())
    tag = j["meta"]["family"].get<std::string>();

  if (dense.empty()) return GeneratorSpec::from_pauli(std::move(pauli), tag, policy);
  if (pauli.empty()) return GeneratorSpec::from_dense(std::move(dense), tag, policy);
  // Mixed input: everything goes dense, in the original order.
  std::vector<DenseOperator> all;
  std::size_t ip = 0, id = 0;
  for (bool p : is_pauli) all.push_back(p ? to_dense(pauli[ip++]) : dense[id++]);
  return GeneratorSpec::from_dense(std::move(all), tag, policy);
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back({u + 1, v + 1});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  Graph g;
  g.vertices = require_count(j, "vertices");
  const Json& edges = require(j, "edges");
  if (!edges.is_array()) fail(ErrorCode::kMalformedInput, "'edges' must be an array");
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail(ErrorCode::kMalformedInput, "edges must be [u, v] integer pairs");
    const auto u = e[0].get<std::int64_t>();
    const auto v = e[1].get<std::int64_t>();
    if (u < 1 || v < 1) fail(ErrorCode::kMalformedInput, "graph vertices are 1-indexed");
    g.edges.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  }
  g.validate();
  return g;
}

Json report_to_json(const ClosureReport& r) {
  Json j;
  j["generator_count"] = r.generator_count;
  j["dim_g"] = r.dim_g;
  j["dim_gg"] = r.dim_gg;
  j["dim_center"] = r.dim_center;
  j["dim_spanA_cap_gg"] = r.dim_spanA_cap_gg;
  j["dim_gg_all_pairs"] = r.dim_gg_all_pairs;
  j["reductive_residual"] = r.reductive_residual;
  j["decomposition_residual"] = r.decomposition_residual;
  j["capped"] = r.capped;
  j["rounds"] = r.rounds;
  j["warnings"] = r.warnings;
  return j;
}

Json cyclicity_to_json(const CyclicityReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.noncommuting_pairs) {
    Json e{{"i", p.i + 1}, {"j", p.j + 1}};
    if (p.extension) {
      Json ext = Json::array();
      for (std::size_t k : *p.extension) ext.push_back(k + 1);
      e["extension"] = std::move(ext);
      e["length"] = *p.length();
    } else {
      e["extension"] = nullptr;
      e["length"] = nullptr;
    }
    pairs.push_back(std::move(e));
  }
  Json j;
  j["noncommuting_pairs"] = std::move(pairs);
  j["common_cycle_length"] = r.common_cycle_length ? Json(*r.common_cycle_length) : Json(nullptr);
  j["cyclic"] = r.cyclic();
  j["search_depth_cap"] = r.search_depth_cap;
  return j;
}

Json evidence_to_json(const DirectPowerEvidence& e) {
  Json j;
  j["block_count"] = e.block_count;
  j["base_dim"] = e.base_dim;
  j["per_block_dim"] = e.per_block_dim;
  j["blocks_span_match"] = e.blocks_span_match;
  j["pairwise_commuting"] = e.pairwise_commuting;
  j["structure_constants_match"] = e.structure_constants_match;
  j["containment_residual"] = e.containment_residual;
  j["cross_commutator_residual"] = e.cross_commutator_residual;
  j["structure_constant_residual"] = e.structure_constant_residual;
  j["accepted"] = e.accepted();
  return j;
}

Json verdict_to_json(const TheoremVerdict& v, bool include_timings) {
  Json j;
  j["theorem_id"] = std::string(to_string(v.theorem));
  j["inputs_digest"] = v.inputs_digest;
  j["status"] = std::string(to_string(v.status));
  j["pass"] = v.pass;
  j["predicted"] = Json(v.predicted);
  j["measured"] = Json(v.measured);
  j["evidence"] = v.evidence ? evidence_to_json(*v.evidence) : Json(nullptr);
  if (!v.checks.empty()) j["checks"] = Json(v.checks);
  if (!v.residuals.empty()) j["residuals"] = Json(v.residuals);
  if (v.table_row) {
    j["table_row"] = *v.table_row;
    j["table_center"] = *v.table_center;
  }
  j["notes"] = v.notes;
  if (include_timings) j["timings"] = Json(v.timings);
  return j;
}

Json spectrum_to_json(const SpectralDecomposition& d) {
  Json j;
  j["distinct_eigenvalues"] = d.size();
  j["eigenvalues"] = d.eigenvalues;
  j["multiplicities"] = d.multiplicities;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kMalformedInput, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kMalformedInput, "invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace dla
