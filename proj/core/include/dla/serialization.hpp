#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "dla/closure.hpp"
#include "dla/constructions.hpp"
#include "dla/verify.hpp"

namespace dla {

using Json = nlohmann::ordered_json;

/// Decimal form with 17 significant digits; parses back to the same double.
std::string format_coefficient(double v);
/// Accepts a decimal string or a JSON number. Throws kMalformedInput.
double parse_coefficient(const Json& v);

/// Spec file:
///   {"qubits": n,
///    "generators": [{"pauli_sum": [{"string": "XIZ", "coeff": "1"}]}
///                 | {"dense": [[["re","im"], ...], ...]}],
///    "meta": {...}}
/// Pauli coefficients c describe i * sum c P; dense entries are the matrix of
/// the anti-Hermitian generator itself.
Json spec_to_json(const GeneratorSpec& spec, const Json& meta = Json::object());
/// Mixed Pauli/dense input is converted to the dense backend. Malformed
/// structure and empty generator lists throw kMalformedInput; validation
/// failures keep their own codes.
GeneratorSpec spec_from_json(const Json& j, const TolerancePolicy& policy = {});

/// {"vertices": n, "edges": [[u, v], ...]} with 1-indexed vertices.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json report_to_json(const ClosureReport& r);
Json cyclicity_to_json(const CyclicityReport& r);
Json evidence_to_json(const DirectPowerEvidence& e);
Json verdict_to_json(const TheoremVerdict& v, bool include_timings = true);
Json spectrum_to_json(const SpectralDecomposition& d);

/// Reads and parses a JSON file; parse errors become kMalformedInput.
Json read_json_file(const std::string& path);

}  // namespace dla
