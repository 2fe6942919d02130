#pragma once

#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "dla/closure.hpp"
#include "dla/constructions.hpp"
#include "dla/dense_operator.hpp"
#include "dla/pauli.hpp"
#include "oracles.hpp"

namespace testing_support {

using Terms = std::initializer_list<std::pair<std::string_view, double>>;

inline dla::PauliCombination pc(Terms terms) { return dla::PauliCombination::from_strings(terms); }

inline dla::GeneratorSpec pauli_spec(std::initializer_list<Terms> gens) {
  std::vector<dla::PauliCombination> out;
  for (const auto& t : gens) out.push_back(pc(t));
  return dla::GeneratorSpec::from_pauli(std::move(out));
}

/// {iX, iZ} on one qubit.
inline dla::GeneratorSpec xz() { return pauli_spec({{{"X", 1.0}}, {{"Z", 1.0}}}); }

/// {iX1, i(Z1 + Z2)} on two qubits.
inline dla::GeneratorSpec x1_z12() {
  return pauli_spec({{{"XI", 1.0}}, {{"ZI", 1.0}, {"IZ", 1.0}}});
}

inline dla::DenseOperator diag(std::vector<double> d) { return dla::DenseOperator::diagonal(d); }

/// Independent dense copies of a spec's generators, built from the oracle's
/// own Kronecker products for Pauli input.
inline std::vector<oracle::Mat> oracle_generators(const dla::GeneratorSpec& spec) {
  std::vector<oracle::Mat> out;
  if (spec.is_pauli()) {
    for (const auto& a : spec.pauli()) {
      const auto d = static_cast<Eigen::Index>(std::size_t{1} << a.qubit_count());
      oracle::Mat m = oracle::Mat::Zero(d, d);
      for (const auto& e : a.terms())
        m += oracle::cd(0.0, e.coeff) * oracle::pauli(e.term.to_string());
      out.push_back(m);
    }
  } else {
    for (const auto& a : spec.dense()) out.push_back(a.matrix());
  }
  return out;
}

inline oracle::Dims oracle_dims(const dla::GeneratorSpec& spec) {
  return oracle::dims(oracle_generators(spec));
}

inline dla::ClosureReport analyze(const dla::GeneratorSpec& spec, const dla::ClosureCaps& caps = {}) {
  return spec.visit([&](auto gens) {
    using Op = typename decltype(gens)::value_type;
    return dla::analyze<std::remove_const_t<Op>>(gens, caps);
  });
}

}  // namespace testing_support
