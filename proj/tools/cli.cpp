#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dla/closure.hpp"
#include "dla/constructions.hpp"
#include "dla/serialization.hpp"
#include "dla/verify.hpp"

namespace dla::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
      return kExitMalformed;
    case ErrorCode::kNotHermitian:
    case ErrorCode::kNotAntiHermitian:
    case ErrorCode::kNotTraceless:
    case ErrorCode::kDependentGenerators:
    case ErrorCode::kSignAmbiguous:
    case ErrorCode::kDuplicateEigenvalues:
    case ErrorCode::kPreconditionFailed:
    case ErrorCode::kPhaseViolation:
      return kExitRejected;
    case ErrorCode::kCapExceeded:
    case ErrorCode::kCappedBasis:
    case ErrorCode::kDenseCapExceeded:
      return kExitCapped;
  }
  return kExitFailure;
}

namespace {

struct Options {
  // shared
  std::optional<double> tol;
  std::size_t max_dim = 0;
  std::size_t max_rounds = 64;
  std::uint64_t seed = 0;
  std::string out_path;
  bool no_timings = false;
  // inputs
  std::string spec_path;
  std::string graph;
  std::string family = "maxcut";
  std::string base;
  // constructions
  std::string mode;
  std::vector<double> chi_spectrum;
  std::string style = "diagonal";
  std::string subset = "all";
  std::optional<std::size_t> q;
  std::optional<std::size_t> k;
  std::optional<std::size_t> index;
  // verify
  std::string theorem;
  std::size_t sweep = 0;
  // analyze / spectrum
  bool cyclic = false;
  std::optional<int> stride;
};

TolerancePolicy policy_of(const Options& o) {
  TolerancePolicy p;
  if (o.tol) p.rank_threshold = *o.tol;
  p.validate();
  return p;
}

ClosureCaps caps_of(const Options& o) { return ClosureCaps{o.max_dim, o.max_rounds}; }

void emit(const Json& j, const Options& o, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) fail(ErrorCode::kInvalidArgument, "cannot write '" + o.out_path + "'");
  f << text;
}

Graph load_graph(const std::string& text) {
  if (std::filesystem::exists(text)) return graph_from_json(read_json_file(text));
  return Graph::named(text);
}

GeneratorSpec named_base(const std::string& name) {
  if (name == "pauli-xz")
    return GeneratorSpec::from_pauli({PauliCombination::from_strings({{"X", 1.0}}),
                                      PauliCombination::from_strings({{"Z", 1.0}})},
                                     name);
  if (name == "pauli-x1-z12")
    return GeneratorSpec::from_pauli(
        {PauliCombination::from_strings({{"XI", 1.0}}),
         PauliCombination::from_strings({{"ZI", 1.0}, {"IZ", 1.0}})},
        name);
  fail(ErrorCode::kMalformedInput, "unknown base '" + name + "' (pauli-xz, pauli-x1-z12)");
}

// Generator set from --spec, --base or --graph/--family (in that order).
GeneratorSpec load_spec(const Options& o, const TolerancePolicy& policy) {
  if (!o.spec_path.empty()) return spec_from_json(read_json_file(o.spec_path), policy);
  if (!o.base.empty()) return named_base(o.base);
  if (!o.graph.empty()) return qaoa_generators(load_graph(o.graph), parse_qaoa_family(o.family));
  fail(ErrorCode::kMalformedInput, "no input: pass --spec, --base or --graph");
}

SpectrumStyle parse_style(const std::string& s) {
  if (s == "diagonal") return SpectrumStyle::kDiagonal;
  if (s == "random" || s == "random-conjugated") return SpectrumStyle::kRandomConjugated;
  fail(ErrorCode::kMalformedInput, "unknown --style '" + s + "' (diagonal, random)");
}

// chi/Q from --chi-spectrum, else 1..K from --k, else `fallback`.
std::optional<DenseOperator> aux_operator(const Options& o, std::optional<std::vector<double>> fallback,
                                          const TolerancePolicy& policy) {
  std::vector<double> spectrum = o.chi_spectrum;
  if (spectrum.empty() && o.k) {
    if (*o.k < 1) fail(ErrorCode::kInvalidArgument, "--k must be positive");
    for (std::size_t j = 1; j <= *o.k; ++j) spectrum.push_back(static_cast<double>(j));
  }
  if (spectrum.empty() && fallback) spectrum = *fallback;
  if (spectrum.empty()) return std::nullopt;
  // Repeated entries are allowed: "1,2,3,3" is diag(1,2,3,3) with K = 3.
  SpectrumOptions so;
  so.require_distinct = false;
  so.style = parse_style(o.style);
  so.seed = o.seed;
  return build_hermitian_with_spectrum(spectrum, so, policy);
}

std::vector<std::size_t> parse_subset(const std::string& text, std::size_t size) {
  std::vector<std::size_t> out;
  if (text == "all") {
    for (std::size_t i = 0; i < size; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      fail(ErrorCode::kMalformedInput, "bad subset entry '" + item + "'");
    }
    if (pos != item.size() || v < 1)
      fail(ErrorCode::kMalformedInput, "subset entries are 1-based indices, got '" + item + "'");
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const TolerancePolicy policy = policy_of(o);
  const GeneratorSpec spec = load_spec(o, policy);
  const ClosureReport report = spec.visit([&](auto gens) {
    using Op = typename decltype(gens)::value_type;
    return analyze<Op>(gens, caps_of(o), policy);
  });
  Json j = report_to_json(report);
  j["qubits"] = spec.qubit_count();
  j["backend"] = spec.is_pauli() ? "pauli" : "dense";
  if (!spec.family_tag().empty()) j["family"] = spec.family_tag();
  if (o.cyclic) j["cyclicity"] = cyclicity_to_json(detect_cyclic(spec, kDefaultExtensionLength, policy));
  emit(j, o, out);
  err << "dim_g=" << report.dim_g << " dim_gg=" << report.dim_gg
      << " dim_center=" << report.dim_center << (report.capped ? " (capped)" : "") << "\n";
  return report.capped ? kExitCapped : kExitOk;
}

int cmd_extend(const Options& o, std::ostream& out, std::ostream& err) {
  const TolerancePolicy policy = policy_of(o);
  const GeneratorSpec spec = load_spec(o, policy);
  const auto chi = aux_operator(o, std::nullopt, policy);
  if (!chi) fail(ErrorCode::kMalformedInput, "extend needs --chi-spectrum or --k");
  GeneratorSpec result;
  Json meta = Json::object();
  meta["mode"] = o.mode;
  meta["chi_spectrum"] = Json::array();
  for (double v : o.chi_spectrum) meta["chi_spectrum"].push_back(format_coefficient(v));
  meta["style"] = o.style;
  meta["seed"] = o.seed;
  if (o.mode == "naive") {
    const std::size_t q = o.q.value_or(distinct_eigenvalue_count(*chi, policy));
    result = extend_naive(spec, *chi, q, policy);
    meta["q"] = q;
  } else if (o.mode == "subset") {
    const auto subset = parse_subset(o.subset, spec.size());
    result = extend_subset(spec, *chi, subset, policy);
    meta["subset"] = o.subset;
  } else if (o.mode == "tensor-q") {
    result = tensor_q(spec, *chi, {}, policy);
  } else {
    fail(ErrorCode::kMalformedInput, "unknown --mode '" + o.mode + "' (naive, subset, tensor-q)");
  }
  meta["family"] = result.family_tag();
  emit(spec_to_json(result, meta), o, out);
  err << "extended " << spec.size() << " -> " << result.size() << " generators on "
      << result.qubit_count() << " qubits\n";
  return kExitOk;
}

int cmd_graph(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.graph.empty()) fail(ErrorCode::kMalformedInput, "graph needs --graph");
  const Graph g = load_graph(o.graph);
  const QaoaFamily family = parse_qaoa_family(o.family);
  const GeneratorSpec spec = qaoa_generators(g, family);
  Json meta = Json::object();
  meta["family"] = std::string(to_string(family));
  meta["graph"] = graph_to_json(g);
  emit(spec_to_json(spec, meta), o, out);
  err << to_string(family) << " generators on " << g.vertices << " qubits\n";
  return kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const TolerancePolicy policy = policy_of(o);
  const auto h = aux_operator(o, std::nullopt, policy);
  if (!h) fail(ErrorCode::kMalformedInput, "spectrum needs --chi-spectrum or --k");
  const SpectralDecomposition d = hermitian_eig(*h, policy);
  Json j = spectrum_to_json(d);
  j["dimension"] = h->dim();
  j["sign_unambiguous"] = sign_unambiguous(*h, policy);
  if (o.stride) {
    const PowerSpanResult ps = power_span_check(d, 1, *o.stride, policy);
    j["power_span"] = {{"offset", 1},
                       {"stride", *o.stride},
                       {"spans", ps.spans},
                       {"condition", ps.condition}};
  }
  emit(j, o, out);
  err << d.size() << " distinct eigenvalues\n";
  return kExitOk;
}

std::vector<VerifyRequest> sweep_requests(const Options& o, TheoremId id,
                                          const TolerancePolicy& policy) {
  std::mt19937_64 rng(o.seed);
  std::vector<VerifyRequest> reqs;
  const auto chi = aux_operator(o, std::nullopt, policy);
  auto base_request = [&](GeneratorSpec spec) {
    VerifyRequest r;
    r.theorem = id;
    r.spec = std::move(spec);
    r.aux = chi;
    r.caps = caps_of(o);
    r.policy = policy;
    return r;
  };
  for (std::size_t s = 0; s < o.sweep; ++s) {
    switch (id) {
      case TheoremId::kThm3: {
        const std::size_t qubits = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
        const std::size_t count = std::uniform_int_distribution<std::size_t>(3, 5)(rng);
        const GeneratorSpec spec =
            GeneratorSpec::from_pauli(random_connected_pauli_set(qubits, count, rng), "random", policy);
        for (std::size_t i = 0; i < spec.size(); ++i) {
          VerifyRequest r = base_request(spec);
          r.index = i;
          reqs.push_back(std::move(r));
        }
        break;
      }
      case TheoremId::kThm4: {
        const std::size_t qubits = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
        VerifyRequest r = base_request(
            GeneratorSpec::from_pauli(random_two_generator_set(qubits, rng), "random", policy));
        r.index = o.index.value_or(0);
        reqs.push_back(std::move(r));
        break;
      }
      case TheoremId::kThm8Identity: {
        const std::size_t qubits = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        PauliTerm a = random_pauli_term(qubits, rng);
        PauliTerm b = random_pauli_term(qubits, rng);
        while (b == a) b = random_pauli_term(qubits, rng);
        reqs.push_back(base_request(GeneratorSpec::from_pauli(
            {PauliCombination::from_term(a), PauliCombination::from_term(b)}, "random", policy)));
        break;
      }
      default:
        fail(ErrorCode::kMalformedInput, "--sweep is supported for thm3, thm4 and thm8-identity");
    }
  }
  return reqs;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.theorem.empty()) fail(ErrorCode::kMalformedInput, "verify needs --theorem");
  const TheoremId id = parse_theorem_id(o.theorem);
  const TolerancePolicy policy = policy_of(o);

  std::vector<VerifyRequest> reqs;
  if (o.sweep > 0) {
    reqs = sweep_requests(o, id, policy);
  } else {
    VerifyRequest r;
    r.theorem = id;
    r.spec = load_spec(o, policy);
    r.aux = aux_operator(o, std::nullopt, policy);
    r.index = o.index.value_or(0);
    r.q_powers = o.q;
    r.caps = caps_of(o);
    r.policy = policy;
    // thm3 without --index checks every single-index extension.
    if (id == TheoremId::kThm3 && !o.index) {
      for (std::size_t i = 0; i < r.spec.size(); ++i) {
        VerifyRequest ri = r;
        ri.index = i;
        reqs.push_back(std::move(ri));
      }
    } else {
      reqs.push_back(std::move(r));
    }
  }

  Json list = Json::array();
  std::size_t passed = 0, failed = 0, other = 0;
  for (const VerifyRequest& r : reqs) {
    const TheoremVerdict v = verify_theorem(r);
    list.push_back(verdict_to_json(v, !o.no_timings));
    if (v.status == VerdictStatus::kPass) ++passed;
    else if (v.status == VerdictStatus::kFail) ++failed;
    else ++other;
  }
  emit(list, o, out);
  err << o.theorem << ": " << passed << " pass, " << failed << " fail, " << other
      << " not-applicable/ambiguous of " << reqs.size() << "\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--tol", o.tol, "Relative rank threshold for span decisions");
  app->add_option("--max-dim", o.max_dim, "Closure dimension cap (0: ambient bound)");
  app->add_option("--max-rounds", o.max_rounds, "Closure round cap");
  app->add_option("--seed", o.seed, "Seed for random spectra and sweeps");
  app->add_option("--out", o.out_path, "Write JSON here instead of stdout");
}

void add_inputs(CLI::App* app, Options& o) {
  app->add_option("--spec", o.spec_path, "Generator spec JSON file");
  app->add_option("--graph", o.graph, "Graph name (cycle4, complete3, path5) or graph JSON file");
  app->add_option("--family", o.family, "QAOA family for --graph: maxcut | sn_equivariant");
  app->add_option("--base", o.base, "Built-in base set: pauli-xz | pauli-x1-z12");
}

void add_aux(CLI::App* app, Options& o) {
  app->add_option("--chi-spectrum", o.chi_spectrum, "Eigenvalues of chi / Q, comma separated")
      ->delimiter(',')
      ->allow_extra_args(false);
  app->add_option("--k", o.k, "Use chi = diag(1..K)");
  app->add_option("--style", o.style, "diagonal | random (random unitary conjugation)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dynamical Lie algebra closures, constructions and checks", "dla"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Closure report for a generator set");
  add_common(analyze, o);
  add_inputs(analyze, o);
  analyze->add_flag("--cyclic", o.cyclic, "Include the cyclicity search");

  auto* extend = app.add_subcommand("extend", "Emit a modified generator set");
  add_common(extend, o);
  add_inputs(extend, o);
  add_aux(extend, o);
  extend->add_option("--mode", o.mode, "naive | subset | tensor-q")->required();
  extend->add_option("--subset", o.subset, "1-based indices (e.g. 1,3) or 'all'");
  extend->add_option("--q", o.q, "Number of chi powers for naive mode");

  auto* verify = app.add_subcommand("verify", "Check a theorem's prediction");
  add_common(verify, o);
  add_inputs(verify, o);
  add_aux(verify, o);
  verify->add_option("--theorem", o.theorem, "thm1..thm5, lemma7, thm8-identity")->required();
  verify->add_option("--sweep", o.sweep, "Number of seeded random inputs");
  verify->add_option("--q", o.q, "thm1: number of chi powers");
  verify->add_option("--index", o.index, "thm3/thm4: extended generator (0-based)");
  verify->add_flag("--no-timings", o.no_timings, "Omit timing fields");

  auto* graph = app.add_subcommand("graph", "Emit M_G or S_G generators for a graph");
  add_common(graph, o);
  graph->add_option("--graph", o.graph, "Graph name or graph JSON file")->required();
  graph->add_option("--family", o.family, "maxcut | sn_equivariant");

  auto* spectrum = app.add_subcommand("spectrum", "Inspect a chi / Q operator");
  add_common(spectrum, o);
  add_aux(spectrum, o);
  spectrum->add_option("--stride", o.stride, "Also test spanning by powers Q^{1+tM}, M = stride");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  try {
    if (*analyze) return cmd_analyze(o, out, err);
    if (*extend) return cmd_extend(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*graph) return cmd_graph(o, out, err);
    if (*spectrum) return cmd_spectrum(o, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace dla::cli
