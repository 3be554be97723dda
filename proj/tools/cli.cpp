#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>

#include "tracesys/dcs.hpp"
#include "tracesys/dot.hpp"
#include "tracesys/error.hpp"
#include "tracesys/io.hpp"

namespace tracesys::cli {

namespace {

using io::Json;

struct Options {
  double tol = -1;
  std::string format = "json";

  std::string analyze_path;
  bool uniform = false;
  bool dcs = false;
  bool spectral = false;
  int order = -1;

  std::string simulate_path;
  std::string state;
  int steps = 10;
  std::uint64_t seed = 0;
  std::string valuation = "uniform";

  std::string dot_path;
  std::string graph;
  std::string mark_null;

  std::string petri_path;
  std::string to_system;

  NumericPolicy policy() const {
    NumericPolicy p;
    if (tol >= 0) p.probabilistic = p.null_node = p.kernel = tol;
    return p;
  }
};

Json document() { return Json{{"schema_version", io::kSchemaVersion}}; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int fail(std::ostream& out, std::ostream& err, int code, const char* kind, const std::string& message,
         const Json& witness = nullptr) {
  Json j = document();
  j["error"] = Json{{"kind", kind}, {"message", message}};
  if (!witness.is_null()) j["error"]["witness"] = witness;
  emit(out, j);
  err << "error: " << message << '\n';
  return code;
}

ConcurrentSystem load_system(const std::string& path) { return io::system_from_json(io::read_file(path)); }

Valuation load_valuation(const ConcurrentSystem& s, const std::string& kind, const NumericPolicy& policy) {
  if (kind == "uniform") return uniform_measure(s, policy).valuation;
  if (kind == "dominant") return dominant_valuation(s);
  return build_valuation(s, io::weights_from_json(io::read_file(kind)), policy);
}

// Per-block failures are reported inside the block; the run still succeeds.
template <class F>
Json block(F&& f) {
  try {
    return f();
  } catch (const AnalysisError& e) {
    return Json{{"error", Json{{"kind", "analysis"}, {"message", e.what()}}}};
  } catch (const NotProbabilisticError& e) {
    return Json{{"error", Json{{"kind", "not_probabilistic"}, {"message", e.what()}, {"witness", e.witness()}}}};
  }
}

Json growth_json(const ConcurrentSystem& s, int order) {
  Json levels = Json::array();
  for (const auto& g : growth_matrix_counts(s, order)) {
    Json rows = Json::array();
    for (const auto& row : g) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      rows.push_back(r);
    }
    levels.push_back(rows);
  }
  return levels;
}

int analyze(const Options& o, std::ostream& out) {
  const auto s = load_system(o.analyze_path);
  const auto policy = o.policy();
  Json j = document();
  j["states"] = s.states();
  j["alphabet"] = s.monoid().letters();
  j["tolerances"] = Json{{"probabilistic", to_decimal(policy.probabilistic)},
                         {"null_node", to_decimal(policy.null_node)},
                         {"kernel", to_decimal(policy.kernel)},
                         {"spectral_margin", to_decimal(policy.spectral_margin)}};
  j["classification"] = io::to_json(classify(s));
  j["mobius_matrix"] = io::to_json(mobius_matrix(s));
  j["theta"] = io::to_json(theta(s));
  j["characteristic_root"] = block([&] { return io::to_json(characteristic_root(s)); });
  if (o.order >= 0) j["growth"] = growth_json(s, o.order);
  if (o.uniform) j["uniform"] = block([&] { return io::to_json(s, uniform_measure(s, policy), policy); });
  if (o.spectral) j["spectral"] = block([&] { return io::to_json(s, spectral_check(s, policy.spectral_margin)); });
  if (o.dcs) j["dcs"] = block([&] { return io::to_json(s, dcs_report(s, policy)); });
  emit(out, j);
  return kExitOk;
}

int simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto s = load_system(o.simulate_path);
  const auto policy = o.policy();
  const State start = o.state.empty() ? 0 : s.state(o.state);
  const auto v = load_valuation(s, o.valuation, policy);
  const auto verdict = is_probabilistic(v, policy);
  if (!verdict.probabilistic) {
    Json witnesses = Json::array();
    for (const auto& w : verdict.witnesses) {
      Json e{{"state", s.state_name(w.state)}, {"clique", io::clique_json(s.monoid(), w.clique)}, {"value", to_decimal(w.value)}};
      if (v.is_exact()) e["exact"] = to_string((*mobius_at(v, w.state).exact)[s.monoid().clique_index(w.clique)]);
      witnesses.push_back(e);
    }
    return fail(out, err, kExitNotProbabilistic, "not_probabilistic", "the valuation is not probabilistic", witnesses);
  }
  const auto chain = markov_chain(v, policy);
  const auto path = sample(chain, start, o.steps, o.seed);
  Json trajectory = Json::array();
  std::vector<Clique> layers;
  for (const auto& n : path.nodes) {
    trajectory.push_back(io::node_json(s, n));
    layers.push_back(n.clique);
  }
  Json j = document();
  j["state"] = s.state_name(start);
  j["steps"] = o.steps;
  j["seed"] = o.seed;
  j["valuation"] = o.valuation == "uniform" || o.valuation == "dominant" ? o.valuation : "file";
  j["trajectory"] = trajectory;
  j["stopped_at_terminal"] = path.stopped_at_terminal;
  j["end_state"] = s.state_name(s.act(start, s.monoid().make_trace(layers)));
  j["normal_form"] = io::to_json(s.monoid(), s.monoid().make_trace(layers));
  emit(out, j);
  return kExitOk;
}

int export_dot(const Options& o, std::ostream& out) {
  const auto s = load_system(o.dot_path);
  if (o.graph == "coxeter") {
    out << dot::coxeter(s.monoid());
  } else if (o.graph == "cliques") {
    out << dot::cliques(s.monoid());
  } else if (o.graph == "states") {
    out << dot::states(s);
  } else {
    std::vector<SCDigraph::Node> dashed;
    if (!o.mark_null.empty()) dashed = null_nodes(load_valuation(s, o.mark_null, o.policy()), o.policy());
    out << dot::sc(s, dashed);
  }
  return kExitOk;
}

int petri(const Options& o, std::ostream& out) {
  const auto net = io::petri_from_json(io::read_file(o.petri_path));
  const auto imported = from_petri(net);
  const auto& s = imported.system;
  Json markings = Json::object();
  for (State st = 0; st < s.size(); ++st) markings[s.state_name(st)] = imported.markings[static_cast<std::size_t>(st)];
  Json pairs = Json::array();
  for (const auto& [a, b] : s.monoid().independence_pairs()) pairs.push_back({s.monoid().name(a), s.monoid().name(b)});
  Json j = document();
  j["marking_count"] = s.size();
  j["markings"] = markings;
  j["independence"] = pairs;
  if (!o.to_system.empty()) {
    std::ofstream file(o.to_system);
    if (!file) throw SchemaError("cannot write '" + o.to_system + "'");
    file << io::to_json(s).dump(2) << '\n';
    j["written"] = o.to_system;
  } else {
    j["system"] = io::to_json(s);
  }
  emit(out, j);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Analysis of probabilistic concurrent systems over trace monoids", "tracesys"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "Tolerance for the probabilistic, null-node and kernel tests")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));

  auto* an = app.add_subcommand("analyze", "Analyze a system (or a monoid as a single-state system)");
  an->add_option("path", o.analyze_path)->required();
  an->add_flag("--uniform", o.uniform, "Uniform measure block");
  an->add_flag("--dcs", o.dcs, "Deterministic-system report");
  an->add_flag("--spectral", o.spectral, "Single-letter restriction roots");
  an->add_option("--order", o.order, "Growth matrices up to this length")->check(CLI::NonNegativeNumber);

  auto* sim = app.add_subcommand("simulate", "Sample a run of the Markov chain of states-and-cliques");
  sim->add_option("path", o.simulate_path)->required();
  sim->add_option("--state", o.state, "Start state (default: the first one)");
  sim->add_option("--steps", o.steps)->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed);
  sim->add_option("--valuation", o.valuation, "uniform, dominant, or a valuation JSON file");

  auto* dt = app.add_subcommand("export-dot", "Write a graph in DOT format");
  dt->add_option("path", o.dot_path)->required();
  dt->add_option("--graph", o.graph)->required()->check(CLI::IsMember({"coxeter", "states", "cliques", "sc"}));
  dt->add_option("--mark-null", o.mark_null, "Dash the null nodes of this valuation (uniform, dominant or file)");

  auto* pn = app.add_subcommand("petri", "Build the system of reachable markings of a safe net");
  pn->add_option("path", o.petri_path)->required();
  pn->add_option("--to-system", o.to_system, "Write the system JSON here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(out, err, kExitSchema, "usage", e.what());
  }

  try {
    if (an->parsed()) return analyze(o, out);
    if (sim->parsed()) return simulate(o, out, err);
    if (dt->parsed()) return export_dot(o, out);
    return petri(o, out);
  } catch (const SchemaError& e) {
    return fail(out, err, kExitSchema, "schema", e.what());
  } catch (const ValidationError& e) {
    return fail(out, err, kExitValidation, "validation", e.what(), e.witness());
  } catch (const NotProbabilisticError& e) {
    return fail(out, err, kExitNotProbabilistic, "not_probabilistic", e.what(), e.witness());
  } catch (const UnsafeNetError& e) {
    return fail(out, err, kExitUnsafe, "unsafe_net", e.what(),
                Json{{"marking", e.marking()}, {"transition", e.transition()}});
  } catch (const AnalysisError& e) {
    return fail(out, err, kExitAnalysis, "analysis", e.what());
  }
}

}  // namespace tracesys::cli
