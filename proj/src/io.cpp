#include "tracesys/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "tracesys/error.hpp"

namespace tracesys::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object with field '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw SchemaError(std::string(what) + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string string_field(const Json& j, const char* key) {
  const Json& x = field(j, key);
  if (!x.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return x.get<std::string>();
}

std::vector<Clique> clique_list(const TraceMonoid& m, const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of cliques");
  std::vector<Clique> out;
  for (const auto& c : j) {
    const Clique q = m.clique_of(string_list(c, what));
    if (!m.is_clique(q)) throw SchemaError(std::string(what) + ": " + m.format(q) + " is not a clique");
    out.push_back(q);
  }
  return out;
}

Rational rational_value(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  // dump() gives the shortest round-trip text, so 0.1 reads as 1/10
  if (j.is_number()) return parse_rational(j.dump());
  throw SchemaError("weight values must be strings or numbers");
}

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

TraceMonoid monoid_from_json(const Json& j) {
  const auto letters = string_list(field(j, "alphabet"), "alphabet");
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("independence")) {
    const Json& ind = j["independence"];
    if (!ind.is_array()) throw SchemaError("independence must be an array of pairs");
    for (const auto& p : ind) {
      const auto pair = string_list(p, "independence pair");
      if (pair.size() != 2) throw SchemaError("independence pairs must have two letters");
      pairs.emplace_back(pair[0], pair[1]);
    }
  }
  return TraceMonoid::build(letters, pairs);
}

Json to_json(const TraceMonoid& m) {
  Json pairs = Json::array();
  for (const auto& [a, b] : m.independence_pairs()) pairs.push_back({m.name(a), m.name(b)});
  return Json{{"alphabet", m.letters()}, {"independence", pairs}};
}

Trace trace_from_json(const TraceMonoid& m, const Json& j) {
  return m.make_trace(clique_list(m, field(j, "layers"), "layers"));
}

Json to_json(const TraceMonoid& m, const Trace& x) {
  Json layers = Json::array();
  for (Clique c : x.layers()) layers.push_back(m.names_of(c));
  return Json{{"layers", layers}};
}

Lasso lasso_from_json(const TraceMonoid& m, const Json& j) {
  Lasso w{clique_list(m, field(j, "prefix"), "prefix"), clique_list(m, field(j, "cycle"), "cycle")};
  m.validate(w);
  return w;
}

Json to_json(const TraceMonoid& m, const Lasso& w) {
  Json prefix = Json::array();
  Json cycle = Json::array();
  for (Clique c : w.prefix) prefix.push_back(m.names_of(c));
  for (Clique c : w.cycle) cycle.push_back(m.names_of(c));
  return Json{{"prefix", prefix}, {"cycle", cycle}};
}

ConcurrentSystem system_from_json(const Json& j) {
  if (j.is_object() && !j.contains("states") && j.contains("alphabet")) {
    return ConcurrentSystem::single_state(monoid_from_json(j));
  }
  TraceMonoid m = monoid_from_json(field(j, "monoid"));
  auto states = string_list(field(j, "states"), "states");
  std::vector<ActionEntry> action;
  const Json& act = field(j, "action");
  if (!act.is_array()) throw SchemaError("action must be an array");
  for (const auto& e : act) {
    action.push_back({string_field(e, "from"), string_field(e, "letter"), string_field(e, "to")});
  }
  return ConcurrentSystem::build(std::move(m), std::move(states), action);
}

Json to_json(const ConcurrentSystem& s) {
  Json action = Json::array();
  for (const auto& [from, a, to] : s.transitions()) {
    action.push_back(Json{{"from", s.state_name(from)}, {"letter", s.monoid().name(a)}, {"to", s.state_name(to)}});
  }
  return Json{{"schema_version", kSchemaVersion}, {"monoid", to_json(s.monoid())}, {"states", s.states()}, {"action", action}};
}

PetriNet petri_from_json(const Json& j) {
  PetriNet net;
  net.places = string_list(field(j, "places"), "places");
  const Json& ts = field(j, "transitions");
  if (!ts.is_array()) throw SchemaError("transitions must be an array");
  std::set<std::string> names;
  for (const auto& t : ts) {
    PetriNet::Transition tr{string_field(t, "name"), string_list(field(t, "pre"), "pre"),
                            string_list(field(t, "post"), "post")};
    if (!names.insert(tr.name).second) throw SchemaError("duplicate transition '" + tr.name + "'");
    net.transitions.push_back(std::move(tr));
  }
  net.initial = string_list(field(j, "initial"), "initial");
  return net;
}

std::vector<WeightEntry> weights_from_json(const Json& j) {
  const Json& ws = field(j, "weights");
  if (!ws.is_array()) throw SchemaError("weights must be an array");
  std::vector<WeightEntry> out;
  for (const auto& w : ws) out.push_back({string_field(w, "state"), string_field(w, "letter"), rational_value(field(w, "value"))});
  return out;
}

Json to_json(const Valuation& v) {
  const auto& s = v.system();
  Json ws = Json::array();
  for (const auto& [from, a, to] : s.transitions()) {
    Json e{{"state", s.state_name(from)}, {"letter", s.monoid().name(a)}};
    e["value"] = v.is_exact() ? to_string(v.exact_weight(from, a)) : to_decimal(v.weight(from, a));
    ws.push_back(e);
  }
  return Json{{"schema_version", kSchemaVersion}, {"weights", ws}};
}

Json clique_json(const TraceMonoid& m, Clique c) { return m.format(c); }

Json node_json(const ConcurrentSystem& s, const SCDigraph::Node& n) {
  return Json::array({s.state_name(n.state), clique_json(s.monoid(), n.clique)});
}

Json to_json(const Polynomial& p) { return p.to_strings(); }

Json to_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json number_json(double x, const std::optional<Rational>& exact) {
  Json j{{"decimal", to_decimal(x)}};
  if (exact) j["exact"] = to_string(*exact);
  return j;
}

std::optional<std::string> quadratic_surd(const RootResult& r) {
  if (r.infinite || r.exact || r.defining.degree() != 2) return std::nullopt;
  BigInt den = 1;
  for (int k = 0; k <= 2; ++k) den = lcm(den, r.defining.coeff(k).get_den());
  const BigInt c = Rational(r.defining.coeff(0) * den).get_num();
  const BigInt b = Rational(r.defining.coeff(1) * den).get_num();
  const BigInt a = Rational(r.defining.coeff(2) * den).get_num();
  BigInt disc = b * b - 4 * a * c;
  if (disc <= 0) return std::nullopt;
  // disc = k^2 d with d square-free (trial division on small factors)
  BigInt k = 1;
  for (unsigned long p = 2; p < 100000 && BigInt(p) * p <= disc; ++p) {
    while (disc % (p * p) == 0) {
      disc /= p * p;
      k *= p;
    }
  }
  if (disc == 1) return std::nullopt;
  const double sq = std::sqrt(disc.get_d()) * k.get_d();
  const double minus = (-b.get_d() - sq) / (2 * a.get_d());
  const double plus = (-b.get_d() + sq) / (2 * a.get_d());
  const bool use_minus = std::abs(minus - r.value) <= std::abs(plus - r.value);
  // root = (P + sign Q sqrt(d)) / R
  BigInt P = -b;
  BigInt Q = k;
  BigInt R = 2 * a;
  if (!use_minus) Q = -Q;  // stored as P - Q sqrt(d)
  if (R < 0) {
    P = -P;
    Q = -Q;
    R = -R;
  }
  BigInt g = gcd(gcd(P, Q), R);
  if (g != 0) {
    P /= g;
    Q /= g;
    R /= g;
  }
  std::string surd = (abs(Q) == 1 ? std::string() : to_string(BigInt(abs(Q))) + "*") + "sqrt(" + to_string(disc) + ")";
  std::string out;
  if (P == 0) {
    out = (Q > 0 ? "-" : "") + surd;
  } else {
    out = to_string(P) + (Q > 0 ? " - " : " + ") + surd;
  }
  if (R != 1) out = "(" + out + ")/" + to_string(R);
  return out;
}

Json to_json(const RootResult& r) {
  Json j;
  j["infinite"] = r.infinite;
  if (r.infinite) {
    j["decimal"] = "inf";
    return j;
  }
  j["decimal"] = to_decimal(r.value);
  j["exact"] = r.exact ? Json(to_string(*r.exact)) : Json(nullptr);
  if (const auto surd = quadratic_surd(r)) j["closed_form"] = *surd;
  j["defining_polynomial"] = to_json(r.defining);
  j["bracket"] = Json::array({to_string(r.lower), to_string(r.upper)});
  j["residual"] = to_decimal(r.residual);
  j["minimal_modulus_confirmed"] = r.minimal_modulus_confirmed;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

Json to_json(const SystemClassification& c) {
  return Json{{"trivial", c.trivial},
              {"homogeneous", c.homogeneous},
              {"alive", c.alive},
              {"monoid_irreducible", c.monoid_irreducible},
              {"irreducible", c.irreducible}};
}

Json to_json(const ConcurrentSystem& s, const UniformMeasure& u, const NumericPolicy& policy) {
  Json j;
  j["root"] = to_json(u.root);
  Json v = Json::array();
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    v.push_back(number_json(u.v[i], u.exact_v ? std::optional<Rational>((*u.exact_v)[i]) : std::nullopt));
  }
  j["kernel_vector"] = v;
  Json gamma = Json::object();
  for (State a = 0; a < s.size(); ++a) {
    Json row = Json::object();
    for (State b = 0; b < s.size(); ++b) row[s.state_name(b)] = number_json(u.gamma(a, b), u.exact_gamma(a, b));
    gamma[s.state_name(a)] = row;
  }
  j["parry_cocycle"] = gamma;
  Json laws = Json::object();
  for (State st = 0; st < s.size(); ++st) {
    const auto law = first_clique_distribution(u.valuation, st, policy);
    Json entries = Json::array();
    for (std::size_t i = 0; i < law.cliques.size(); ++i) {
      Json e = number_json(law.probability[i], law.exact ? std::optional<Rational>((*law.exact)[i]) : std::nullopt);
      e["clique"] = clique_json(s.monoid(), law.cliques[i]);
      entries.push_back(e);
    }
    laws[s.state_name(st)] = entries;
  }
  j["first_clique_laws"] = laws;
  Json nulls = Json::array();
  for (const auto& n : null_nodes(u.valuation, policy)) nulls.push_back(node_json(s, n));
  j["null_nodes"] = nulls;
  return j;
}

Json to_json(const ConcurrentSystem& s, const MarkovChain& chain) {
  Json nodes = Json::array();
  for (const auto& n : chain.graph.nodes) nodes.push_back(node_json(s, n));
  Json initial = Json::object();
  for (State st = 0; st < s.size(); ++st) {
    Json law = Json::array();
    for (const auto& [i, p] : chain.initial[static_cast<std::size_t>(st)]) law.push_back(Json{{"node", i}, {"p", to_decimal(p)}});
    initial[s.state_name(st)] = law;
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < chain.graph.nodes.size(); ++i) {
    Json entries = Json::array();
    for (const auto& [j, p] : chain.rows[i]) entries.push_back(Json{{"node", j}, {"p", to_decimal(p)}});
    rows.push_back(Json{{"node", i}, {"terminal", static_cast<bool>(chain.terminal[i])}, {"entries", entries}});
  }
  return Json{{"nodes", nodes}, {"initial", initial}, {"rows", rows}};
}

Json to_json(const ConcurrentSystem& s, const SpectralReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"letter", s.monoid().name(e.letter)}, {"root", to_json(e.root)}, {"strict", e.strict}});
  }
  return Json{{"root", to_json(r.root)}, {"restrictions", entries}, {"all_strict", r.all_strict}};
}

Json to_json(const ConcurrentSystem& s, const ExecutionLasso& t) {
  Json prefix = Json::array();
  Json cycle = Json::array();
  for (const auto& n : t.prefix) prefix.push_back(node_json(s, n));
  for (const auto& n : t.cycle) cycle.push_back(node_json(s, n));
  return Json{{"prefix", prefix}, {"cycle", cycle}};
}

Json to_json(const ConcurrentSystem& s, const DcsReport& r) {
  Json j;
  j["irreducible"] = r.irreducible;
  Json det{{"value", r.deterministic.deterministic}};
  if (!r.deterministic.deterministic) det["witness"] = r.deterministic.witness;
  Json unique{{"value", r.dominant_unique ? Json(*r.dominant_unique) : Json(nullptr)},
              {"status", r.dominant_unique ? "implied by the other conditions" : "not decided"}};
  j["conditions"] = Json{{"deterministic", det},
                         {"dominant_probabilistic", r.dominant_probabilistic},
                         {"dominant_unique", unique},
                         {"root_is_one", r.root_is_one},
                         {"some_boundary_countable", r.some_countable},
                         {"every_boundary_countable", r.every_countable},
                         {"some_boundary_singleton", r.some_singleton},
                         {"every_boundary_singleton", r.every_singleton}};
  j["root"] = to_json(r.root);
  Json boundary = Json::object();
  for (State st = 0; st < s.size(); ++st) {
    const auto& b = r.boundary[static_cast<std::size_t>(st)];
    boundary[s.state_name(st)] = Json{{"class", to_string(b.cls)}, {"singleton", b.singleton}};
  }
  j["boundary"] = boundary;
  if (r.deterministic.deterministic) {
    Json maxima = Json::object();
    for (State st = 0; st < s.size(); ++st) maxima[s.state_name(st)] = to_json(s, max_execution(s, st));
    j["maximal_executions"] = maxima;
  }
  j["consistent"] = r.consistent ? Json(*r.consistent) : Json(nullptr);
  return j;
}

}  // namespace tracesys::io
