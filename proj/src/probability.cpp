#include "tracesys/probability.hpp"

#include <cmath>
#include <map>
#include <random>

#include "tracesys/combinatorics.hpp"
#include "tracesys/error.hpp"

namespace tracesys {

namespace {

template <class T>
void check_shape(const ConcurrentSystem& s, const std::vector<std::vector<T>>& w) {
  if (w.size() != static_cast<std::size_t>(s.size())) throw SchemaError("valuation needs one weight row per state");
  for (const auto& row : w) {
    if (row.size() != static_cast<std::size_t>(s.monoid().size())) {
      throw SchemaError("valuation needs one weight per letter");
    }
  }
}

template <class T>
void check_support(const ConcurrentSystem& s, const std::vector<std::vector<T>>& w) {
  const auto& m = s.monoid();
  for (State st = 0; st < s.size(); ++st) {
    for (Letter a = 0; a < m.size(); ++a) {
      const T& x = w[static_cast<std::size_t>(st)][static_cast<std::size_t>(a)];
      if (x < 0) {
        throw ValidationError("negative weight for letter '" + m.name(a) + "' at state '" + s.state_name(st) + "'",
                              s.state_name(st) + ", " + m.name(a));
      }
      if (s.act(st, a) == kBottom && x != 0) {
        throw ValidationError("nonzero weight for letter '" + m.name(a) + "', disabled at state '" +
                                  s.state_name(st) + "'",
                              s.state_name(st) + ", " + m.name(a));
      }
    }
  }
}

template <class T>
T step_weight(const std::vector<std::vector<T>>& w, State st, Letter a) {
  if (st == kBottom) return T(0);
  return w[static_cast<std::size_t>(st)][static_cast<std::size_t>(a)];
}

// f_s(a) f_{s.a}(b) - f_s(b) f_{s.b}(a)
template <class T>
T coherence_defect(const ConcurrentSystem& s, const std::vector<std::vector<T>>& w, State st, Letter a, Letter b) {
  const T ab = step_weight(w, st, a) * step_weight(w, s.act(st, a), b);
  const T ba = step_weight(w, st, b) * step_weight(w, s.act(st, b), a);
  return ab - ba;
}

[[noreturn]] void coherence_failure(const ConcurrentSystem& s, State st, Letter a, Letter b, const std::string& defect) {
  const auto& m = s.monoid();
  throw ValidationError("valuation is not coherent at state '" + s.state_name(st) + "' for the independent letters " +
                            m.name(a) + ", " + m.name(b) + " (defect " + defect + ")",
                        s.state_name(st) + ", " + m.name(a) + ", " + m.name(b));
}

template <class T>
std::vector<T> clique_values(const ConcurrentSystem& s, State st, const std::vector<std::vector<T>>& w) {
  const auto& cl = s.monoid().cliques();
  std::vector<T> f(cl.size(), T(0));
  for (std::size_t i = 0; i < cl.size(); ++i) {
    T value(1);
    State cur = st;
    for (Letter a : cl[i].letters()) {
      value *= step_weight(w, cur, a);
      cur = s.act(cur, a);
    }
    f[i] = cur == kBottom ? T(0) : value;
  }
  return f;
}

template <class T>
std::vector<std::vector<T>> table_of(const Valuation& v, T (*get)(const Valuation&, State, Letter)) {
  const auto& s = v.system();
  std::vector<std::vector<T>> w(static_cast<std::size_t>(s.size()), std::vector<T>(static_cast<std::size_t>(s.monoid().size())));
  for (State st = 0; st < s.size(); ++st) {
    for (Letter a = 0; a < s.monoid().size(); ++a) w[static_cast<std::size_t>(st)][static_cast<std::size_t>(a)] = get(v, st, a);
  }
  return w;
}

std::vector<std::vector<double>> double_table(const Valuation& v) {
  return table_of<double>(v, [](const Valuation& x, State st, Letter a) { return x.weight(st, a); });
}

std::vector<std::vector<Rational>> exact_table(const Valuation& v) {
  return table_of<Rational>(v, [](const Valuation& x, State st, Letter a) { return x.exact_weight(st, a); });
}

std::string describe(const ConcurrentSystem& s, const ProbabilisticWitness& w) {
  const std::string clique = w.clique.empty() ? std::string("ε") : s.monoid().format(w.clique);
  return s.state_name(w.state) + ", " + clique + ", " + to_decimal(w.value);
}

void require_probabilistic(const Valuation& v, const NumericPolicy& policy) {
  const auto verdict = is_probabilistic(v, policy);
  if (verdict.probabilistic) return;
  const auto& w = verdict.witnesses.front();
  throw NotProbabilisticError(
      std::string("valuation is not probabilistic: ") +
          (w.clique.empty() ? "h(ε) = " : "h(" + v.system().monoid().format(w.clique) + ") = ") +
          to_decimal(w.value) + " at state '" + v.system().state_name(w.state) + "'",
      describe(v.system(), w));
}

}  // namespace

Valuation build_valuation(const ConcurrentSystem& s, const std::vector<std::vector<double>>& weights,
                          const NumericPolicy& policy) {
  check_shape(s, weights);
  for (const auto& row : weights) {
    for (double x : row) {
      if (!std::isfinite(x)) throw ValidationError("weights must be finite", to_decimal(x));
    }
  }
  check_support(s, weights);
  for (State st = 0; st < s.size(); ++st) {
    for (const auto& [a, b] : s.monoid().independence_pairs()) {
      const double d = coherence_defect(s, weights, st, a, b);
      if (std::abs(d) > policy.coherence) coherence_failure(s, st, a, b, to_decimal(d));
    }
  }
  Valuation v;
  v.system_ = std::make_shared<const ConcurrentSystem>(s);
  for (const auto& row : weights) v.weights_.insert(v.weights_.end(), row.begin(), row.end());
  return v;
}

Valuation build_valuation(const ConcurrentSystem& s, const std::vector<std::vector<Rational>>& input,
                          const NumericPolicy&) {
  check_shape(s, input);
  auto weights = input;
  for (auto& row : weights) {
    for (auto& x : row) x.canonicalize();
  }
  check_support(s, weights);
  for (State st = 0; st < s.size(); ++st) {
    for (const auto& [a, b] : s.monoid().independence_pairs()) {
      const Rational d = coherence_defect(s, weights, st, a, b);
      if (d != 0) coherence_failure(s, st, a, b, to_string(d));
    }
  }
  Valuation v;
  v.system_ = std::make_shared<const ConcurrentSystem>(s);
  v.exact_.emplace();
  for (const auto& row : weights) {
    for (const Rational& x : row) {
      v.weights_.push_back(x.get_d());
      v.exact_->push_back(x);
    }
  }
  return v;
}

Valuation build_valuation(const ConcurrentSystem& s, const std::vector<WeightEntry>& entries,
                          const NumericPolicy& policy) {
  std::vector<std::vector<Rational>> w(static_cast<std::size_t>(s.size()),
                                       std::vector<Rational>(static_cast<std::size_t>(s.monoid().size()), Rational(0)));
  std::vector<std::vector<bool>> seen(w.size(), std::vector<bool>(static_cast<std::size_t>(s.monoid().size()), false));
  for (const auto& e : entries) {
    const auto st = static_cast<std::size_t>(s.state(e.state));
    const auto a = static_cast<std::size_t>(s.monoid().letter(e.letter));
    if (seen[st][a]) throw SchemaError("duplicate weight for state '" + e.state + "' and letter '" + e.letter + "'");
    seen[st][a] = true;
    w[st][a] = e.value;
  }
  return build_valuation(s, w, policy);
}

double evaluate(const Valuation& v, State s, const Trace& x) {
  double value = 1;
  for (Letter a : x.word()) {
    if (s == kBottom) return 0;
    value *= v.weight(s, a);
    s = v.system().act(s, a);
  }
  return s == kBottom ? 0 : value;
}

std::optional<Rational> evaluate_exact(const Valuation& v, State s, const Trace& x) {
  if (!v.is_exact()) return std::nullopt;
  Rational value = 1;
  for (Letter a : x.word()) {
    if (s == kBottom) return Rational(0);
    value *= v.exact_weight(s, a);
    s = v.system().act(s, a);
  }
  return s == kBottom ? Rational(0) : value;
}

MobiusRow mobius_at(const Valuation& v, State s) {
  const auto& m = v.system().monoid();
  MobiusRow row;
  const auto f = clique_values(v.system(), s, double_table(v));
  row.h = mobius_transform<double>(m, f);
  if (v.is_exact()) {
    const auto fe = clique_values(v.system(), s, exact_table(v));
    row.exact = mobius_transform<Rational>(m, fe);
    for (std::size_t i = 0; i < row.h.size(); ++i) row.h[i] = (*row.exact)[i].get_d();
  }
  return row;
}

ProbabilisticVerdict is_probabilistic(const Valuation& v, const NumericPolicy& policy) {
  ProbabilisticVerdict verdict;
  const auto& s = v.system();
  const auto& m = s.monoid();
  for (State st = 0; st < s.size(); ++st) {
    const MobiusRow row = mobius_at(v, st);
    auto fails = [&](std::size_t i, bool at_empty) {
      if (row.exact) return at_empty ? (*row.exact)[i] != 0 : (*row.exact)[i] < 0;
      return at_empty ? std::abs(row.h[i]) > policy.probabilistic : row.h[i] < -policy.probabilistic;
    };
    if (fails(0, true)) verdict.witnesses.push_back({st, Clique{}, row.h[0]});
    for (Clique c : s.nonempty_cliques_at(st)) {
      const std::size_t i = m.clique_index(c);
      if (fails(i, false)) verdict.witnesses.push_back({st, c, row.h[i]});
    }
  }
  verdict.probabilistic = verdict.witnesses.empty();
  return verdict;
}

std::optional<Rational> UniformMeasure::exact_gamma(State s, State t) const {
  if (!exact_v) return std::nullopt;
  return (*exact_v)[static_cast<std::size_t>(t)] / (*exact_v)[static_cast<std::size_t>(s)];
}

UniformMeasure uniform_measure(const ConcurrentSystem& s, const NumericPolicy& policy) {
  const auto cls = classify(s);
  const bool single = s.size() == 1 && !cls.trivial;
  if (!cls.irreducible && !single) {
    throw AnalysisError("the uniform measure requires an irreducible system");
  }
  UniformMeasure u;
  u.root = characteristic_root(s);
  if (u.root.infinite) throw AnalysisError("characteristic root is infinite; no uniform measure");
  const PolyMatrix mu = mobius_matrix(s);
  const auto n = static_cast<std::size_t>(s.size());
  const auto& m = s.monoid();
  std::vector<std::vector<double>> wd(n, std::vector<double>(static_cast<std::size_t>(m.size()), 0.0));

  if (u.root.exact) {
    auto v = exact_kernel_vector(mu.eval(*u.root.exact));
    if (v[0] == 0) throw AnalysisError("kernel vector of mu(r) has a zero coordinate");
    const Rational first = v[0];
    for (auto& x : v) {
      x /= first;
      if (x <= 0) throw AnalysisError("kernel vector of mu(r) is not of constant sign");
    }
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(static_cast<std::size_t>(m.size()), Rational(0)));
    for (const auto& [from, a, to] : s.transitions()) {
      w[static_cast<std::size_t>(from)][static_cast<std::size_t>(a)] =
          *u.root.exact * v[static_cast<std::size_t>(to)] / v[static_cast<std::size_t>(from)];
    }
    for (const auto& x : v) u.v.push_back(x.get_d());
    u.exact_v = std::move(v);
    u.valuation = build_valuation(s, w, policy);
  } else {
    auto v = kernel_vector(mu.eval(static_cast<long double>(u.root.value)), policy.kernel);
    const double first = v[0];
    for (auto& x : v) {
      if (first == 0) throw AnalysisError("kernel vector of mu(r) has a zero coordinate");
      x /= first;
      if (!(x > policy.kernel)) throw AnalysisError("kernel vector of mu(r) is not of constant sign");
    }
    for (const auto& [from, a, to] : s.transitions()) {
      wd[static_cast<std::size_t>(from)][static_cast<std::size_t>(a)] =
          u.root.value * v[static_cast<std::size_t>(to)] / v[static_cast<std::size_t>(from)];
    }
    u.v = std::move(v);
    u.valuation = build_valuation(s, wd, policy);
  }
  const auto verdict = is_probabilistic(u.valuation, policy);
  if (!verdict.probabilistic) {
    throw AnalysisError("the valuation induced by the characteristic root is not probabilistic (" +
                        describe(s, verdict.witnesses.front()) + ")");
  }
  return u;
}

FirstCliqueLaw first_clique_distribution(const Valuation& v, State s, const NumericPolicy& policy) {
  require_probabilistic(v, policy);
  const auto row = mobius_at(v, s);
  const auto& m = v.system().monoid();
  FirstCliqueLaw law;
  if (row.exact) law.exact.emplace();
  for (Clique c : v.system().nonempty_cliques_at(s)) {
    const std::size_t i = m.clique_index(c);
    law.cliques.push_back(c);
    law.probability.push_back(row.h[i]);
    if (row.exact) law.exact->push_back((*row.exact)[i]);
  }
  return law;
}

MarkovChain markov_chain(const Valuation& v, const NumericPolicy& policy) {
  require_probabilistic(v, policy);
  const auto& s = v.system();
  const auto& m = s.monoid();
  MarkovChain chain;
  chain.graph = sc_digraph(s);
  const auto& g = chain.graph;
  std::vector<MobiusRow> rows;
  for (State st = 0; st < s.size(); ++st) rows.push_back(mobius_at(v, st));
  if (v.is_exact()) chain.exact_mass.emplace();
  for (const auto& node : g.nodes) {
    const auto& row = rows[static_cast<std::size_t>(node.state)];
    const std::size_t i = m.clique_index(node.clique);
    chain.mass.push_back(row.h[i]);
    if (row.exact) chain.exact_mass->push_back((*row.exact)[i]);
  }
  for (State st = 0; st < s.size(); ++st) {
    auto& init = chain.initial.emplace_back();
    for (std::size_t i : g.nodes_at(st)) init.emplace_back(i, chain.mass[i]);
  }
  chain.rows.resize(g.nodes.size());
  chain.terminal.assign(g.nodes.size(), false);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& next = g.successors[i];
    if (chain.exact_mass) {
      Rational total = 0;
      for (std::size_t j : next) total += (*chain.exact_mass)[j];
      if (total == 0) {
        chain.terminal[i] = true;
        continue;
      }
      for (std::size_t j : next) chain.rows[i].emplace_back(j, Rational((*chain.exact_mass)[j] / total).get_d());
    } else {
      double total = 0;
      for (std::size_t j : next) total += std::max(chain.mass[j], 0.0);
      if (total <= policy.null_node) {
        chain.terminal[i] = true;
        continue;
      }
      for (std::size_t j : next) chain.rows[i].emplace_back(j, std::max(chain.mass[j], 0.0) / total);
    }
  }
  return chain;
}

std::vector<SCDigraph::Node> null_nodes(const Valuation& v, const NumericPolicy& policy) {
  const auto& s = v.system();
  const auto& m = s.monoid();
  std::vector<SCDigraph::Node> out;
  for (State st = 0; st < s.size(); ++st) {
    const auto row = mobius_at(v, st);
    for (Clique c : s.nonempty_cliques_at(st)) {
      const std::size_t i = m.clique_index(c);
      const bool zero = row.exact ? (*row.exact)[i] == 0 : std::abs(row.h[i]) <= policy.null_node;
      if (zero) out.push_back({st, c});
    }
  }
  return out;
}

double cylinder_probability(const Valuation& v, State s, const Trace& x, const NumericPolicy& policy) {
  require_probabilistic(v, policy);
  return evaluate(v, s, x);
}

std::size_t draw(const std::vector<std::pair<std::size_t, double>>& law, double u) {
  double total = 0;
  for (const auto& [i, p] : law) total += p;
  const double target = u * total;
  double cum = 0;
  std::size_t last = law.front().first;
  for (const auto& [i, p] : law) {
    if (p <= 0) continue;
    cum += p;
    last = i;
    if (target < cum) return i;
  }
  return last;
}

SamplePath sample(const MarkovChain& chain, State s, int steps, std::uint64_t seed) {
  if (steps < 1) throw AnalysisError("sampling needs at least one step");
  const auto& init = chain.initial.at(static_cast<std::size_t>(s));
  double total = 0;
  for (const auto& [i, p] : init) total += p;
  if (init.empty() || !(total > 0)) throw AnalysisError("no infinite execution starts at this state");
  std::mt19937_64 gen(seed);
  SamplePath path;
  std::size_t node = draw(init, unit_uniform(gen()));
  path.nodes.push_back(chain.graph.nodes[node]);
  for (int k = 1; k < steps; ++k) {
    if (chain.terminal[node] || chain.rows[node].empty()) {
      path.stopped_at_terminal = true;
      break;
    }
    node = draw(chain.rows[node], unit_uniform(gen()));
    path.nodes.push_back(chain.graph.nodes[node]);
  }
  return path;
}

}  // namespace tracesys
