#include "tracesys/system.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tracesys/combinatorics.hpp"
#include "tracesys/error.hpp"

namespace tracesys {

ConcurrentSystem ConcurrentSystem::build(TraceMonoid m, std::vector<std::string> states,
                                         const std::vector<ActionEntry>& action) {
  ConcurrentSystem s;
  s.monoid_ = std::move(m);
  {
    std::set<std::string> seen;
    for (const auto& name : states) {
      if (name.empty()) throw SchemaError("empty state name");
      if (!seen.insert(name).second) throw SchemaError("duplicate state '" + name + "'");
    }
  }
  s.names_ = std::move(states);
  s.stride_ = static_cast<std::size_t>(s.monoid_.size());
  s.table_.assign(s.names_.size() * s.stride_, kBottom);
  for (const auto& e : action) {
    const State from = s.state(e.from);
    const Letter a = s.monoid_.letter(e.letter);
    const State to = s.state(e.to);
    State& slot = s.table_[static_cast<std::size_t>(from) * s.stride_ + static_cast<std::size_t>(a)];
    if (slot != kBottom) {
      throw SchemaError("duplicate action entry for state '" + e.from + "' and letter '" + e.letter + "'");
    }
    slot = to;
  }
  for (State st = 0; st < s.size(); ++st) {
    for (const auto& [a, b] : s.monoid_.independence_pairs()) {
      const State ab = s.act(s.act(st, a), b);
      const State ba = s.act(s.act(st, b), a);
      if (ab != ba) {
        auto show = [&](State x) { return x == kBottom ? std::string("⊥") : s.names_[static_cast<std::size_t>(x)]; };
        throw ValidationError("action is not coherent with the independence relation: from '" + s.state_name(st) +
                                  "', " + s.monoid_.name(a) + "·" + s.monoid_.name(b) + " leads to " + show(ab) +
                                  " but " + s.monoid_.name(b) + "·" + s.monoid_.name(a) + " leads to " + show(ba),
                              s.state_name(st) + ", " + s.monoid_.name(a) + ", " + s.monoid_.name(b));
      }
    }
  }
  s.derive();
  return s;
}

ConcurrentSystem ConcurrentSystem::single_state(TraceMonoid m) {
  std::vector<ActionEntry> action;
  for (const auto& l : m.letters()) action.push_back({"*", l, "*"});
  return build(std::move(m), {"*"}, action);
}

void ConcurrentSystem::derive() {
  enabled_.assign(names_.size(), Clique{});
  cliques_.assign(names_.size(), {});
  for (State st = 0; st < size(); ++st) {
    for (Letter a = 0; a < monoid_.size(); ++a) {
      if (act(st, a) != kBottom) enabled_[static_cast<std::size_t>(st)] = enabled_[static_cast<std::size_t>(st)].with(a);
    }
    for (Clique c : monoid_.cliques()) {
      if (c.subset_of(enabled_[static_cast<std::size_t>(st)]) && act(st, c) != kBottom) {
        cliques_[static_cast<std::size_t>(st)].push_back(c);
      }
    }
  }
}

std::optional<State> ConcurrentSystem::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<State>(i);
  }
  return std::nullopt;
}

State ConcurrentSystem::state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw SchemaError("unknown state '" + std::string(name) + "'");
}

State ConcurrentSystem::act(State s, std::span<const Letter> word) const {
  for (Letter a : word) {
    if (s == kBottom) break;
    s = act(s, a);
  }
  return s;
}

State ConcurrentSystem::act(State s, Clique c) const {
  for (std::uint32_t b = c.bits(); b != 0 && s != kBottom; b &= b - 1) s = act(s, std::countr_zero(b));
  return s;
}

std::span<const Clique> ConcurrentSystem::nonempty_cliques_at(State s) const {
  const auto& all = cliques_at(s);
  return std::span<const Clique>(all).subspan(1);
}

std::vector<Clique> ConcurrentSystem::cliques_between(State from, State to) const {
  std::vector<Clique> out;
  for (Clique c : cliques_at(from)) {
    if (act(from, c) == to) out.push_back(c);
  }
  return out;
}

std::vector<std::tuple<State, Letter, State>> ConcurrentSystem::transitions() const {
  std::vector<std::tuple<State, Letter, State>> out;
  for (State st = 0; st < size(); ++st) {
    for (Letter a = 0; a < monoid_.size(); ++a) {
      if (act(st, a) != kBottom) out.emplace_back(st, a, act(st, a));
    }
  }
  return out;
}

// ---- digraph of states-and-cliques --------------------------------------------

std::optional<std::size_t> SCDigraph::find(State s, Clique c) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].state == s && nodes[i].clique == c) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> SCDigraph::nodes_at(State s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].state == s) out.push_back(i);
  }
  return out;
}

SCDigraph sc_digraph(const ConcurrentSystem& s) {
  SCDigraph g;
  std::vector<std::size_t> first(static_cast<std::size_t>(s.size()) + 1, 0);
  for (State st = 0; st < s.size(); ++st) {
    first[static_cast<std::size_t>(st)] = g.nodes.size();
    for (Clique c : s.nonempty_cliques_at(st)) g.nodes.push_back({st, c});
  }
  first[static_cast<std::size_t>(s.size())] = g.nodes.size();
  g.successors.resize(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto [st, c] = g.nodes[i];
    const State to = s.act(st, c);
    for (std::size_t j = first[static_cast<std::size_t>(to)]; j < first[static_cast<std::size_t>(to) + 1]; ++j) {
      if (s.monoid().is_normal_pair(c, g.nodes[j].clique)) g.successors[i].push_back(j);
    }
  }
  return g;
}

// ---- classification -----------------------------------------------------------

namespace {

// reach[s][t]: t reachable from s by some execution (s itself included).
std::vector<std::vector<bool>> reachability(const ConcurrentSystem& s) {
  const auto n = static_cast<std::size_t>(s.size());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (State from = 0; from < s.size(); ++from) {
    auto& row = reach[static_cast<std::size_t>(from)];
    std::deque<State> todo{from};
    row[static_cast<std::size_t>(from)] = true;
    while (!todo.empty()) {
      const State st = todo.front();
      todo.pop_front();
      for (Letter a = 0; a < s.monoid().size(); ++a) {
        const State to = s.act(st, a);
        if (to != kBottom && !row[static_cast<std::size_t>(to)]) {
          row[static_cast<std::size_t>(to)] = true;
          todo.push_back(to);
        }
      }
    }
  }
  return reach;
}

}  // namespace

SystemClassification classify(const ConcurrentSystem& s) {
  SystemClassification c;
  c.trivial = true;
  for (State st = 0; st < s.size(); ++st) {
    if (!s.enabled_letters(st).empty()) c.trivial = false;
  }
  const auto reach = reachability(s);
  c.homogeneous = true;
  c.alive = true;
  const Clique all(s.monoid().full_mask());
  for (State from = 0; from < s.size(); ++from) {
    Clique seen;
    for (State to = 0; to < s.size(); ++to) {
      if (reach[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)]) {
        seen = seen | s.enabled_letters(to);
      } else {
        c.homogeneous = false;
      }
    }
    if (seen != all) c.alive = false;
  }
  c.monoid_irreducible = s.monoid().is_irreducible();
  c.irreducible = !c.trivial && c.homogeneous && c.alive && c.monoid_irreducible;
  return c;
}

// ---- Moebius matrix and roots ---------------------------------------------------

PolyMatrix mobius_matrix(const ConcurrentSystem& s) {
  const auto n = static_cast<std::size_t>(s.size());
  PolyMatrix mu(n);
  for (State from = 0; from < s.size(); ++from) {
    std::vector<std::vector<Rational>> coeffs(n, std::vector<Rational>(static_cast<std::size_t>(s.monoid().size()) + 1));
    for (Clique c : s.cliques_at(from)) {
      const State to = s.act(from, c);
      coeffs[static_cast<std::size_t>(to)][static_cast<std::size_t>(c.size())] += (c.size() % 2 == 0) ? 1 : -1;
    }
    for (std::size_t j = 0; j < n; ++j) mu.at(static_cast<std::size_t>(from), j) = Polynomial(std::move(coeffs[j]));
  }
  return mu;
}

Polynomial theta(const ConcurrentSystem& s) { return det(mobius_matrix(s)); }

RootResult characteristic_root(const ConcurrentSystem& s) { return smallest_positive_root(theta(s)); }

std::vector<IntMatrix> growth_matrix_counts(const ConcurrentSystem& s, int n) {
  return series_inverse_coeffs(mobius_matrix(s), n);
}

ConcurrentSystem restrict(const ConcurrentSystem& s, Clique removed) {
  TraceMonoid m = restrict_monoid(s.monoid(), removed);
  std::vector<ActionEntry> action;
  for (const auto& [from, a, to] : s.transitions()) {
    if (removed.contains(a)) continue;
    action.push_back({s.state_name(from), s.monoid().name(a), s.state_name(to)});
  }
  return ConcurrentSystem::build(std::move(m), s.states(), action);
}

SpectralReport spectral_check(const ConcurrentSystem& s, double margin) {
  SpectralReport report{characteristic_root(s), {}, true};
  for (Letter a = 0; a < s.monoid().size(); ++a) {
    SpectralEntry e{a, characteristic_root(restrict(s, Clique::of(a))), false};
    if (report.root.infinite) {
      e.strict = false;
    } else {
      e.strict = e.root.infinite || e.root.value > report.root.value + margin;
    }
    report.all_strict = report.all_strict && e.strict;
    report.entries.push_back(std::move(e));
  }
  return report;
}

// ---- Petri nets -------------------------------------------------------------------

PetriImport from_petri(const PetriNet& net, std::size_t max_markings) {
  std::map<std::string, int> place_index;
  for (const auto& p : net.places) {
    if (p.empty()) throw SchemaError("empty place name");
    if (!place_index.emplace(p, static_cast<int>(place_index.size())).second) {
      throw SchemaError("duplicate place '" + p + "'");
    }
  }
  auto to_set = [&](const std::vector<std::string>& names, const std::string& what) {
    std::vector<bool> set(net.places.size(), false);
    for (const auto& n : names) {
      const auto it = place_index.find(n);
      if (it == place_index.end()) throw SchemaError(what + " names unknown place '" + n + "'");
      set[static_cast<std::size_t>(it->second)] = true;
    }
    return set;
  };
  const std::size_t np = net.places.size();
  std::vector<std::vector<bool>> pre;
  std::vector<std::vector<bool>> post;
  std::vector<std::string> letters;
  for (const auto& t : net.transitions) {
    letters.push_back(t.name);
    pre.push_back(to_set(t.pre, "transition '" + t.name + "' pre-set"));
    post.push_back(to_set(t.post, "transition '" + t.name + "' post-set"));
  }
  std::vector<std::pair<Letter, Letter>> independence;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      bool disjoint = true;
      for (std::size_t p = 0; p < np && disjoint; ++p) {
        disjoint = !((pre[i][p] || post[i][p]) && (pre[j][p] || post[j][p]));
      }
      if (disjoint) independence.emplace_back(static_cast<Letter>(i), static_cast<Letter>(j));
    }
  }
  TraceMonoid m = TraceMonoid::build(letters, independence);

  auto show = [&](const std::vector<bool>& marking) {
    std::string out = "{";
    bool first = true;
    for (std::size_t p = 0; p < np; ++p) {
      if (!marking[p]) continue;
      if (!first) out += ",";
      out += net.places[p];
      first = false;
    }
    return out + "}";
  };

  std::map<std::vector<bool>, State> index;
  std::vector<std::vector<bool>> markings;
  std::vector<ActionEntry> action;
  std::vector<std::string> names;
  auto intern = [&](const std::vector<bool>& marking) {
    auto [it, inserted] = index.emplace(marking, static_cast<State>(markings.size()));
    if (inserted) {
      if (markings.size() >= max_markings) {
        throw AnalysisError("more than " + std::to_string(max_markings) + " reachable markings");
      }
      markings.push_back(marking);
      names.push_back("α" + std::to_string(markings.size() - 1));
    }
    return it->second;
  };
  intern(to_set(net.initial, "initial marking"));
  for (std::size_t k = 0; k < markings.size(); ++k) {
    const std::vector<bool> current = markings[k];
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
      bool enabled = true;
      for (std::size_t p = 0; p < np && enabled; ++p) enabled = !pre[t][p] || current[p];
      if (!enabled) continue;
      std::vector<bool> next(np);
      for (std::size_t p = 0; p < np; ++p) {
        const bool kept = current[p] && !pre[t][p];
        if (kept && post[t][p]) {
          throw UnsafeNetError("firing '" + net.transitions[t].name + "' from marking " + show(current) +
                                   " puts a second token in place '" + net.places[p] + "'",
                               show(current), net.transitions[t].name);
        }
        next[p] = kept || post[t][p];
      }
      const State to = intern(next);
      action.push_back({names[k], net.transitions[t].name, names[static_cast<std::size_t>(to)]});
    }
  }

  PetriImport out{ConcurrentSystem::build(std::move(m), names, action), {}};
  for (const auto& marking : markings) {
    std::vector<std::string> places;
    for (std::size_t p = 0; p < np; ++p) {
      if (marking[p]) places.push_back(net.places[p]);
    }
    out.markings.push_back(std::move(places));
  }
  return out;
}

}  // namespace tracesys
