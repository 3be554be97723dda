#include "tracesys/dcs.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "tracesys/combinatorics.hpp"
#include "tracesys/error.hpp"

namespace tracesys {

DeterminismVerdict is_deterministic(const ConcurrentSystem& s) {
  DeterminismVerdict v;
  const auto& m = s.monoid();
  for (State st = 0; st < s.size(); ++st) {
    const auto letters = s.enabled_letters(st).letters();
    for (std::size_t i = 0; i < letters.size(); ++i) {
      for (std::size_t j = i + 1; j < letters.size(); ++j) {
        if (m.independent(letters[i], letters[j])) continue;
        v.deterministic = false;
        v.state = st;
        v.dependent_pair = std::make_pair(letters[i], letters[j]);
        v.witness = s.state_name(st) + ", " + m.name(letters[i]) + ", " + m.name(letters[j]);
        return v;
      }
    }
    if (s.act(st, s.enabled_letters(st)) == kBottom) {
      v.deterministic = false;
      v.state = st;
      v.full_clique_disabled = true;
      v.witness = s.state_name(st) + ", " + m.format(s.enabled_letters(st));
      return v;
    }
  }
  return v;
}

Valuation dominant_valuation(const ConcurrentSystem& s) {
  std::vector<std::vector<Rational>> w(static_cast<std::size_t>(s.size()),
                                       std::vector<Rational>(static_cast<std::size_t>(s.monoid().size()), Rational(0)));
  for (const auto& [from, a, to] : s.transitions()) w[static_cast<std::size_t>(from)][static_cast<std::size_t>(a)] = 1;
  return build_valuation(s, w);
}

Lasso ExecutionLasso::trace() const {
  Lasso out;
  for (const auto& n : prefix) out.prefix.push_back(n.clique);
  for (const auto& n : cycle) out.cycle.push_back(n.clique);
  return out;
}

ExecutionLasso max_execution(const ConcurrentSystem& sys, State s) {
  if (!is_deterministic(sys).deterministic) throw AnalysisError("maximal executions need a deterministic system");
  std::vector<SCDigraph::Node> path;
  std::map<State, std::size_t> seen;
  State cur = s;
  ExecutionLasso out;
  while (true) {
    const Clique c = sys.enabled_letters(cur);
    if (c.empty()) {
      out.prefix = std::move(path);
      return out;
    }
    if (const auto it = seen.find(cur); it != seen.end()) {
      out.prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(it->second));
      out.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(it->second), path.end());
      return out;
    }
    seen.emplace(cur, path.size());
    path.push_back({cur, c});
    cur = sys.act(cur, c);
  }
}

std::string to_string(Cardinality c) {
  switch (c) {
    case Cardinality::empty:
      return "empty";
    case Cardinality::countable:
      return "countable";
    case Cardinality::uncountable:
      return "uncountable";
  }
  return "";
}

namespace {

// Tarjan's algorithm over the nodes flagged in `keep`; component id per
// node, -1 outside.
std::vector<int> components(const std::vector<std::vector<std::size_t>>& succ, const std::vector<bool>& keep) {
  const std::size_t n = succ.size();
  std::vector<int> comp(n, -1);
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  int next_comp = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (!keep[w]) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        const std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = next_comp;
        if (w == v) break;
      }
      ++next_comp;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (keep[v] && index[v] < 0) visit(v);
  }
  return comp;
}

}  // namespace

BoundaryCardinality boundary_cardinality(const ConcurrentSystem& sys, State s) {
  const SCDigraph g = sc_digraph(sys);
  const std::size_t n = g.nodes.size();
  const auto starts = g.nodes_at(s);

  std::vector<bool> reach(n, false);
  std::vector<std::size_t> todo(starts.begin(), starts.end());
  for (std::size_t v : starts) reach[v] = true;
  while (!todo.empty()) {
    const std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t w : g.successors[v]) {
      if (!reach[w]) {
        reach[w] = true;
        todo.push_back(w);
      }
    }
  }

  // Nodes on a cycle, then everything reachable that leads to one.
  const auto comp = components(g.successors, reach);
  std::map<int, std::size_t> comp_size;
  for (std::size_t v = 0; v < n; ++v) {
    if (reach[v]) ++comp_size[comp[v]];
  }
  std::vector<bool> live(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (!reach[v]) continue;
    const bool self_loop = std::find(g.successors[v].begin(), g.successors[v].end(), v) != g.successors[v].end();
    live[v] = comp_size[comp[v]] > 1 || self_loop;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!reach[v] || live[v]) continue;
      for (std::size_t w : g.successors[v]) {
        if (live[w]) {
          live[v] = true;
          changed = true;
          break;
        }
      }
    }
  }

  BoundaryCardinality out;
  if (std::none_of(live.begin(), live.end(), [](bool b) { return b; })) return out;

  // A strongly connected component with more edges than nodes carries two
  // distinct cycles through one vertex.
  std::map<int, std::size_t> nodes_in;
  std::map<int, std::size_t> edges_in;
  for (std::size_t v = 0; v < n; ++v) {
    if (!live[v]) continue;
    ++nodes_in[comp[v]];
    for (std::size_t w : g.successors[v]) {
      if (live[w] && comp[w] == comp[v]) ++edges_in[comp[v]];
    }
  }
  for (const auto& [c, k] : nodes_in) {
    if (edges_in[c] > k) {
      out.cls = Cardinality::uncountable;
      return out;
    }
  }
  out.cls = Cardinality::countable;

  std::size_t live_starts = 0;
  for (std::size_t v : starts) live_starts += live[v] ? 1 : 0;
  bool one_way = live_starts == 1;
  for (std::size_t v = 0; v < n && one_way; ++v) {
    if (!live[v]) continue;
    const auto out_degree = std::count_if(g.successors[v].begin(), g.successors[v].end(), [&](std::size_t w) { return live[w]; });
    one_way = out_degree == 1;
  }
  out.singleton = one_way;
  return out;
}

DcsReport dcs_report(const ConcurrentSystem& s, const NumericPolicy& policy) {
  DcsReport r;
  r.irreducible = classify(s).irreducible;
  r.deterministic = is_deterministic(s);
  r.dominant_probabilistic = is_probabilistic(dominant_valuation(s), policy).probabilistic;
  r.root = characteristic_root(s);
  r.root_is_one = !r.root.infinite && r.root.exact && *r.root.exact == 1;
  r.every_countable = true;
  r.every_singleton = true;
  for (State st = 0; st < s.size(); ++st) {
    const auto b = boundary_cardinality(s, st);
    r.boundary.push_back(b);
    const bool countable = b.cls != Cardinality::uncountable;
    r.some_countable = r.some_countable || countable;
    r.every_countable = r.every_countable && countable;
    r.some_singleton = r.some_singleton || b.singleton;
    r.every_singleton = r.every_singleton && b.singleton;
  }
  if (s.size() == 0) r.every_countable = r.every_singleton = false;
  if (r.irreducible) {
    const bool d = r.deterministic.deterministic;
    r.consistent = r.dominant_probabilistic == d && r.root_is_one == d && r.some_countable == d &&
                   r.every_countable == d && r.some_singleton == d && r.every_singleton == d;
    r.dominant_unique = d;
  }
  return r;
}

NullCycleCheck null_cycle_check(const Valuation& v, const NumericPolicy& policy) {
  const SCDigraph g = sc_digraph(v.system());
  const auto nulls = null_nodes(v, policy);
  std::vector<bool> is_null(g.nodes.size(), false);
  for (const auto& node : nulls) is_null[*g.find(node.state, node.clique)] = true;

  // Depth-first search for a back edge inside the null subgraph.
  enum class Mark { fresh, open, done };
  std::vector<Mark> mark(g.nodes.size(), Mark::fresh);
  std::vector<std::size_t> path;
  NullCycleCheck out;
  std::function<bool(std::size_t)> visit = [&](std::size_t u) {
    mark[u] = Mark::open;
    path.push_back(u);
    for (std::size_t w : g.successors[u]) {
      if (!is_null[w]) continue;
      if (mark[w] == Mark::open) {
        const auto from = std::find(path.begin(), path.end(), w);
        for (auto it = from; it != path.end(); ++it) out.cycle.push_back(g.nodes[*it]);
        return true;
      }
      if (mark[w] == Mark::fresh && visit(w)) return true;
    }
    path.pop_back();
    mark[u] = Mark::done;
    return false;
  };
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    if (is_null[u] && mark[u] == Mark::fresh && visit(u)) {
      out.ok = false;
      break;
    }
  }
  return out;
}

Corollary1Check corollary1_check(const TraceMonoid& m, const Lasso& w, int n) {
  Corollary1Check out;
  out.counts = divisor_counts(m, w, n);
  for (int k = 0; k <= n; ++k) {
    out.bounds.push_back(binomial(k + m.size() - 1, m.size() - 1));
    out.holds = out.holds && out.counts[static_cast<std::size_t>(k)] <= out.bounds.back();
  }
  return out;
}

}  // namespace tracesys
