#include "tracesys/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tracesys/error.hpp"

namespace tracesys {

Polynomial mobius_polynomial(const TraceMonoid& m) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(m.size()) + 1, Rational(0));
  for (Clique c : m.cliques()) {
    const auto k = static_cast<std::size_t>(c.size());
    coeffs[k] += (k % 2 == 0) ? 1 : -1;
  }
  return Polynomial(std::move(coeffs));
}

std::vector<BigInt> growth_counts(const TraceMonoid& m, int n) {
  const Polynomial mu = mobius_polynomial(m);
  std::vector<BigInt> lambda(static_cast<std::size_t>(std::max(n, 0)) + 1);
  lambda[0] = 1;
  for (int k = 1; k <= n; ++k) {
    BigInt acc = 0;
    for (int j = 1; j <= std::min(k, mu.degree()); ++j) {
      acc -= mu.coeff(j).get_num() * lambda[static_cast<std::size_t>(k - j)];
    }
    lambda[static_cast<std::size_t>(k)] = acc;
  }
  if (n < 0) lambda.clear();
  return lambda;
}

TraceMonoid restrict_monoid(const TraceMonoid& m, Clique removed) {
  std::vector<std::string> names;
  std::vector<Letter> old_of_new;
  for (Letter a = 0; a < m.size(); ++a) {
    if (removed.contains(a)) continue;
    names.push_back(m.name(a));
    old_of_new.push_back(a);
  }
  std::vector<std::pair<Letter, Letter>> pairs;
  for (std::size_t i = 0; i < old_of_new.size(); ++i) {
    for (std::size_t j = i + 1; j < old_of_new.size(); ++j) {
      if (m.independent(old_of_new[i], old_of_new[j])) {
        pairs.emplace_back(static_cast<Letter>(i), static_cast<Letter>(j));
      }
    }
  }
  return TraceMonoid::build(std::move(names), pairs);
}

namespace {

void check_projectable(const TraceMonoid& from, const TraceMonoid& to) {
  if (from.letters() != to.letters()) throw SchemaError("projection requires identical alphabets");
  for (Letter a = 0; a < from.size(); ++a) {
    if ((from.independence_mask(a) & ~to.independence_mask(a)) != 0) {
      throw SchemaError("projection requires the source independence to be contained in the target one");
    }
  }
}

std::vector<Letter> layers_word(const std::vector<Clique>& layers) {
  std::vector<Letter> w;
  for (Clique c : layers) {
    for (Letter a : c.letters()) w.push_back(a);
  }
  return w;
}

// Heap stacking that keeps its state, so an infinite word can be fed in
// pieces. A letter is placed once and for all: later letters only land above.
class Stacker {
 public:
  explicit Stacker(const TraceMonoid& m) : m_(m), tops_(static_cast<std::size_t>(m.size()), 0) {}

  void push(Letter a) {
    int level = 0;
    for (std::uint32_t d = m_.dependence_mask(a); d != 0; d &= d - 1) {
      level = std::max(level, tops_[static_cast<std::size_t>(std::countr_zero(d))]);
    }
    ++level;
    tops_[static_cast<std::size_t>(a)] = level;
    if (static_cast<int>(layers_.size()) < level) layers_.resize(static_cast<std::size_t>(level));
    layers_[static_cast<std::size_t>(level - 1)] = layers_[static_cast<std::size_t>(level - 1)].with(a);
  }
  void push(const std::vector<Letter>& w) {
    for (Letter a : w) push(a);
  }

  int top(Letter a) const { return tops_[static_cast<std::size_t>(a)]; }
  const std::vector<Clique>& layers() const { return layers_; }

 private:
  const TraceMonoid& m_;
  std::vector<int> tops_;
  std::vector<Clique> layers_;
};

// Connected components of the dependence graph restricted to `letters`.
std::vector<Clique> dependence_components(const TraceMonoid& m, Clique letters) {
  std::vector<Clique> comps;
  Clique left = letters;
  while (!left.empty()) {
    Clique comp = Clique::of(left.lowest());
    Clique frontier = comp;
    while (!frontier.empty()) {
      Clique next;
      for (Letter a : frontier.letters()) next = next | Clique(m.dependence_mask(a) & left.bits());
      next = Clique(next.bits() & ~comp.bits());
      comp = comp | next;
      frontier = next;
    }
    comps.push_back(comp);
    left = Clique(left.bits() & ~comp.bits());
  }
  return comps;
}

constexpr long kMaxProjectionCycles = 100000;

}  // namespace

Trace project(const TraceMonoid& from, const TraceMonoid& to, const Trace& x) {
  check_projectable(from, to);
  return normalize(to, x.word());
}

Lasso project(const TraceMonoid& from, const TraceMonoid& to, const Lasso& w) {
  check_projectable(from, to);
  const auto prefix_word = layers_word(w.prefix);
  if (w.finite()) return Lasso{normalize(to, prefix_word).layers(), {}};

  const auto cycle_word = layers_word(w.cycle);
  Clique cycle_letters;
  for (Clique c : w.cycle) cycle_letters = cycle_letters | c;

  Stacker st(to);
  st.push(prefix_word);
  int still = 0;  // highest level a letter absent from the cycle can hold
  for (Letter a = 0; a < to.size(); ++a) {
    if (!cycle_letters.contains(a)) still = std::max(still, st.top(a));
  }

  // Each dependence component of the cycle alphabet evolves on its own.
  // Once its top profile repeats up to a shift (and letters outside the
  // cycle no longer constrain it), its occupied levels are periodic.
  struct Track {
    Clique letters;
    std::uint32_t outside_deps = 0;
    std::map<std::vector<int>, std::pair<long, int>> seen;  // profile -> (cycle count, min top)
    bool settled = false;
    int shift = 0;
    int threshold = 0;
  };
  std::vector<Track> tracks;
  for (Clique comp : dependence_components(to, cycle_letters)) {
    Track t;
    t.letters = comp;
    for (Letter a : comp.letters()) t.outside_deps |= to.dependence_mask(a) & ~cycle_letters.bits();
    tracks.push_back(std::move(t));
  }

  long cycles = 0;
  auto all_settled = [&] {
    return std::all_of(tracks.begin(), tracks.end(), [](const Track& t) { return t.settled; });
  };
  while (!all_settled()) {
    if (cycles >= kMaxProjectionCycles) throw AnalysisError("projection of the lasso did not become periodic");
    st.push(cycle_word);
    ++cycles;
    for (Track& t : tracks) {
      if (t.settled) continue;
      int lo = 0;
      int hi = 0;
      bool first = true;
      for (Letter a : t.letters.letters()) {
        lo = first ? st.top(a) : std::min(lo, st.top(a));
        hi = first ? st.top(a) : std::max(hi, st.top(a));
        first = false;
      }
      bool free = true;
      for (std::uint32_t d = t.outside_deps; d != 0; d &= d - 1) {
        if (st.top(std::countr_zero(d)) > lo) free = false;
      }
      if (!free) continue;
      std::vector<int> profile;
      for (Letter a : t.letters.letters()) profile.push_back(st.top(a) - lo);
      auto [it, inserted] = t.seen.emplace(profile, std::make_pair(cycles, lo));
      if (!inserted) {
        t.settled = true;
        t.shift = lo - it->second.second;
        t.threshold = hi;
      }
    }
  }

  int start = still;
  int period = 1;
  for (const Track& t : tracks) {
    start = std::max(start, t.threshold);
    period = std::lcm(period, t.shift);
  }
  // Levels up to the lowest cycle-letter top are final.
  auto lowest_top = [&] {
    int lo = 0;
    bool first = true;
    for (Letter a : cycle_letters.letters()) {
      lo = first ? st.top(a) : std::min(lo, st.top(a));
      first = false;
    }
    return lo;
  };
  while (lowest_top() < start + period) st.push(cycle_word);

  const auto& layers = st.layers();
  Lasso out;
  out.prefix.assign(layers.begin(), layers.begin() + start);
  out.cycle.assign(layers.begin() + start, layers.begin() + start + period);
  return minimize(std::move(out));
}

Lasso minimize(Lasso w) {
  if (w.cycle.empty()) return w;
  const std::size_t n = w.cycle.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w.cycle[i] == w.cycle[i - d];
    if (ok) {
      w.cycle.resize(d);
      break;
    }
  }
  while (!w.prefix.empty() && w.prefix.back() == w.cycle.back()) {
    w.prefix.pop_back();
    std::rotate(w.cycle.rbegin(), w.cycle.rbegin() + 1, w.cycle.rend());
  }
  return w;
}

CliqueDigraph clique_digraph(const TraceMonoid& m) {
  CliqueDigraph g;
  const auto nonempty = m.nonempty_cliques();
  g.nodes.assign(nonempty.begin(), nonempty.end());
  g.successors.resize(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      if (m.is_normal_pair(g.nodes[i], g.nodes[j])) g.successors[i].push_back(j);
    }
  }
  return g;
}

std::vector<BigInt> divisor_counts(const TraceMonoid& m, const Lasso& w, int n) {
  m.validate(w);
  if (n < 0) return {};
  std::vector<BigInt> p(static_cast<std::size_t>(n) + 1, BigInt(0));
  p[0] = 1;
  // A divisor keeps every piece at its height in w, so it is a choice of
  // sub-layer per height. Leaving a piece out blocks every letter depending
  // on it from all higher layers. State: blocked letters -> counts by length.
  std::map<std::uint32_t, std::vector<BigInt>> current{{0U, p}};
  for (int height = 0; height < n && !current.empty(); ++height) {
    const Clique full = w.layer(static_cast<std::size_t>(height));
    if (full.empty()) break;
    std::map<std::uint32_t, std::vector<BigInt>> next;
    for (const auto& [blocked, counts] : current) {
      const std::uint32_t open = full.bits() & ~blocked;
      for (std::uint32_t sub = open; sub != 0; sub = (sub - 1) & open) {
        const Clique take(sub);
        std::uint32_t now_blocked = blocked;
        for (Letter a : Clique(full.bits() & ~sub).letters()) now_blocked |= m.dependence_mask(a);
        std::vector<BigInt>* slot = nullptr;
        for (std::size_t k = 0; k + static_cast<std::size_t>(take.size()) < p.size(); ++k) {
          if (counts[k] == 0) continue;
          if (slot == nullptr) {
            slot = &next.try_emplace(now_blocked, p.size(), BigInt(0)).first->second;
          }
          (*slot)[k + static_cast<std::size_t>(take.size())] += counts[k];
        }
      }
    }
    for (const auto& [blocked, counts] : next) {
      for (std::size_t k = 1; k < p.size(); ++k) p[k] += counts[k];
    }
    current = std::move(next);
  }
  return p;
}

BigInt binomial(long n, long k) {
  BigInt out;
  if (k < 0 || n < 0 || k > n) return BigInt(0);
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace tracesys
