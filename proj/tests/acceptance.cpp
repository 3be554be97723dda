// One line per acceptance criterion. Exit status is nonzero when a criterion
// fails, except for the sub-check listed in kKnownDiscrepancies.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tracesys/combinatorics.hpp"
#include "tracesys/dcs.hpp"
#include "tracesys/error.hpp"
#include "tracesys/io.hpp"
#include "tracesys/kernels.hpp"

using namespace tracesys;
using namespace tracesys::testing;

namespace {

constexpr int kMaxLength = 8;                 // criterion 3
constexpr double kRootM2Tol = 1e-10;          // criterion 4
constexpr double kS1RootTol = 1e-9;           // criterion 6
constexpr double kS1LawTol = 5e-4;            // criterion 6
constexpr double kS4LawTol = 1e-12;           // criterion 9
constexpr double kSpectralMargin = 1e-6;      // criterion 10
constexpr std::size_t kSamples = 100000;      // criterion 11
constexpr double kStandardErrors = 4;         // criterion 11
constexpr std::uint64_t kSeed = 20240601;     // criterion 11
constexpr double kCylinderTol = 1e-8;         // criterion 12
constexpr double kRoundtripTol = 1e-12;       // criterion 12

// The stated determinant for the two-state Petri example is not the determinant
// of the listed matrix; the check below reports it as is.
const std::set<std::string> kKnownDiscrepancies{"5/theta"};

struct Criterion {
  int id;
  std::string title;
  std::vector<std::pair<std::string, std::string>> failures;  // (tag, detail)

  void check(bool ok, const std::string& tag, const std::string& detail) {
    if (!ok) failures.emplace_back(std::to_string(id) + "/" + tag, detail);
  }
};

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }
ConcurrentSystem load(const std::string& name) { return io::system_from_json(io::read_file(fixture(name))); }
TraceMonoid load_monoid(const std::string& name) { return io::monoid_from_json(io::read_file(fixture(name))); }

// Lexicographic normal form: repeatedly pull out the smallest letter that can
// be moved to the front. Independent of the Cartier-Foata machinery.
std::vector<Letter> lex_normal_form(const TraceMonoid& m, std::vector<Letter> w) {
  std::vector<Letter> out;
  while (!w.empty()) {
    std::size_t best = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j) free = m.independent(w[j], w[i]);
      if (free && (best == w.size() || w[i] < w[best])) best = i;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

// counts[k][from][to] by breadth-first extension of lexicographic normal forms.
std::vector<std::vector<std::vector<long>>> brute_counts(const ConcurrentSystem& s, int n) {
  const auto ns = static_cast<std::size_t>(s.size());
  std::vector<std::vector<std::vector<long>>> counts(static_cast<std::size_t>(n) + 1,
                                                     std::vector<std::vector<long>>(ns, std::vector<long>(ns, 0)));
  for (State from = 0; from < s.size(); ++from) {
    std::map<std::vector<Letter>, State> level{{{}, from}};
    for (int k = 0; k <= n; ++k) {
      for (const auto& [w, end] : level) ++counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(from)][static_cast<std::size_t>(end)];
      if (k == n) break;
      std::map<std::vector<Letter>, State> next;
      for (const auto& [w, end] : level) {
        for (Letter a = 0; a < s.monoid().size(); ++a) {
          const State to = s.act(end, a);
          if (to == kBottom) continue;
          auto u = w;
          u.push_back(a);
          next.emplace(lex_normal_form(s.monoid(), u), to);
        }
      }
      level = std::move(next);
    }
  }
  return counts;
}

Polynomial poly(std::initializer_list<long> c) { return Polynomial(c); }

std::string names(const TraceMonoid& m, Clique c) { return m.format(c); }

// ---- criteria -------------------------------------------------------------

void clique_census(Criterion& c) {
  const auto m1 = load_monoid("M1.json");
  std::vector<std::string> got;
  for (Clique q : m1.cliques()) got.push_back(names(m1, q));
  const std::vector<std::string> expected{"ε",     "a0",    "a1",    "a2",    "a3",    "a4",      "a0·a2",
                                          "a0·a3", "a0·a4", "a1·a3", "a1·a4", "a2·a4", "a0·a2·a4"};
  c.check(got == expected, "M1", "M1 cliques differ");
  const auto m2 = load_monoid("M2.json");
  std::vector<std::string> nonempty;
  for (Clique q : m2.nonempty_cliques()) nonempty.push_back(names(m2, q));
  c.check(nonempty == std::vector<std::string>{"a", "b", "c", "d", "a·c", "b·d"}, "M2", "M2 nonempty cliques differ");
}

void normal_form(Criterion& c) {
  const auto m1 = load_monoid("M1.json");
  const auto x = normalize(m1, std::vector<std::string>{"a0", "a3", "a0", "a2", "a1", "a3", "a4"});
  std::vector<std::string> layers;
  for (Clique q : x.layers()) layers.push_back(names(m1, q));
  c.check(layers == std::vector<std::string>{"a0·a3", "a0·a2", "a1·a3", "a4"}, "layers", m1.format(x));
  c.check(x.height() == 4, "height", std::to_string(x.height()));
  const auto y = normalize(m1, std::vector<std::string>{"a3", "a2", "a3", "a0", "a4", "a0", "a1"});
  c.check(y == x, "second word", m1.format(y));
}

void growth_duality(Criterion& c) {
  std::vector<std::pair<std::string, ConcurrentSystem>> systems;
  for (const char* name : {"M1.json", "M2.json", "M3.json", "S1.json", "S2.json", "S3.json", "S4.json"}) {
    systems.emplace_back(name, load(name));
  }
  for (const auto& [name, s] : systems) {
    const auto series = growth_matrix_counts(s, kMaxLength);
    const auto brute = brute_counts(s, kMaxLength);
    bool same = true;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(kMaxLength); ++k) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(s.size()); ++i) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(s.size()); ++j) same = same && series[k][i][j] == brute[k][i][j];
      }
    }
    c.check(same, name, name + " series and enumeration disagree");
    if (s.size() == 1) {
      const auto lambda = growth_counts(s.monoid(), kMaxLength);
      bool mono = true;
      for (std::size_t k = 0; k <= static_cast<std::size_t>(kMaxLength); ++k) mono = mono && lambda[k] == brute[k][0][0];
      c.check(mono, name + " monoid", name + " monoid series disagrees");
    }
  }
}

void root_m2(Criterion& c) {
  const auto r = smallest_positive_root(poly({1, -4, 2}));
  const double expected = 1 - std::sqrt(2.0) / 2;
  c.check(std::abs(r.value - expected) <= kRootM2Tol, "root", io::to_json(r).dump());
  const auto from_fixture = characteristic_root(load("M2.json"));
  c.check(std::abs(from_fixture.value - expected) <= kRootM2Tol, "fixture", to_decimal(from_fixture.value));
}

void s2_suite(Criterion& c) {
  const auto s = load("S2.json");
  const auto& m = s.monoid();
  const auto mu = mobius_matrix(s);
  const bool matrix = mu.at(0, 0) == poly({1, -2, 1}) && mu.at(0, 1) == poly({0, -1, 1}) && mu.at(1, 0) == poly({0, -1}) &&
                      mu.at(1, 1) == poly({1, -1});
  c.check(matrix, "matrix", io::to_json(mu).dump());
  const auto th = theta(s);
  const auto stated = poly({1, -1}) * poly({1, -1}) * poly({1, -2});
  c.check(th == stated, "theta", "det = " + th.to_string() + ", stated " + stated.to_string());

  const auto u = uniform_measure(s);
  c.check(u.root.exact && *u.root.exact == Rational(1, 2), "root", io::to_json(u.root).dump());
  bool cocycle = true;
  for (State a = 0; a < s.size(); ++a) {
    for (State b = 0; b < s.size(); ++b) cocycle = cocycle && u.exact_gamma(a, b) && *u.exact_gamma(a, b) == 1;
  }
  c.check(cocycle, "cocycle", "Parry cocycle is not identically 1");

  const auto law = first_clique_distribution(u.valuation, s.state("α0"));
  std::map<std::string, Rational> by_name;
  for (std::size_t i = 0; i < law.cliques.size(); ++i) by_name[names(m, law.cliques[i])] = (*law.exact)[i];
  const std::map<std::string, Rational> expected{{"a", Rational(1, 4)}, {"b", Rational(1, 4)}, {"a·d", Rational(1, 4)},
                                                 {"b·d", Rational(1, 4)}, {"d", Rational(0)}};
  c.check(law.exact && by_name == expected, "law", "first-clique law at α0 differs");

  const auto nulls = null_nodes(u.valuation);
  c.check(nulls == std::vector<SCDigraph::Node>{{s.state("α0"), Clique::of(m.letter("d"))}}, "null", "null nodes differ");
  c.check(boundary_cardinality(s, s.state("α0")).cls == Cardinality::uncountable, "boundary", "boundary at α0");
}

void s1_suite(Criterion& c) {
  const auto s = load("S1.json");
  // rows/columns 0000 1100 0011 0110 1001 1111
  const std::vector<std::vector<Polynomial>> listed{
      {poly({1}), poly({0, -1}), poly({0, -1}), poly({0, -1}), poly({0, -1}), poly({0, 0, 2})},
      {poly({0, -1}), poly({1}), poly({0, 0, 1}), Polynomial{}, Polynomial{}, poly({0, -1})},
      {poly({0, -1}), poly({0, 0, 1}), poly({1}), Polynomial{}, Polynomial{}, poly({0, -1})},
      {poly({0, -1}), Polynomial{}, Polynomial{}, poly({1}), poly({0, 0, 1}), poly({0, -1})},
      {poly({0, -1}), Polynomial{}, Polynomial{}, poly({0, 0, 1}), poly({1}), poly({0, -1})},
      {poly({0, 0, 2}), poly({0, -1}), poly({0, -1}), poly({0, -1}), poly({0, -1}), poly({1})}};
  const std::vector<std::string> order{"0000", "1100", "0011", "0110", "1001", "1111"};
  const auto mu = mobius_matrix(s);
  bool matrix = true;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      const auto si = static_cast<std::size_t>(s.state(order[i]));
      const auto sj = static_cast<std::size_t>(s.state(order[j]));
      matrix = matrix && mu.at(si, sj) == listed[i][j];
    }
  }
  c.check(matrix, "matrix", io::to_json(mu).dump());

  const auto u = uniform_measure(s);
  const double r = 0.5 * std::sqrt(5 - std::sqrt(17.0));
  const double lambda = std::sqrt(23 - std::sqrt(17.0)) / (4 * std::sqrt(2.0));
  c.check(std::abs(u.root.value - r) <= kS1RootTol, "root", to_decimal(u.root.value));
  const State zero = s.state("0000");
  bool gamma = true;
  for (const char* t : {"1100", "0011", "0110", "1001"}) gamma = gamma && std::abs(u.gamma(zero, s.state(t)) - lambda) <= kS1RootTol;
  c.check(gamma, "lambda", to_decimal(u.gamma(zero, s.state("1100"))));
  const auto law = first_clique_distribution(u.valuation, zero);
  const std::map<std::string, double> expected{{"a", 0.140}, {"b", 0.140}, {"c", 0.140},
                                               {"d", 0.140}, {"a·c", 0.219}, {"b·d", 0.219}};
  bool close = law.cliques.size() == expected.size();
  for (std::size_t i = 0; i < law.cliques.size() && close; ++i) {
    const auto it = expected.find(names(s.monoid(), law.cliques[i]));
    close = it != expected.end() && std::abs(law.probability[i] - it->second) <= kS1LawTol;
  }
  c.check(close, "law", "first-clique law at 0000 outside tolerance");
  c.check(null_nodes(u.valuation).empty(), "null", "unexpected null nodes");
}

void m3_uniform(Criterion& c) {
  const auto s = load("M3.json");
  const auto u = uniform_measure(s);
  c.check(u.root.exact && *u.root.exact == Rational(1, 2), "root", io::to_json(u.root).dump());
  const auto row = mobius_at(u.valuation, 0);
  std::map<std::string, Rational> h;
  for (std::size_t i = 0; i < s.monoid().cliques().size(); ++i) h[names(s.monoid(), s.monoid().cliques()[i])] = (*row.exact)[i];
  const std::map<std::string, Rational> expected{{"ε", 0}, {"a", Rational(1, 4)}, {"b", Rational(1, 4)},
                                                 {"c", 0}, {"a·c", Rational(1, 4)}, {"b·c", Rational(1, 4)}};
  c.check(row.exact && h == expected, "h", "Moebius transform differs");
  c.check(null_nodes(u.valuation) == std::vector<SCDigraph::Node>{{0, Clique::of(s.monoid().letter("c"))}}, "null",
          "null nodes differ");
}

void s3_suite(Criterion& c) {
  const auto s = load("S3.json");
  const auto& m = s.monoid();
  c.check(is_deterministic(s).deterministic, "deterministic", is_deterministic(s).witness);
  const auto dom = dominant_valuation(s);
  c.check(is_probabilistic(dom).probabilistic, "dominant", "dominant valuation not probabilistic");
  const auto r = characteristic_root(s);
  c.check(r.exact && *r.exact == 1, "root", io::to_json(r).dump());
  bool singletons = true;
  for (State st = 0; st < s.size(); ++st) {
    const auto b = boundary_cardinality(s, st);
    singletons = singletons && b.cls == Cardinality::countable && b.singleton;
  }
  c.check(singletons, "boundary", "some boundary is not a countable singleton");
  const auto t0 = max_execution(s, s.state("0"));
  std::vector<std::string> cycle;
  for (const auto& n : t0.cycle) cycle.push_back(s.state_name(n.state));
  c.check(t0.prefix.empty() && cycle == std::vector<std::string>{"0", "3", "7", "8"}, "T0", "cycle of T_0 differs");

  std::set<std::pair<std::string, std::string>> nulls;
  for (const auto& n : null_nodes(dom)) nulls.emplace(s.state_name(n.state), names(m, n.clique));
  const std::set<std::pair<std::string, std::string>> dashed{{"0", "a0"}, {"0", "a2"}, {"2", "a0"},
                                                            {"2", "a3"}, {"3", "a1"}, {"3", "a3"}};
  c.check(nulls == dashed, "null", "null nodes differ from the dashed nodes");
  c.check(null_cycle_check(dom).ok, "null cycle", "a cycle of null nodes exists");
  c.check(sc_digraph(s).nodes.size() - nulls.size() == static_cast<std::size_t>(s.size()), "count", "non-null count");
}

void s4_suite(Criterion& c) {
  const auto s = load("S4.json");
  c.check(is_deterministic(s).deterministic, "deterministic", is_deterministic(s).witness);
  c.check(!classify(s).irreducible, "irreducible", "S4 classified irreducible");
  const auto v = build_valuation(s, io::weights_from_json(io::read_file(fixture("S4_weights_p0.3.json"))));
  const auto law = first_clique_distribution(v, s.state("α0"));
  const std::map<std::string, double> expected{{"a", 0.7}, {"c", 0.0}, {"a·c", 0.3}};
  bool close = law.cliques.size() == expected.size();
  for (std::size_t i = 0; i < law.cliques.size() && close; ++i) {
    const auto it = expected.find(names(s.monoid(), law.cliques[i]));
    close = it != expected.end() && std::abs(law.probability[i] - it->second) <= kS4LawTol;
  }
  c.check(close, "law", "first-clique law at α0 differs");

  auto rejects = [](const ConcurrentSystem& sys, std::vector<WeightEntry> w) {
    try {
      build_valuation(sys, w);
      return false;
    } catch (const ValidationError&) {
      return true;
    }
  };
  // f_α1(c) must equal f_α0(c) = p
  c.check(rejects(s, {{"α0", "a", 1}, {"α0", "c", Rational(3, 10)}, {"α1", "b", 1}, {"α1", "c", Rational(31, 100)},
                      {"β0", "a", 1}, {"β1", "b", 1}}),
          "coherence S4", "perturbed c-weight accepted");
  // in the Petri example f_α1(d) = u must equal f_α0(d) = s
  const auto s2 = load("S2.json");
  c.check(rejects(s2, {{"α0", "a", Rational(1, 2)}, {"α0", "b", Rational(1, 2)}, {"α0", "d", Rational(1, 2)},
                       {"α1", "c", Rational(1, 2)}, {"α1", "d", Rational(2, 5)}}),
          "coherence S2", "u != s accepted");
}

void spectral(Criterion& c) {
  for (const char* name : {"S1.json", "S2.json", "M1.json", "M2.json"}) {
    const auto report = spectral_check(load(name), kSpectralMargin);
    bool ok = !report.entries.empty();
    for (const auto& e : report.entries) ok = ok && (e.root.infinite || e.root.value - report.root.value >= kSpectralMargin);
    c.check(ok && report.all_strict, name, std::string(name) + " has a restriction within the margin");
  }
  const auto s3 = spectral_check(load("S3.json"), kSpectralMargin);
  bool infinite = !s3.entries.empty();
  for (const auto& e : s3.entries) infinite = infinite && e.root.infinite;
  c.check(infinite, "S3", "some restriction of S3 has a finite root");
}

void sampling(Criterion& c) {
  const auto s2 = load("S2.json");
  const auto chain = markov_chain(uniform_measure(s2).valuation);
  const State a0 = s2.state("α0");
  const auto draws = sample_first_nodes_parallel(chain, a0, kSamples, kSeed);
  std::map<std::string, std::size_t> hits;
  for (std::size_t i : draws) ++hits[names(s2.monoid(), chain.graph.nodes[i].clique)];
  const double se = std::sqrt(0.25 * 0.75 / static_cast<double>(kSamples));
  for (const char* q : {"a", "b", "a·d", "b·d"}) {
    const double freq = static_cast<double>(hits[q]) / static_cast<double>(kSamples);
    c.check(std::abs(freq - 0.25) <= kStandardErrors * se, std::string("freq ") + q, to_decimal(freq));
  }
  c.check(hits["d"] == 0, "d", "clique d drawn");

  const auto s3 = load("S3.json");
  const auto dom = markov_chain(dominant_valuation(s3));
  for (State st = 0; st < s3.size(); ++st) {
    // the maximal execution, walked directly on the action table
    std::vector<SCDigraph::Node> expected;
    State cur = st;
    for (int k = 0; k < 3 * s3.size(); ++k) {
      Clique full;
      for (Letter a = 0; a < s3.monoid().size(); ++a) {
        if (s3.act(cur, a) != kBottom) full = full.with(a);
      }
      expected.push_back({cur, full});
      for (Letter a : full.letters()) cur = s3.act(cur, a);
    }
    const auto path = sample(dom, st, 3 * s3.size(), kSeed + static_cast<std::uint64_t>(st));
    c.check(path.nodes == expected, "T" + s3.state_name(st), "sampled run from " + s3.state_name(st) + " differs");
  }
}

// -- property suites --

bool mobius_roundtrip() {
  std::mt19937_64 rng(1);
  for (const char* name : {"M1.json", "M2.json", "M3.json"}) {
    const auto m = load_monoid(name);
    std::vector<Rational> f(m.cliques().size());
    for (auto& x : f) x = Rational(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 50) + 1);
    for (auto& x : f) x.canonicalize();
    if (mobius_inverse<Rational>(m, mobius_transform<Rational>(m, f)) != f) return false;
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i].get_d();
    const auto back = mobius_inverse<double>(m, mobius_transform<double>(m, g));
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(back[i] - g[i]) > kRoundtripTol * std::max(1.0, std::abs(g[i]))) return false;
    }
  }
  return true;
}

bool word_swaps() {
  std::mt19937_64 rng(2);
  for (const char* name : {"M1.json", "M2.json", "M3.json"}) {
    const auto m = load_monoid(name);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Letter> u(rng() % 11);
      for (auto& a : u) a = static_cast<Letter>(rng() % static_cast<std::uint64_t>(m.size()));
      const Trace x = normalize(m, u);
      for (int step = 0; step < 20 && u.size() > 1; ++step) {
        const std::size_t i = rng() % (u.size() - 1);
        if (m.independent(u[i], u[i + 1])) std::swap(u[i], u[i + 1]);
        if (normalize(m, u) != x) return false;
      }
      // two random words: same Cartier-Foata form iff same lexicographic form
      std::vector<Letter> v(u.size());
      for (auto& a : v) a = static_cast<Letter>(rng() % static_cast<std::uint64_t>(m.size()));
      if ((normalize(m, u) == normalize(m, v)) != (lex_normal_form(m, u) == lex_normal_form(m, v))) return false;
    }
  }
  return true;
}

bool meet_join() {
  for (const char* name : {"M1.json", "M2.json", "M3.json"}) {
    const auto m = load_monoid(name);
    const auto levels = traces_by_length(m, 5);
    std::vector<Trace> pool;
    for (const auto& lvl : levels) pool.insert(pool.end(), lvl.begin(), lvl.end());
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const Trace& x = pool[rng() % pool.size()];
      const Trace& y = pool[rng() % pool.size()];
      const auto dx = divisor_words(m, x);
      const auto dy = divisor_words(m, y);
      std::vector<std::vector<Letter>> common;
      std::set_intersection(dx.begin(), dx.end(), dy.begin(), dy.end(), std::back_inserter(common));
      std::size_t best = 0;
      for (const auto& w : common) best = std::max(best, w.size());
      const Trace g = meet(m, x, y);
      int maximal = 0;
      for (const auto& w : common) {
        if (w.size() != best) continue;
        ++maximal;
        if (normalize(m, w) != g) return false;
      }
      if (maximal != 1) return false;
      std::set<Trace> upper;
      const int target = x.length() + y.length() - g.length();
      for (const Trace& u : levels[static_cast<std::size_t>(y.length() - g.length())]) {
        const Trace z = concat(m, x, u);
        if (z.length() == target && divides(m, y, z)) upper.insert(z);
      }
      const auto j = join(m, x, y);
      if (upper.empty() != !j.has_value()) return false;
      if (j && (upper.size() != 1 || *j != *upper.begin())) return false;
    }
  }
  return true;
}

bool projection_injective() {
  for (const char* name : {"M1.json", "M2.json", "M3.json"}) {
    const auto m = load_monoid(name);
    std::vector<std::pair<Letter, Letter>> all;
    for (Letter a = 0; a < m.size(); ++a) {
      for (Letter b = a + 1; b < m.size(); ++b) all.emplace_back(a, b);
    }
    const auto target = TraceMonoid::build(m.letters(), all);
    for (const auto& lvl : traces_by_length(m, 6)) {
      for (const Trace& w : lvl) {
        const auto ds = divisors_brute(m, w);
        std::set<Trace> images;
        for (const Trace& d : ds) images.insert(project(m, target, d));
        if (images.size() != ds.size()) return false;
      }
    }
  }
  return true;
}

std::vector<Trace> executions(const ConcurrentSystem& s, State from, int n) {
  std::vector<Trace> out{Trace{}};
  std::set<Trace> level{Trace{}};
  for (int k = 1; k <= n; ++k) {
    std::set<Trace> next;
    for (const Trace& x : level) {
      auto w = x.word();
      for (Letter a = 0; a < s.monoid().size(); ++a) {
        w.push_back(a);
        if (s.act(from, std::span<const Letter>(w)) != kBottom) next.insert(normalize(s.monoid(), w));
        w.pop_back();
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

bool avoidance() {
  for (const char* name : {"S3.json", "S4.json"}) {
    const auto s = load(name);
    for (State st = 0; st < s.size(); ++st) {
      const auto all = executions(s, st, 8);
      for (Clique c : s.cliques_at(st)) {
        const Clique left_out(s.enabled_letters(st).bits() & ~c.bits());
        for (const Trace& x : all) {
          if (x.first_layer() == c && (x.alphabet() & left_out) != Clique{}) return false;
        }
      }
    }
  }
  return true;
}

bool binomial_bound() {
  for (const char* name : {"S3.json", "S4.json"}) {
    const auto s = load(name);
    for (State st = 0; st < s.size(); ++st) {
      const auto w = max_execution(s, st).trace();
      const auto check = corollary1_check(s.monoid(), w, 12);
      if (!check.holds) return false;
      // bound recomputed from Pascal's rule: C(k+n-1, n-1) with n = |alphabet|
      const auto n = static_cast<std::size_t>(s.monoid().size());
      std::vector<std::vector<BigInt>> pascal(13 + n, std::vector<BigInt>(13 + n, 0));
      for (std::size_t i = 0; i < pascal.size(); ++i) {
        pascal[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j) pascal[i][j] = pascal[i - 1][j - 1] + pascal[i - 1][j];
      }
      // divisor counts by brute force for small k
      const auto all = executions(s, st, 6);
      std::vector<BigInt> brute(7, 0);
      for (const Trace& x : all) {
        if (divides(s.monoid(), x, w)) brute[static_cast<std::size_t>(x.length())] += 1;
      }
      for (std::size_t k = 0; k <= 12; ++k) {
        if (check.bounds[k] != pascal[k + n - 1][n - 1] || check.counts[k] > pascal[k + n - 1][n - 1]) return false;
        if (k <= 6 && check.counts[k] != brute[k]) return false;
      }
    }
  }
  return true;
}

bool cylinder_consistency() {
  const auto s = load("S2.json");
  const auto u = uniform_measure(s);
  const auto chain = markov_chain(u.valuation);
  const auto& m = s.monoid();
  for (State from = 0; from < s.size(); ++from) {
    for (const Trace& x : executions(s, from, 6)) {
      if (x.height() > 3) continue;
      const int h = std::max(x.height(), 1);
      double total = 0;
      struct Frame {
        std::size_t node;
        double p;
        std::vector<Clique> layers;
      };
      std::vector<Frame> stack;
      for (const auto& [i, p] : chain.initial[static_cast<std::size_t>(from)]) {
        if (p > 0) stack.push_back({i, p, {chain.graph.nodes[i].clique}});
      }
      while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (static_cast<int>(f.layers.size()) == h) {
          if (divides(m, x, m.make_trace(f.layers))) total += f.p;
          continue;
        }
        for (const auto& [j, p] : chain.rows[f.node]) {
          if (p <= 0) continue;
          auto layers = f.layers;
          layers.push_back(chain.graph.nodes[j].clique);
          stack.push_back({j, f.p * p, std::move(layers)});
        }
      }
      if (std::abs(total - cylinder_probability(u.valuation, from, x)) > kCylinderTol) return false;
    }
  }
  return true;
}

void properties(Criterion& c) {
  c.check(mobius_roundtrip(), "mobius", "Moebius inversion roundtrip");
  c.check(word_swaps(), "swaps", "normal form under word swaps");
  c.check(meet_join(), "lattice", "meet/join against brute force");
  c.check(projection_injective(), "projection", "projection injectivity on divisors");
  c.check(avoidance(), "avoidance", "left-out letters appear after the first clique");
  c.check(binomial_bound(), "binomial", "divisor counts against the binomial bound");
  c.check(cylinder_consistency(), "cylinder", "chain paths against cylinder probabilities");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    void (*run)(Criterion&);
  };
  const std::vector<Entry> entries{
      {1, "clique census", clique_census},
      {2, "normal form", normal_form},
      {3, "Moebius/growth duality", growth_duality},
      {4, "uniform root of M2", root_m2},
      {5, "S2 suite", s2_suite},
      {6, "S1 suite", s1_suite},
      {7, "M3 uniform", m3_uniform},
      {8, "S3 suite", s3_suite},
      {9, "S4 suite", s4_suite},
      {10, "spectral property", spectral},
      {11, "sampling statistics", sampling},
      {12, "property suites", properties},
  };
  int unexpected = 0;
  for (const auto& e : entries) {
    Criterion c{e.id, e.title, {}};
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.failures.emplace_back(std::to_string(e.id) + "/exception", ex.what());
    }
    std::ostringstream line;
    line << (c.failures.empty() ? "PASS" : "FAIL") << ' ' << (e.id < 10 ? " " : "") << e.id << ' ' << e.title;
    for (const auto& [tag, detail] : c.failures) {
      const bool known = kKnownDiscrepancies.count(tag) > 0;
      if (!known) ++unexpected;
      line << " | " << tag << ": " << detail << (known ? " (known discrepancy)" : "");
    }
    std::cout << line.str() << '\n';
  }
  return unexpected == 0 ? 0 : 1;
}
