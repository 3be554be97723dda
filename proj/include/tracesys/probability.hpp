#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tracesys/monoid.hpp"
#include "tracesys/rational.hpp"
#include "tracesys/system.hpp"

namespace tracesys {

/// Tolerances shared by the probabilistic analyses.
struct NumericPolicy {
  double probabilistic = 1e-9;  // |h(e)| and negative h on nonempty cliques
  double null_node = 1e-9;
  double coherence = 1e-12;
  double kernel = 1e-9;
  double spectral_margin = 1e-6;
  double row_sum = 1e-12;
};

struct WeightEntry {
  std::string state;
  std::string letter;
  Rational value;
};

/// Letter weights f_s(a), zero on disabled letters. When built from exact
/// values the rational weights are kept and every derived quantity is exact.
class Valuation {
 public:
  const ConcurrentSystem& system() const { return *system_; }
  double weight(State s, Letter a) const { return weights_[index(s, a)]; }
  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact_weight(State s, Letter a) const { return exact_->at(index(s, a)); }

 private:
  friend Valuation build_valuation(const ConcurrentSystem&, const std::vector<std::vector<double>>&,
                                   const NumericPolicy&);
  friend Valuation build_valuation(const ConcurrentSystem&, const std::vector<std::vector<Rational>>&,
                                   const NumericPolicy&);
  std::size_t index(State s, Letter a) const {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(system_->monoid().size()) + static_cast<std::size_t>(a);
  }

  std::shared_ptr<const ConcurrentSystem> system_;
  std::vector<double> weights_;
  std::optional<std::vector<Rational>> exact_;
};

/// Weights indexed [state][letter]. Throws ValidationError for negative
/// weights, nonzero weights on disabled letters, and coherence failures
/// f_s(a) f_{s.a}(b) != f_s(b) f_{s.b}(a) (witness "state, a, b").
Valuation build_valuation(const ConcurrentSystem& s, const std::vector<std::vector<double>>& weights,
                          const NumericPolicy& policy = {});
Valuation build_valuation(const ConcurrentSystem& s, const std::vector<std::vector<Rational>>& weights,
                          const NumericPolicy& policy = {});
/// Named entries; unlisted letters weigh zero. Throws SchemaError on unknown
/// or repeated (state, letter) pairs.
Valuation build_valuation(const ConcurrentSystem& s, const std::vector<WeightEntry>& entries,
                          const NumericPolicy& policy = {});

double evaluate(const Valuation& v, State s, const Trace& x);
std::optional<Rational> evaluate_exact(const Valuation& v, State s, const Trace& x);

/// h_s over every clique of the monoid (TraceMonoid::cliques() order), with
/// f_s extended by zero to disabled cliques.
struct MobiusRow {
  std::vector<double> h;
  std::optional<std::vector<Rational>> exact;
};

MobiusRow mobius_at(const Valuation& v, State s);

struct ProbabilisticWitness {
  State state;
  Clique clique;
  double value;
};

struct ProbabilisticVerdict {
  bool probabilistic = true;
  /// Failing (state, clique) pairs: h(e) != 0 or h(c) < 0.
  std::vector<ProbabilisticWitness> witnesses;
};

ProbabilisticVerdict is_probabilistic(const Valuation& v, const NumericPolicy& policy = {});

struct UniformMeasure {
  RootResult root;
  /// Kernel vector of mu(r), positive, scaled so that v[0] = 1.
  std::vector<double> v;
  std::optional<std::vector<Rational>> exact_v;
  Valuation valuation;

  /// Parry cocycle v_t / v_s.
  double gamma(State s, State t) const { return v[static_cast<std::size_t>(t)] / v[static_cast<std::size_t>(s)]; }
  std::optional<Rational> exact_gamma(State s, State t) const;
};

/// Requires an irreducible system, or a single-state system with at least
/// one letter. Throws AnalysisError otherwise, when the kernel of mu(r) is
/// not one-dimensional or not of constant sign, or when the induced
/// valuation is not probabilistic.
UniformMeasure uniform_measure(const ConcurrentSystem& s, const NumericPolicy& policy = {});

struct FirstCliqueLaw {
  std::vector<Clique> cliques;  // nonempty cliques enabled at the state
  std::vector<double> probability;
  std::optional<std::vector<Rational>> exact;
};

/// Throws NotProbabilisticError with a witness when v is not probabilistic.
FirstCliqueLaw first_clique_distribution(const Valuation& v, State s, const NumericPolicy& policy = {});

struct MarkovChain {
  SCDigraph graph;
  /// h of each node.
  std::vector<double> mass;
  std::optional<std::vector<Rational>> exact_mass;
  /// Initial law at each state: (node, probability) over the state's nodes.
  std::vector<std::vector<std::pair<std::size_t, double>>> initial;
  /// Row of each node over its successors, zero entries included.
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<bool> terminal;
};

/// Row of (s,c) is proportional to h_t(d) over successors (t,d); nodes whose
/// successors carry no mass are terminal.
MarkovChain markov_chain(const Valuation& v, const NumericPolicy& policy = {});

/// Nodes with h_s(c) = 0, exactly when the valuation is exact.
std::vector<SCDigraph::Node> null_nodes(const Valuation& v, const NumericPolicy& policy = {});

double cylinder_probability(const Valuation& v, State s, const Trace& x, const NumericPolicy& policy = {});

struct SamplePath {
  std::vector<SCDigraph::Node> nodes;
  bool stopped_at_terminal = false;
};

/// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
inline double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

/// Index drawn from (index, probability) entries by inverse CDF.
std::size_t draw(const std::vector<std::pair<std::size_t, double>>& law, double u);

/// Throws AnalysisError when no mass starts at s or steps < 1.
SamplePath sample(const MarkovChain& chain, State s, int steps, std::uint64_t seed);

}  // namespace tracesys
