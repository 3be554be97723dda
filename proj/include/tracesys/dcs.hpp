#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracesys/probability.hpp"
#include "tracesys/system.hpp"

namespace tracesys {

struct DeterminismVerdict {
  bool deterministic = true;
  /// On failure: the state, plus either two dependent enabled letters or
  /// the disabled full clique of enabled letters.
  std::optional<State> state;
  std::optional<std::pair<Letter, Letter>> dependent_pair;
  bool full_clique_disabled = false;
  std::string witness;
};

/// Every state enables pairwise independent letters, and their full clique.
DeterminismVerdict is_deterministic(const ConcurrentSystem& s);

/// Weight 1 on every enabled letter.
Valuation dominant_valuation(const ConcurrentSystem& s);

/// Execution as a path in the digraph of states-and-cliques.
struct ExecutionLasso {
  std::vector<SCDigraph::Node> prefix;
  std::vector<SCDigraph::Node> cycle;

  Lasso trace() const;
  bool finite() const { return cycle.empty(); }
};

/// The maximal execution from s: repeatedly play every enabled letter at
/// once, closing the cycle on the first repeated state. Throws AnalysisError
/// unless s is deterministic.
ExecutionLasso max_execution(const ConcurrentSystem& sys, State s);

enum class Cardinality { empty, countable, uncountable };

std::string to_string(Cardinality c);

struct BoundaryCardinality {
  Cardinality cls = Cardinality::empty;
  bool singleton = false;
};

/// Class of the set of infinite executions from s, read off the part of the
/// digraph of states-and-cliques reachable from s and leading to a cycle:
/// empty if there is none, uncountable if a strongly connected component is
/// more than a simple cycle, countable otherwise. Singleton when that part
/// is one path running into one cycle.
BoundaryCardinality boundary_cardinality(const ConcurrentSystem& sys, State s);

struct DcsReport {
  bool irreducible = false;
  DeterminismVerdict deterministic;
  bool dominant_probabilistic = false;
  /// Uniqueness is not decided; it is reported as implied by the others when the
  /// system is irreducible, and left open otherwise.
  std::optional<bool> dominant_unique;
  RootResult root;
  bool root_is_one = false;
  bool some_countable = false;
  bool every_countable = false;
  bool some_singleton = false;
  bool every_singleton = false;
  std::vector<BoundaryCardinality> boundary;  // by state
  /// Set for irreducible systems: whether all evaluated conditions agree.
  std::optional<bool> consistent;
};

DcsReport dcs_report(const ConcurrentSystem& s, const NumericPolicy& policy = {});

struct NullCycleCheck {
  bool ok = true;  // no cycle made of null nodes
  std::vector<SCDigraph::Node> cycle;
};

NullCycleCheck null_cycle_check(const Valuation& v, const NumericPolicy& policy = {});

struct Corollary1Check {
  bool holds = true;
  std::vector<BigInt> counts;
  std::vector<BigInt> bounds;
};

/// p_k <= binomial(k + |S| - 1, |S| - 1) for k = 0..n.
Corollary1Check corollary1_check(const TraceMonoid& m, const Lasso& w, int n);

}  // namespace tracesys
