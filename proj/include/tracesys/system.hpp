#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracesys/monoid.hpp"
#include "tracesys/polynomial.hpp"

namespace tracesys {

using State = int;
/// The sink state; absorbing for every letter.
inline constexpr State kBottom = -1;

struct ActionEntry {
  std::string from;
  std::string letter;
  std::string to;
};

/// A trace monoid acting on a finite state set plus the sink.
class ConcurrentSystem {
 public:
  ConcurrentSystem() = default;

  /// Throws SchemaError for unknown or duplicate names and duplicate
  /// (state, letter) entries, ValidationError when some independent pair
  /// a, b gives s.a.b != s.b.a (witness "state, a, b").
  static ConcurrentSystem build(TraceMonoid m, std::vector<std::string> states,
                                const std::vector<ActionEntry>& action);
  /// The monoid acting on the single state "*".
  static ConcurrentSystem single_state(TraceMonoid m);

  const TraceMonoid& monoid() const { return monoid_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& states() const { return names_; }
  const std::string& state_name(State s) const { return names_.at(static_cast<std::size_t>(s)); }
  std::optional<State> find_state(std::string_view name) const;
  /// Like find_state, but throws SchemaError.
  State state(std::string_view name) const;

  State act(State s, Letter a) const {
    return s == kBottom ? kBottom : table_[static_cast<std::size_t>(s) * stride_ + static_cast<std::size_t>(a)];
  }
  State act(State s, std::span<const Letter> word) const;
  State act(State s, const Trace& x) const { return act(s, x.word()); }
  State act(State s, Clique c) const;

  /// Sigma_s.
  Clique enabled_letters(State s) const { return enabled_[static_cast<std::size_t>(s)]; }
  /// Cliques c with s.c != bottom, canonical order, the empty clique first.
  const std::vector<Clique>& cliques_at(State s) const { return cliques_[static_cast<std::size_t>(s)]; }
  std::span<const Clique> nonempty_cliques_at(State s) const;
  std::vector<Clique> cliques_between(State from, State to) const;

  /// Defined transitions (from, letter, to) ordered by state then letter.
  std::vector<std::tuple<State, Letter, State>> transitions() const;

  friend bool operator==(const ConcurrentSystem& x, const ConcurrentSystem& y) {
    return x.monoid_ == y.monoid_ && x.names_ == y.names_ && x.table_ == y.table_;
  }

 private:
  void derive();

  TraceMonoid monoid_;
  std::vector<std::string> names_;
  std::size_t stride_ = 0;
  std::vector<State> table_;  // state * stride + letter -> target or kBottom
  std::vector<Clique> enabled_;
  std::vector<std::vector<Clique>> cliques_;
};

/// Digraph of states-and-cliques: nodes (s, c) with c a nonempty clique
/// enabled at s; (s,c) -> (t,d) when t = s.c and c -> d is a normal pair.
struct SCDigraph {
  struct Node {
    State state;
    Clique clique;
    friend bool operator==(const Node&, const Node&) = default;
  };
  std::vector<Node> nodes;  // by state, then canonical clique order
  std::vector<std::vector<std::size_t>> successors;

  std::optional<std::size_t> find(State s, Clique c) const;
  /// Nodes whose state is s, in order.
  std::vector<std::size_t> nodes_at(State s) const;
};

SCDigraph sc_digraph(const ConcurrentSystem& s);

struct SystemClassification {
  bool trivial = false;
  bool homogeneous = false;
  bool alive = false;
  bool monoid_irreducible = false;
  bool irreducible = false;
};

SystemClassification classify(const ConcurrentSystem& s);

PolyMatrix mobius_matrix(const ConcurrentSystem& s);
Polynomial theta(const ConcurrentSystem& s);
RootResult characteristic_root(const ConcurrentSystem& s);
/// G_0..G_n; entry (a,b) of G_k counts executions of length k from a to b.
std::vector<IntMatrix> growth_matrix_counts(const ConcurrentSystem& s, int n);

/// Same states, letters in `removed` dropped from the monoid and the table.
ConcurrentSystem restrict(const ConcurrentSystem& s, Clique removed);

struct SpectralEntry {
  Letter letter;
  RootResult root;
  bool strict;
};

struct SpectralReport {
  RootResult root;
  std::vector<SpectralEntry> entries;
  bool all_strict;
};

/// Root of every single-letter restriction; strict when r^a > r + margin.
SpectralReport spectral_check(const ConcurrentSystem& s, double margin = 1e-6);

struct PetriNet {
  struct Transition {
    std::string name;
    std::vector<std::string> pre;
    std::vector<std::string> post;
  };
  std::vector<std::string> places;
  std::vector<Transition> transitions;
  std::vector<std::string> initial;
};

struct PetriImport {
  ConcurrentSystem system;
  /// Marking of each state, places in declaration order.
  std::vector<std::vector<std::string>> markings;
};

inline constexpr std::size_t kDefaultMaxMarkings = 100000;

/// Reachable markings in breadth-first order (transitions tried in
/// declaration order), named "α0", "α1", ... Transitions are independent
/// when their neighbourhoods pre + post are disjoint. Throws SchemaError on
/// malformed nets, UnsafeNetError when a firing would put a second token in
/// a place, AnalysisError above max_markings.
PetriImport from_petri(const PetriNet& net, std::size_t max_markings = kDefaultMaxMarkings);

}  // namespace tracesys
