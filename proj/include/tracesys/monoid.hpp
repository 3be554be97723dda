#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tracesys {

/// Letters are identified by their declaration index in the alphabet.
using Letter = int;

/// Alphabets are capped so that every letter subset fits a 32-bit mask and
/// the 2^|alphabet| clique lookup table stays small.
inline constexpr int kMaxLetters = 16;

/// A set of pairwise independent letters, stored as a bit mask over
/// declaration indices. The empty clique is the unit trace.
class Clique {
 public:
  constexpr Clique() = default;
  constexpr explicit Clique(std::uint32_t bits) : bits_(bits) {}

  static constexpr Clique of(Letter a) { return Clique(std::uint32_t{1} << a); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Letter a) const { return (bits_ >> a) & 1U; }
  constexpr bool subset_of(Clique other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr Clique with(Letter a) const { return Clique(bits_ | (std::uint32_t{1} << a)); }
  constexpr Clique without(Letter a) const { return Clique(bits_ & ~(std::uint32_t{1} << a)); }
  constexpr Letter lowest() const { return std::countr_zero(bits_); }

  /// Members in increasing declaration order.
  std::vector<Letter> letters() const;

  friend constexpr Clique operator|(Clique x, Clique y) { return Clique(x.bits_ | y.bits_); }
  friend constexpr Clique operator&(Clique x, Clique y) { return Clique(x.bits_ & y.bits_); }
  friend constexpr bool operator==(Clique x, Clique y) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Canonical clique order: by size, then lexicographically on the sorted
/// member lists. This is the order of TraceMonoid::cliques().
bool canonical_less(Clique x, Clique y);

/// A finite trace in Cartier-Foata normal form: a normal sequence of
/// nonempty cliques. The empty layer sequence is the empty trace.
class Trace {
 public:
  Trace() = default;

  const std::vector<Clique>& layers() const { return layers_; }
  bool empty() const { return layers_.empty(); }
  int height() const { return static_cast<int>(layers_.size()); }
  int length() const;
  Clique first_layer() const { return layers_.empty() ? Clique{} : layers_.front(); }
  Clique alphabet() const;

  /// A representative word: layers bottom-up, letters within a layer in
  /// declaration order.
  std::vector<Letter> word() const;

  friend bool operator==(const Trace&, const Trace&) = default;
  friend bool operator<(const Trace& x, const Trace& y);

 private:
  friend class TraceMonoid;
  explicit Trace(std::vector<Clique> layers) : layers_(std::move(layers)) {}
  std::vector<Clique> layers_;
};

/// Eventually periodic generalized trace: prefix followed by the cycle
/// repeated forever. An empty cycle encodes the finite trace `prefix`.
struct Lasso {
  std::vector<Clique> prefix;
  std::vector<Clique> cycle;

  bool finite() const { return cycle.empty(); }
  /// Layer at 0-based position i of the unrolled sequence, the empty clique
  /// past the end of a finite lasso.
  Clique layer(std::size_t i) const;
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

class TraceMonoid {
 public:
  TraceMonoid() = default;

  /// Throws SchemaError on duplicate or unknown letters, reflexive pairs, or
  /// alphabets above kMaxLetters. Pairs are symmetrised.
  static TraceMonoid build(std::vector<std::string> letters,
                           const std::vector<std::pair<std::string, std::string>>& independence);
  static TraceMonoid build(std::vector<std::string> letters,
                           const std::vector<std::pair<Letter, Letter>>& independence);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& letters() const { return names_; }
  const std::string& name(Letter a) const { return names_.at(static_cast<std::size_t>(a)); }
  std::optional<Letter> find(std::string_view name) const;
  /// Like find, but throws SchemaError for unknown names.
  Letter letter(std::string_view name) const;

  bool independent(Letter a, Letter b) const { return (indep_[static_cast<std::size_t>(a)] >> b) & 1U; }
  std::uint32_t independence_mask(Letter a) const { return indep_[static_cast<std::size_t>(a)]; }
  /// Letters dependent on a, including a itself.
  std::uint32_t dependence_mask(Letter a) const { return full_mask() & ~indep_[static_cast<std::size_t>(a)]; }
  std::uint32_t full_mask() const { return size() == 32 ? ~0U : ((1U << size()) - 1U); }
  /// Independence pairs (a,b) with a < b, in declaration order.
  std::vector<std::pair<Letter, Letter>> independence_pairs() const;

  /// All cliques in canonical order, the empty clique first.
  const std::vector<Clique>& cliques() const { return cliques_; }
  std::span<const Clique> nonempty_cliques() const;
  bool is_clique(Clique c) const;
  /// Position of c in cliques(); c must be a clique.
  std::size_t clique_index(Clique c) const;

  /// x -> y: every letter of y depends on some letter of x.
  bool is_normal_pair(Clique x, Clique y) const;

  /// The dependence (Coxeter) graph is connected.
  bool is_irreducible() const;
  bool is_free_commutative() const;

  /// Builds a trace from layers, checking that they form a normal sequence
  /// of nonempty cliques.
  Trace make_trace(std::vector<Clique> layers) const;
  /// Throws SchemaError when the lasso is not a normal sequence (including
  /// the prefix-to-cycle junction and the cycle wrap-around).
  void validate(const Lasso& w) const;

  std::string format(Clique c) const;
  std::string format(const Trace& x) const;
  std::vector<std::string> names_of(Clique c) const;
  Clique clique_of(const std::vector<std::string>& names) const;

  friend bool operator==(const TraceMonoid& x, const TraceMonoid& y) {
    return x.names_ == y.names_ && x.indep_ == y.indep_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint32_t> indep_;
  std::vector<Clique> cliques_;
  std::vector<std::int32_t> index_of_;  // mask -> clique position, -1 if not a clique
};

// ---- trace operations -----------------------------------------------------

/// Cartier-Foata normal form by heap stacking: each letter lands one layer
/// above the highest layer holding a letter it depends on.
Trace normalize(const TraceMonoid& m, std::span<const Letter> word);
Trace normalize(const TraceMonoid& m, const std::vector<std::string>& word);

Trace clique_trace(const TraceMonoid& m, Clique c);
Trace concat(const TraceMonoid& m, const Trace& x, const Trace& y);

/// z with x.z = y, or nullopt when x does not left-divide y.
std::optional<Trace> left_cancel(const TraceMonoid& m, const Trace& x, const Trace& y);
bool divides(const TraceMonoid& m, const Trace& x, const Trace& y);
/// x is a prefix of the (possibly infinite) heap w: every layer of x lies in
/// the layer of w at the same height, and no letter of x depends on a piece
/// of w lower down that x leaves out.
bool divides(const TraceMonoid& m, const Trace& x, const Lasso& w);

Trace meet(const TraceMonoid& m, const Trace& x, const Trace& y);
std::optional<Trace> join(const TraceMonoid& m, const Trace& x, const Trace& y);

}  // namespace tracesys
