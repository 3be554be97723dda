#include "tracesys/monoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tracesys/error.hpp"

namespace tracesys {

std::vector<Letter> Clique::letters() const {
  std::vector<Letter> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

bool canonical_less(Clique x, Clique y) {
  if (x.size() != y.size()) return x.size() < y.size();
  const auto lx = x.letters();
  const auto ly = y.letters();
  return lx < ly;
}

int Trace::length() const {
  int n = 0;
  for (Clique c : layers_) n += c.size();
  return n;
}

Clique Trace::alphabet() const {
  Clique all;
  for (Clique c : layers_) all = all | c;
  return all;
}

std::vector<Letter> Trace::word() const {
  std::vector<Letter> w;
  for (Clique c : layers_) {
    const auto ls = c.letters();
    w.insert(w.end(), ls.begin(), ls.end());
  }
  return w;
}

bool operator<(const Trace& x, const Trace& y) {
  return std::lexicographical_compare(x.layers_.begin(), x.layers_.end(), y.layers_.begin(), y.layers_.end(),
                                      [](Clique a, Clique b) { return a.bits() < b.bits(); });
}

Clique Lasso::layer(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (cycle.empty()) return Clique{};
  return cycle[(i - prefix.size()) % cycle.size()];
}

// ---- TraceMonoid ------------------------------------------------------------

TraceMonoid TraceMonoid::build(std::vector<std::string> letters,
                               const std::vector<std::pair<std::string, std::string>>& independence) {
  TraceMonoid probe;
  probe.names_ = letters;
  std::vector<std::pair<Letter, Letter>> pairs;
  pairs.reserve(independence.size());
  for (const auto& [a, b] : independence) {
    pairs.emplace_back(probe.letter(a), probe.letter(b));
  }
  return build(std::move(letters), pairs);
}

TraceMonoid TraceMonoid::build(std::vector<std::string> letters,
                               const std::vector<std::pair<Letter, Letter>>& independence) {
  if (letters.size() > static_cast<std::size_t>(kMaxLetters)) {
    throw SchemaError("alphabet has " + std::to_string(letters.size()) + " letters; at most " +
                      std::to_string(kMaxLetters) + " are supported");
  }
  {
    std::set<std::string> seen;
    for (const auto& l : letters) {
      if (l.empty()) throw SchemaError("empty letter name");
      if (!seen.insert(l).second) throw SchemaError("duplicate letter '" + l + "'");
    }
  }
  TraceMonoid m;
  m.names_ = std::move(letters);
  const int n = m.size();
  m.indep_.assign(static_cast<std::size_t>(n), 0U);
  for (const auto& [a, b] : independence) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw SchemaError("independence pair names an unknown letter");
    if (a == b) throw SchemaError("independence must be irreflexive: (" + m.names_[a] + "," + m.names_[a] + ")");
    m.indep_[static_cast<std::size_t>(a)] |= 1U << b;
    m.indep_[static_cast<std::size_t>(b)] |= 1U << a;
  }

  // Recursive subset extension: extend a clique only by letters above its
  // largest member that are independent of every member.
  std::vector<Clique> found;
  auto extend = [&](auto&& self, Clique c, std::uint32_t candidates, Letter from) -> void {
    found.push_back(c);
    for (Letter a = from; a < n; ++a) {
      if ((candidates >> a) & 1U) self(self, c.with(a), candidates & m.indep_[static_cast<std::size_t>(a)], a + 1);
    }
  };
  extend(extend, Clique{}, m.full_mask(), 0);
  std::sort(found.begin(), found.end(), canonical_less);
  m.cliques_ = std::move(found);

  m.index_of_.assign(std::size_t{1} << n, -1);
  for (std::size_t i = 0; i < m.cliques_.size(); ++i) {
    m.index_of_[m.cliques_[i].bits()] = static_cast<std::int32_t>(i);
  }
  return m;
}

std::optional<Letter> TraceMonoid::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

Letter TraceMonoid::letter(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw SchemaError("unknown letter '" + std::string(name) + "'");
}

std::vector<std::pair<Letter, Letter>> TraceMonoid::independence_pairs() const {
  std::vector<std::pair<Letter, Letter>> out;
  for (Letter a = 0; a < size(); ++a) {
    for (Letter b = a + 1; b < size(); ++b) {
      if (independent(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::span<const Clique> TraceMonoid::nonempty_cliques() const {
  return std::span<const Clique>(cliques_).subspan(1);
}

bool TraceMonoid::is_clique(Clique c) const {
  if ((c.bits() & ~full_mask()) != 0) return false;
  return index_of_[c.bits()] >= 0;
}

std::size_t TraceMonoid::clique_index(Clique c) const {
  if (!is_clique(c)) throw SchemaError("not a clique: " + format(c));
  return static_cast<std::size_t>(index_of_[c.bits()]);
}

bool TraceMonoid::is_normal_pair(Clique x, Clique y) const {
  for (std::uint32_t b = y.bits(); b != 0; b &= b - 1) {
    const Letter l = std::countr_zero(b);
    if ((dependence_mask(l) & x.bits()) == 0) return false;
  }
  return true;
}

bool TraceMonoid::is_irreducible() const {
  if (size() <= 1) return true;
  std::uint32_t seen = 1U;
  std::vector<Letter> stack{0};
  while (!stack.empty()) {
    const Letter a = stack.back();
    stack.pop_back();
    const std::uint32_t next = dependence_mask(a) & ~seen;
    seen |= next;
    for (std::uint32_t b = next; b != 0; b &= b - 1) stack.push_back(std::countr_zero(b));
  }
  return seen == full_mask();
}

bool TraceMonoid::is_free_commutative() const {
  return cliques_.size() == (std::size_t{1} << size());
}

Trace TraceMonoid::make_trace(std::vector<Clique> layers) const {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].empty()) throw SchemaError("trace layers must be nonempty cliques");
    if (!is_clique(layers[i])) throw SchemaError("layer " + format(layers[i]) + " is not a clique");
    if (i > 0 && !is_normal_pair(layers[i - 1], layers[i])) {
      throw SchemaError("layers " + format(layers[i - 1]) + " -> " + format(layers[i]) + " are not a normal pair");
    }
  }
  return Trace(std::move(layers));
}

void TraceMonoid::validate(const Lasso& w) const {
  auto check_clique = [&](Clique c, bool allow_empty) {
    if (!is_clique(c)) throw SchemaError("lasso layer " + format(c) + " is not a clique");
    if (!allow_empty && c.empty()) throw SchemaError("lasso cycle layers must be nonempty");
  };
  for (Clique c : w.prefix) check_clique(c, true);
  for (Clique c : w.cycle) check_clique(c, false);
  auto check_pair = [&](Clique x, Clique y) {
    if (!is_normal_pair(x, y)) {
      throw SchemaError("lasso is not a normal sequence at " + format(x) + " -> " + format(y));
    }
  };
  for (std::size_t i = 1; i < w.prefix.size(); ++i) check_pair(w.prefix[i - 1], w.prefix[i]);
  if (!w.prefix.empty() && !w.cycle.empty()) check_pair(w.prefix.back(), w.cycle.front());
  for (std::size_t i = 1; i < w.cycle.size(); ++i) check_pair(w.cycle[i - 1], w.cycle[i]);
  if (!w.cycle.empty()) check_pair(w.cycle.back(), w.cycle.front());
}

std::string TraceMonoid::format(Clique c) const {
  if (c.empty()) return "ε";
  std::string s;
  for (Letter a : c.letters()) {
    if (!s.empty()) s += "·";
    s += names_.at(static_cast<std::size_t>(a));
  }
  return s;
}

std::string TraceMonoid::format(const Trace& x) const {
  if (x.empty()) return "ε";
  std::string s;
  for (Clique c : x.layers()) {
    if (!s.empty()) s += " | ";
    s += format(c);
  }
  return s;
}

std::vector<std::string> TraceMonoid::names_of(Clique c) const {
  std::vector<std::string> out;
  for (Letter a : c.letters()) out.push_back(names_.at(static_cast<std::size_t>(a)));
  return out;
}

Clique TraceMonoid::clique_of(const std::vector<std::string>& names) const {
  Clique c;
  for (const auto& n : names) {
    const Letter a = letter(n);
    if (c.contains(a)) throw SchemaError("letter '" + n + "' repeated in clique");
    c = c.with(a);
  }
  if (!is_clique(c)) throw SchemaError("letters " + format(c) + " are not pairwise independent");
  return c;
}

// ---- trace operations --------------------------------------------------------

Trace normalize(const TraceMonoid& m, std::span<const Letter> word) {
  std::vector<Clique> layers;
  // top[a]: number of the highest layer (1-based) holding letter a, 0 if none.
  std::vector<int> top(static_cast<std::size_t>(m.size()), 0);
  for (Letter a : word) {
    if (a < 0 || a >= m.size()) throw SchemaError("letter index out of range");
    int level = 0;
    for (std::uint32_t b = m.dependence_mask(a); b != 0; b &= b - 1) {
      level = std::max(level, top[static_cast<std::size_t>(std::countr_zero(b))]);
    }
    if (static_cast<std::size_t>(level) == layers.size()) layers.emplace_back();
    layers[static_cast<std::size_t>(level)] = layers[static_cast<std::size_t>(level)].with(a);
    top[static_cast<std::size_t>(a)] = level + 1;
  }
  return m.make_trace(std::move(layers));
}

Trace normalize(const TraceMonoid& m, const std::vector<std::string>& word) {
  std::vector<Letter> w;
  w.reserve(word.size());
  for (const auto& s : word) w.push_back(m.letter(s));
  return normalize(m, w);
}

Trace clique_trace(const TraceMonoid& m, Clique c) {
  if (c.empty()) return Trace{};
  return m.make_trace({c});
}

Trace concat(const TraceMonoid& m, const Trace& x, const Trace& y) {
  auto w = x.word();
  const auto wy = y.word();
  w.insert(w.end(), wy.begin(), wy.end());
  return normalize(m, w);
}

namespace {

// Removes one bottom occurrence of a, which must lie in the first layer.
Trace drop_minimal(const TraceMonoid& m, const Trace& y, Letter a) {
  auto w = y.word();
  const auto it = std::find(w.begin(), w.end(), a);
  w.erase(it);
  return normalize(m, w);
}

}  // namespace

std::optional<Trace> left_cancel(const TraceMonoid& m, const Trace& x, const Trace& y) {
  if (x.length() > y.length()) return std::nullopt;
  Trace rest = y;
  // The letters that left-divide a trace are exactly its first-layer letters.
  for (Letter a : x.word()) {
    if (!rest.first_layer().contains(a)) return std::nullopt;
    rest = drop_minimal(m, rest, a);
  }
  return rest;
}

bool divides(const TraceMonoid& m, const Trace& x, const Trace& y) {
  return left_cancel(m, x, y).has_value();
}

bool divides(const TraceMonoid& m, const Trace& x, const Lasso& w) {
  std::uint32_t blocked = 0;  // letters depending on a piece of w missing from x
  for (std::size_t i = 0; i < x.layers().size(); ++i) {
    const Clique have = x.layers()[i];
    const Clique full = w.layer(i);
    if (!have.subset_of(full) || (have.bits() & blocked) != 0) return false;
    for (Letter a : Clique(full.bits() & ~have.bits()).letters()) blocked |= m.dependence_mask(a);
  }
  return true;
}

Trace meet(const TraceMonoid& m, const Trace& x, const Trace& y) {
  std::vector<Letter> common;
  Trace rx = x;
  Trace ry = y;
  for (;;) {
    const Clique shared = rx.first_layer() & ry.first_layer();
    if (shared.empty()) break;
    const Letter a = shared.lowest();
    common.push_back(a);
    rx = drop_minimal(m, rx, a);
    ry = drop_minimal(m, ry, a);
  }
  return normalize(m, common);
}

std::optional<Trace> join(const TraceMonoid& m, const Trace& x, const Trace& y) {
  const Trace g = meet(m, x, y);
  const Trace rx = *left_cancel(m, g, x);
  const Trace ry = *left_cancel(m, g, y);
  const Clique ax = rx.alphabet();
  const Clique ay = ry.alphabet();
  for (Letter a : ax.letters()) {
    if ((ay.bits() & ~m.independence_mask(a)) != 0) return std::nullopt;
  }
  return concat(m, concat(m, g, rx), ry);
}

}  // namespace tracesys
