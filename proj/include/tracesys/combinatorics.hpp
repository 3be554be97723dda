#pragma once

#include <span>
#include <vector>

#include "tracesys/monoid.hpp"
#include "tracesys/polynomial.hpp"

namespace tracesys {

/// sum over cliques c of (-1)^|c| z^|c|.
Polynomial mobius_polynomial(const TraceMonoid& m);

/// Number of traces of each length 0..n, from the recurrence G(z)mu(z) = 1.
std::vector<BigInt> growth_counts(const TraceMonoid& m, int n);

/// Functions on cliques are vectors indexed like TraceMonoid::cliques().
/// h(c) = sum_{c' >= c} (-1)^{|c'|-|c|} f(c').
template <class T>
std::vector<T> mobius_transform(const TraceMonoid& m, std::span<const T> f) {
  const auto& cl = m.cliques();
  std::vector<T> h(cl.size(), T(0));
  for (std::size_t i = 0; i < cl.size(); ++i) {
    for (std::size_t j = 0; j < cl.size(); ++j) {
      if (!cl[i].subset_of(cl[j])) continue;
      if ((cl[j].size() - cl[i].size()) % 2 == 0) {
        h[i] += f[j];
      } else {
        h[i] -= f[j];
      }
    }
  }
  return h;
}

/// f(c) = sum_{c' >= c} h(c').
template <class T>
std::vector<T> mobius_inverse(const TraceMonoid& m, std::span<const T> h) {
  const auto& cl = m.cliques();
  std::vector<T> f(cl.size(), T(0));
  for (std::size_t i = 0; i < cl.size(); ++i) {
    for (std::size_t j = 0; j < cl.size(); ++j) {
      if (cl[i].subset_of(cl[j])) f[i] += h[j];
    }
  }
  return f;
}

/// Restricts a trace monoid to the letters outside `removed`, keeping the
/// declaration order of the survivors.
TraceMonoid restrict_monoid(const TraceMonoid& m, Clique removed);

/// Canonical surjection M(S,I) -> M(S,J) for I contained in J. Throws
/// SchemaError on alphabet mismatch or non-nested independence.
Trace project(const TraceMonoid& from, const TraceMonoid& to, const Trace& x);
/// Image of an eventually periodic generalized trace; the result is again a
/// lasso, with the shortest period and prefix.
Lasso project(const TraceMonoid& from, const TraceMonoid& to, const Lasso& w);

/// Shortest equivalent description of the same generalized trace.
Lasso minimize(Lasso w);

struct CliqueDigraph {
  std::vector<Clique> nodes;  // nonempty cliques, canonical order
  std::vector<std::vector<std::size_t>> successors;
};

CliqueDigraph clique_digraph(const TraceMonoid& m);

/// p_k = number of traces of length k dividing w, for k = 0..n.
std::vector<BigInt> divisor_counts(const TraceMonoid& m, const Lasso& w, int n);

BigInt binomial(long n, long k);

}  // namespace tracesys
