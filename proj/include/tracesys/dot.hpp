#pragma once

#include <string>
#include <vector>

#include "tracesys/monoid.hpp"
#include "tracesys/system.hpp"

namespace tracesys::dot {

/// Undirected graph on letters with an edge for every dependent pair a != b.
std::string coxeter(const TraceMonoid& m);
/// States with one labelled edge per defined transition.
std::string states(const ConcurrentSystem& s);
/// Nonempty cliques with an edge c -> d for every normal pair.
std::string cliques(const TraceMonoid& m);
/// Digraph of states-and-cliques; nodes listed in `dashed` get a dashed frame.
std::string sc(const ConcurrentSystem& s, const std::vector<SCDigraph::Node>& dashed = {});

}  // namespace tracesys::dot
