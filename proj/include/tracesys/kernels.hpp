#pragma once

#include <cstdint>
#include <vector>

#include "tracesys/probability.hpp"
#include "tracesys/system.hpp"

namespace tracesys {

/// counts[k][s][t]: distinct executions of length k from s ending in t.
using ExecutionCounts = std::vector<std::vector<std::vector<std::uint64_t>>>;

/// Enumerates executions level by level (x of length k gives x.a of length
/// k+1), deduplicating normal forms. No use of the Moebius matrix, so it
/// serves as an oracle for growth_matrix_counts.
ExecutionCounts execution_counts_serial(const ConcurrentSystem& s, int n);
/// Same result; each level's frontier is expanded across OpenMP threads.
ExecutionCounts execution_counts_parallel(const ConcurrentSystem& s, int n);

std::uint64_t splitmix64(std::uint64_t x);

/// First nodes of `count` independent runs from s; run i draws from an
/// mt19937_64 seeded with splitmix64(seed + i), so the result does not
/// depend on the thread count.
std::vector<std::size_t> sample_first_nodes_serial(const MarkovChain& chain, State s, std::size_t count,
                                                   std::uint64_t seed);
std::vector<std::size_t> sample_first_nodes_parallel(const MarkovChain& chain, State s, std::size_t count,
                                                     std::uint64_t seed);

/// `count` runs of `steps` nodes, run i seeded with splitmix64(seed + i).
std::vector<SamplePath> sample_batch_serial(const MarkovChain& chain, State s, int steps, std::size_t count,
                                            std::uint64_t seed);
std::vector<SamplePath> sample_batch_parallel(const MarkovChain& chain, State s, int steps, std::size_t count,
                                              std::uint64_t seed);

}  // namespace tracesys
