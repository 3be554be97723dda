#include "tracesys/kernels.hpp"

#include <algorithm>
#include <random>

#include "tracesys/error.hpp"

namespace tracesys {

namespace {

struct Execution {
  Trace trace;
  State end;
  friend bool operator<(const Execution& x, const Execution& y) { return x.trace < y.trace; }
  friend bool operator==(const Execution& x, const Execution& y) { return x.trace == y.trace; }
};

void extend(const ConcurrentSystem& s, const Execution& x, std::vector<Execution>& out) {
  const auto& m = s.monoid();
  for (Letter a : s.enabled_letters(x.end).letters()) {
    auto w = x.trace.word();
    w.push_back(a);
    out.push_back({normalize(m, w), s.act(x.end, a)});
  }
}

void dedup(std::vector<Execution>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <bool Parallel>
ExecutionCounts execution_counts(const ConcurrentSystem& s, int n) {
  if (n < 0) return {};
  const auto ns = static_cast<std::size_t>(s.size());
  ExecutionCounts counts(static_cast<std::size_t>(n) + 1,
                         std::vector<std::vector<std::uint64_t>>(ns, std::vector<std::uint64_t>(ns, 0)));
  for (State from = 0; from < s.size(); ++from) {
    std::vector<Execution> level{{Trace{}, from}};
    for (int k = 0;; ++k) {
      for (const auto& x : level) ++counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(from)][static_cast<std::size_t>(x.end)];
      if (k == n) break;
      std::vector<Execution> next;
      if constexpr (Parallel) {
        const auto size = static_cast<std::ptrdiff_t>(level.size());
#pragma omp parallel
        {
          std::vector<Execution> local;
#pragma omp for schedule(static) nowait
          for (std::ptrdiff_t i = 0; i < size; ++i) extend(s, level[static_cast<std::size_t>(i)], local);
          dedup(local);
#pragma omp critical
          next.insert(next.end(), local.begin(), local.end());
        }
      } else {
        for (const auto& x : level) extend(s, x, next);
      }
      dedup(next);
      level = std::move(next);
    }
  }
  return counts;
}

std::size_t first_node(const MarkovChain& chain, State s, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return draw(chain.initial[static_cast<std::size_t>(s)], unit_uniform(gen()));
}

void check_start(const MarkovChain& chain, State s) {
  const auto& init = chain.initial.at(static_cast<std::size_t>(s));
  double total = 0;
  for (const auto& [i, p] : init) total += p;
  if (init.empty() || !(total > 0)) throw AnalysisError("no infinite execution starts at this state");
}

}  // namespace

ExecutionCounts execution_counts_serial(const ConcurrentSystem& s, int n) { return execution_counts<false>(s, n); }

ExecutionCounts execution_counts_parallel(const ConcurrentSystem& s, int n) { return execution_counts<true>(s, n); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::size_t> sample_first_nodes_serial(const MarkovChain& chain, State s, std::size_t count,
                                                   std::uint64_t seed) {
  check_start(chain, s);
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first_node(chain, s, splitmix64(seed + i));
  return out;
}

std::vector<std::size_t> sample_first_nodes_parallel(const MarkovChain& chain, State s, std::size_t count,
                                                     std::uint64_t seed) {
  check_start(chain, s);
  std::vector<std::size_t> out(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = first_node(chain, s, splitmix64(seed + static_cast<std::uint64_t>(i)));
  }
  return out;
}

std::vector<SamplePath> sample_batch_serial(const MarkovChain& chain, State s, int steps, std::size_t count,
                                            std::uint64_t seed) {
  std::vector<SamplePath> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample(chain, s, steps, splitmix64(seed + i)));
  return out;
}

std::vector<SamplePath> sample_batch_parallel(const MarkovChain& chain, State s, int steps, std::size_t count,
                                              std::uint64_t seed) {
  check_start(chain, s);
  if (steps < 1) throw AnalysisError("sampling needs at least one step");
  std::vector<SamplePath> out(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = sample(chain, s, steps, splitmix64(seed + static_cast<std::uint64_t>(i)));
  }
  return out;
}

}  // namespace tracesys
