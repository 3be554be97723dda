#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tracesys/monoid.hpp"
#include "tracesys/system.hpp"

namespace tracesys::testing {

inline TraceMonoid monoid_m1() {
  std::vector<std::string> letters{"a0", "a1", "a2", "a3", "a4"};
  std::vector<std::pair<Letter, Letter>> pairs;
  for (Letter i = 0; i < 5; ++i) {
    for (Letter j = i + 2; j < 5; ++j) pairs.emplace_back(i, j);
  }
  return TraceMonoid::build(letters, pairs);
}

inline TraceMonoid monoid_m2() {
  return TraceMonoid::build({"a", "b", "c", "d"}, std::vector<std::pair<std::string, std::string>>{{"a", "c"}, {"b", "d"}});
}

inline TraceMonoid monoid_m3() {
  return TraceMonoid::build({"a", "b", "c"}, std::vector<std::pair<std::string, std::string>>{{"a", "c"}, {"b", "c"}});
}

inline TraceMonoid free_monoid(int n) {
  std::vector<std::string> letters;
  for (int i = 0; i < n; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
  return TraceMonoid::build(letters, std::vector<std::pair<Letter, Letter>>{});
}

inline TraceMonoid free_commutative(const std::vector<std::string>& letters) {
  std::vector<std::pair<Letter, Letter>> pairs;
  const auto n = static_cast<Letter>(letters.size());
  for (Letter i = 0; i < n; ++i) {
    for (Letter j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return TraceMonoid::build(letters, pairs);
}

inline TraceMonoid free_commutative(int n) {
  std::vector<std::string> letters;
  for (int i = 0; i < n; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
  return free_commutative(letters);
}

/// Every word congruent to w, by closure under adjacent independent swaps.
inline std::set<std::vector<Letter>> congruence_class(const TraceMonoid& m, const std::vector<Letter>& w) {
  std::set<std::vector<Letter>> seen{w};
  std::deque<std::vector<Letter>> todo{w};
  while (!todo.empty()) {
    auto u = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      if (!m.independent(u[i], u[i + 1])) continue;
      auto v = u;
      std::swap(v[i], v[i + 1]);
      if (seen.insert(v).second) todo.push_back(std::move(v));
    }
  }
  return seen;
}

/// Distinct left divisors of y, from the prefixes of its representatives.
inline std::set<std::vector<Letter>> divisor_words(const TraceMonoid& m, const Trace& y) {
  std::set<std::vector<Letter>> out;
  for (const auto& u : congruence_class(m, y.word())) {
    for (std::size_t k = 0; k <= u.size(); ++k) {
      out.insert(normalize(m, std::span<const Letter>(u.data(), k)).word());
    }
  }
  return out;
}

inline std::vector<Trace> divisors_brute(const TraceMonoid& m, const Trace& y) {
  std::vector<Trace> out;
  for (const auto& w : divisor_words(m, y)) out.push_back(normalize(m, w));
  return out;
}

/// Traces grouped by length, from repeated right multiplication by letters.
inline std::vector<std::vector<Trace>> traces_by_length(const TraceMonoid& m, int n) {
  std::vector<std::vector<Trace>> out{{Trace{}}};
  for (int k = 1; k <= n; ++k) {
    std::set<Trace> next;
    for (const Trace& x : out.back()) {
      auto w = x.word();
      for (Letter a = 0; a < m.size(); ++a) {
        w.push_back(a);
        next.insert(normalize(m, w));
        w.pop_back();
      }
    }
    out.emplace_back(next.begin(), next.end());
  }
  return out;
}


/// Four slots in a ring; piece a covers slots 0,1, b 1,2, c 2,3, d 3,0. A
/// piece plays when its two slots agree and flips both.
inline ConcurrentSystem system_s1() {
  const std::vector<std::string> states{"0000", "1100", "0011", "0110", "1001", "1111"};
  std::vector<ActionEntry> action;
  const std::string letters = "abcd";
  for (const auto& st : states) {
    for (int k = 0; k < 4; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const auto j = static_cast<std::size_t>((k + 1) % 4);
      if (st[i] != st[j]) continue;
      std::string to = st;
      to[i] = to[i] == '0' ? '1' : '0';
      to[j] = to[j] == '0' ? '1' : '0';
      action.push_back({st, std::string(1, letters[i]), to});
    }
  }
  return ConcurrentSystem::build(monoid_m2(), states, action);
}

inline TraceMonoid monoid_s2() {
  return TraceMonoid::build({"a", "b", "c", "d"}, std::vector<std::pair<std::string, std::string>>{{"a", "d"}, {"b", "d"}});
}

inline ConcurrentSystem system_s2() {
  return ConcurrentSystem::build(monoid_s2(), {"α0", "α1"},
                                 {{"α0", "a", "α0"}, {"α0", "b", "α1"}, {"α0", "d", "α0"},
                                  {"α1", "c", "α0"}, {"α1", "d", "α1"}});
}

inline ConcurrentSystem system_s3() {
  std::vector<std::string> letters{"a0", "a1", "a2", "a3"};
  std::vector<std::pair<Letter, Letter>> pairs{{0, 2}, {0, 3}, {1, 3}};
  std::vector<std::string> states;
  for (int i = 0; i <= 8; ++i) states.push_back(std::to_string(i));
  return ConcurrentSystem::build(TraceMonoid::build(letters, pairs), states,
                                 {{"0", "a0", "1"}, {"0", "a2", "2"}, {"1", "a2", "3"}, {"2", "a0", "3"},
                                  {"2", "a3", "5"}, {"3", "a1", "4"}, {"3", "a3", "6"}, {"4", "a3", "7"},
                                  {"5", "a0", "6"}, {"6", "a1", "7"}, {"7", "a2", "8"}, {"8", "a1", "0"}});
}

inline ConcurrentSystem system_s4() {
  return ConcurrentSystem::build(monoid_m3(), {"α0", "α1", "β0", "β1"},
                                 {{"α0", "a", "α1"}, {"α0", "c", "β0"}, {"α1", "b", "α0"}, {"α1", "c", "β1"},
                                  {"β0", "a", "β1"}, {"β1", "b", "β0"}});
}

inline PetriNet petri_fig6() {
  PetriNet net;
  net.places = {"A", "B", "C"};
  net.transitions = {{"a", {"A"}, {"A"}}, {"b", {"A"}, {"B"}}, {"c", {"B", "C"}, {"A", "C"}}, {"d", {"C"}, {"C"}}};
  net.initial = {"A", "C"};
  return net;
}

/// Executions of length k from s to t, by enumerating traces letter by letter.
inline std::vector<std::vector<std::vector<long>>> execution_counts_brute(const ConcurrentSystem& s, int n) {
  const auto& m = s.monoid();
  const auto ns = static_cast<std::size_t>(s.size());
  std::vector<std::vector<std::vector<long>>> out;
  for (State from = 0; from < s.size(); ++from) {
    std::set<Trace> level{Trace{}};
    for (int k = 0; k <= n; ++k) {
      if (out.size() <= static_cast<std::size_t>(k)) out.emplace_back(ns, std::vector<long>(ns, 0));
      for (const Trace& x : level) ++out[static_cast<std::size_t>(k)][static_cast<std::size_t>(from)][static_cast<std::size_t>(s.act(from, x))];
      std::set<Trace> next;
      for (const Trace& x : level) {
        auto w = x.word();
        for (Letter a = 0; a < m.size(); ++a) {
          w.push_back(a);
          if (s.act(from, std::span<const Letter>(w)) != kBottom) next.insert(normalize(m, w));
          w.pop_back();
        }
      }
      level = std::move(next);
    }
  }
  return out;
}

}  // namespace tracesys::testing
