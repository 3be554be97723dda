#include "tracesys/dot.hpp"

#include <algorithm>
#include <sstream>

namespace tracesys::dot {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string coxeter(const TraceMonoid& m) {
  std::ostringstream out;
  out << "graph coxeter {\n";
  for (Letter a = 0; a < m.size(); ++a) out << "  " << quote(m.name(a)) << ";\n";
  for (Letter a = 0; a < m.size(); ++a) {
    for (Letter b = a + 1; b < m.size(); ++b) {
      if (!m.independent(a, b)) out << "  " << quote(m.name(a)) << " -- " << quote(m.name(b)) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string states(const ConcurrentSystem& s) {
  std::ostringstream out;
  out << "digraph states {\n";
  for (State st = 0; st < s.size(); ++st) out << "  " << quote(s.state_name(st)) << ";\n";
  for (const auto& [from, a, to] : s.transitions()) {
    out << "  " << quote(s.state_name(from)) << " -> " << quote(s.state_name(to))
        << " [label=" << quote(s.monoid().name(a)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string cliques(const TraceMonoid& m) {
  std::ostringstream out;
  out << "digraph cliques {\n";
  const auto cs = m.nonempty_cliques();
  for (std::size_t i = 0; i < cs.size(); ++i) out << "  c" << i << " [label=" << quote(m.format(cs[i])) << "];\n";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (m.is_normal_pair(cs[i], cs[j])) out << "  c" << i << " -> c" << j << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string sc(const ConcurrentSystem& s, const std::vector<SCDigraph::Node>& dashed) {
  const auto g = sc_digraph(s);
  std::ostringstream out;
  out << "digraph sc {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    out << "  n" << i << " [label=" << quote("(" + s.state_name(n.state) + ", " + s.monoid().format(n.clique) + ")");
    if (std::find(dashed.begin(), dashed.end(), n) != dashed.end()) out << ", style=dashed";
    out << "];\n";
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j : g.successors[i]) out << "  n" << i << " -> n" << j << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tracesys::dot
