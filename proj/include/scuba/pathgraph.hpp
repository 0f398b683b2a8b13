#ifndef SCUBA_PATHGRAPH_HPP
#define SCUBA_PATHGRAPH_HPP

// Small landscapes as hypercube graphs, with the moves each heuristic can make
// drawn as arrows, exported as Graphviz DOT.
//
// Node ids are genotype integers (locus 0 is the most significant bit). Where a
// heuristic may pick among several equally good targets, the graph keeps the
// one reached by flipping the lowest locus, so output is a pure function of the
// landscape.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scuba/heuristics.hpp"
#include "scuba/landscape.hpp"

namespace scuba {

inline constexpr std::size_t kMaxGraphLoci = 12;

using NodeId = std::uint32_t;

struct LandscapeGraph {
  std::size_t n = 0;
  std::vector<Total> totals;  // indexed by NodeId
  Total min_total = 0;
  Total max_total = 0;

  std::size_t node_count() const noexcept { return totals.size(); }
  std::size_t base_edge_count() const noexcept { return n == 0 ? 0 : n * (std::size_t{1} << (n - 1)); }

  /// Neighbor reached by flipping `locus`.
  NodeId flip(NodeId u, std::size_t locus) const noexcept { return u ^ (NodeId{1} << (n - 1 - locus)); }
};

inline LandscapeGraph build_graph(const NkqLandscape& l) {
  if (l.n() > kMaxGraphLoci)
    throw InvalidParameter("graph export enumerates all 2^N genotypes; N=" + std::to_string(l.n()) +
                           " exceeds the limit of " + std::to_string(kMaxGraphLoci) + ", use a smaller --n");
  LandscapeGraph g;
  g.n = l.n();
  g.totals.resize(std::size_t{1} << l.n());
  for (std::size_t u = 0; u < g.totals.size(); ++u) g.totals[u] = l.fitness(Genotype::from_integer(u, l.n())).total;
  const auto [lo, hi] = std::minmax_element(g.totals.begin(), g.totals.end());
  g.min_total = *lo;
  g.max_total = *hi;
  return g;
}

enum class EdgeStyle { solid, dotted };

struct Arrow {
  NodeId from = 0;
  NodeId to = 0;
  EdgeStyle style = EdgeStyle::solid;
  bool directed = true;
};

struct AnnotatedGraph {
  LandscapeGraph graph;
  HeuristicKind kind = HeuristicKind::hill_climb;
  std::vector<Arrow> arrows;
};

namespace detail {

inline std::vector<Total> node_evol(const LandscapeGraph& g) {
  std::vector<Total> e(g.totals);
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (std::size_t i = 0; i < g.n; ++i) e[u] = std::max(e[u], g.totals[g.flip(u, i)]);
  return e;
}

inline std::vector<Total> node_evol2(const LandscapeGraph& g, const std::vector<Total>& evol) {
  std::vector<Total> e2(evol);
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (std::size_t i = 0; i < g.n; ++i) e2[u] = std::max(e2[u], evol[g.flip(u, i)]);
  return e2;
}

inline std::optional<NodeId> first_neighbor(const LandscapeGraph& g, NodeId u, auto&& pred) {
  for (std::size_t i = 0; i < g.n; ++i)
    if (pred(g.flip(u, i))) return g.flip(u, i);
  return std::nullopt;
}

}  // namespace detail

/// The single move a deterministic heuristic makes from each node, if any.
/// Defined for hill_climb, hill_climb2 and scuba.
inline std::vector<std::optional<NodeId>> successors(const LandscapeGraph& g, HeuristicKind kind,
                                                     std::vector<EdgeStyle>* styles = nullptr) {
  const auto& f = g.totals;
  const auto evol = detail::node_evol(g);
  const auto evol2 = kind == HeuristicKind::hill_climb2 ? detail::node_evol2(g, evol) : std::vector<Total>{};
  std::vector<std::optional<NodeId>> next(g.node_count());
  if (styles) styles->assign(g.node_count(), EdgeStyle::solid);

  for (NodeId u = 0; u < g.node_count(); ++u) {
    switch (kind) {
      case HeuristicKind::hill_climb:
        if (evol[u] > f[u]) next[u] = detail::first_neighbor(g, u, [&](NodeId v) { return f[v] == evol[u]; });
        break;
      case HeuristicKind::scuba:
      case HeuristicKind::generic_scuba: {
        Total best = -1;
        for (std::size_t i = 0; i < g.n; ++i) {
          const NodeId v = g.flip(u, i);
          if (f[v] == f[u]) best = std::max(best, evol[v]);
        }
        if (best > evol[u]) {
          next[u] = detail::first_neighbor(g, u, [&](NodeId v) { return f[v] == f[u] && evol[v] == best; });
          if (styles) (*styles)[u] = EdgeStyle::dotted;
        } else if (evol[u] > f[u]) {
          next[u] = detail::first_neighbor(g, u, [&](NodeId v) { return f[v] == evol[u]; });
        }
        break;
      }
      case HeuristicKind::hill_climb2:
        if (evol2[u] <= f[u]) break;
        if (evol[u] == evol2[u])
          next[u] = detail::first_neighbor(g, u, [&](NodeId v) { return f[v] == evol2[u]; });
        else
          next[u] = detail::first_neighbor(g, u, [&](NodeId v) { return evol[v] == evol2[u]; });
        break;
      case HeuristicKind::netcrawler:
        throw InvalidParameter("netcrawler moves are not deterministic; use annotate() for its graph");
    }
  }
  return next;
}

inline AnnotatedGraph annotate(const LandscapeGraph& g, HeuristicKind kind) {
  AnnotatedGraph out;
  out.graph = g;
  out.kind = kind;
  if (kind == HeuristicKind::netcrawler) {
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (std::size_t i = 0; i < g.n; ++i) {
        const NodeId v = g.flip(u, i);
        if (g.totals[v] > g.totals[u]) out.arrows.push_back({u, v, EdgeStyle::solid, true});
        if (g.totals[v] == g.totals[u] && u < v) out.arrows.push_back({u, v, EdgeStyle::dotted, false});
      }
    return out;
  }
  std::vector<EdgeStyle> styles;
  const auto next = successors(g, kind, &styles);
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (next[u]) out.arrows.push_back({u, *next[u], styles[u], true});
  return out;
}

/// Connected components of the equal-total adjacency; returns a component label per node.
inline std::vector<NodeId> neutral_networks(const LandscapeGraph& g) {
  std::vector<NodeId> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (std::size_t i = 0; i < g.n; ++i) {
      const NodeId v = g.flip(u, i);
      if (g.totals[u] == g.totals[v]) {
        const NodeId a = find(u), b = find(v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  for (NodeId u = 0; u < g.node_count(); ++u) parent[u] = find(u);
  return parent;
}

struct Census {
  std::size_t nodes = 0;
  std::size_t local_maxima = 0;      // isLocal(s, f, V)
  std::size_t local_maxima_v2 = 0;   // isLocal(s, f, V2)
  std::size_t scuba_terminals = 0;   // end points of the scuba dynamics from every node
  std::size_t neutral_networks = 0;
  std::vector<NodeId> scuba_terminal_nodes;
};

inline Census census(const NkqLandscape& l) {
  const auto g = build_graph(l);
  const auto evol = detail::node_evol(g);
  const auto evol2 = detail::node_evol2(g, evol);
  Census c;
  c.nodes = g.node_count();
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (evol[u] <= g.totals[u]) ++c.local_maxima;
    if (evol2[u] <= g.totals[u]) ++c.local_maxima_v2;
  }
  const auto next = successors(g, HeuristicKind::scuba);
  std::set<NodeId> ends;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    NodeId x = u;
    while (next[x]) x = *next[x];
    ends.insert(x);
  }
  c.scuba_terminal_nodes.assign(ends.begin(), ends.end());
  c.scuba_terminals = ends.size();
  const auto labels = neutral_networks(g);
  c.neutral_networks = std::set<NodeId>(labels.begin(), labels.end()).size();
  return c;
}

inline constexpr const char* kCensusHeader = "n,k,q,seed,nodes,local_maxima,local_maxima_v2,scuba_terminals,neutral_networks";

inline void write_census_row(const NkqLandscape& l, const Census& c, std::ostream& out) {
  out << l.n() << ',' << l.k() << ',' << l.q() << ',' << l.seed() << ',' << c.nodes << ',' << c.local_maxima << ','
      << c.local_maxima_v2 << ',' << c.scuba_terminals << ',' << c.neutral_networks << '\n';
}

/// Linear grayscale: the landscape minimum is black, the maximum white.
inline std::string gray_fill(const LandscapeGraph& g, Total t) {
  int level = 255;
  if (g.max_total > g.min_total)
    level = static_cast<int>((510 * (t - g.min_total) + (g.max_total - g.min_total)) / (2 * (g.max_total - g.min_total)));
  std::ostringstream os;
  os << '#' << std::hex << std::setfill('0');
  for (int c = 0; c < 3; ++c) os << std::setw(2) << level;
  return os.str();
}

inline void to_dot(const AnnotatedGraph& a, std::ostream& out) {
  const auto& g = a.graph;
  out << "digraph landscape {\n";
  out << "  label=\"" << to_string(a.kind) << " paths, N=" << g.n << "\";\n";
  out << "  node [shape=circle, style=filled, fontsize=10];\n";
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const bool dark = 2 * (g.totals[u] - g.min_total) < (g.max_total - g.min_total);
    out << "  " << u << " [label=\"" << u << "\", fillcolor=\"" << gray_fill(g, g.totals[u]) << "\", fontcolor=\""
        << (dark ? "white" : "black") << "\"];\n";
  }

  // One statement per hypercube edge; annotated pairs carry their arrows instead.
  std::vector<std::vector<const Arrow*>> by_pair(g.node_count() * g.n);
  auto slot = [&](NodeId u, NodeId v) {
    const NodeId lo = std::min(u, v);
    const NodeId diff = u ^ v;
    std::size_t bit = 0;
    while ((NodeId{1} << bit) != diff) ++bit;
    return static_cast<std::size_t>(lo) * g.n + bit;
  };
  for (const auto& arrow : a.arrows) by_pair[slot(arrow.from, arrow.to)].push_back(&arrow);

  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (std::size_t bit = 0; bit < g.n; ++bit) {
      const NodeId v = u ^ (NodeId{1} << bit);
      if (v < u) continue;
      const auto& here = by_pair[static_cast<std::size_t>(u) * g.n + bit];
      if (here.empty()) {
        out << "  " << u << " -> " << v << " [dir=none, color=\"gray80\"];\n";
        continue;
      }
      for (const auto* arrow : here) {
        out << "  " << arrow->from << " -> " << arrow->to << " [style=" << (arrow->style == EdgeStyle::solid ? "solid" : "dotted");
        if (!arrow->directed) out << ", dir=none";
        out << "];\n";
      }
    }
  }
  out << "}\n";
}

inline std::string to_dot(const AnnotatedGraph& a) {
  std::ostringstream os;
  to_dot(a, os);
  return os.str();
}

}  // namespace scuba

#endif  // SCUBA_PATHGRAPH_HPP
