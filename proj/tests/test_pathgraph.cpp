#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "dot_checker.hpp"
#include "oracle.hpp"
#include "scuba/pathgraph.hpp"

using namespace scuba;

namespace {

const HeuristicKind kAll[] = {HeuristicKind::hill_climb, HeuristicKind::hill_climb2, HeuristicKind::netcrawler,
                              HeuristicKind::scuba};

dotcheck::Graph parse_ok(const std::string& text) {
  dotcheck::Graph g;
  const auto err = dotcheck::check(text, g);
  EXPECT_EQ(err, "");
  return g;
}

}  // namespace

TEST(DotChecker, AcceptsAndRejects) {
  dotcheck::Graph g;
  EXPECT_EQ(dotcheck::check("digraph x { a -> b [style=dotted]; c; }", g), "");
  EXPECT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.nodes.size(), 1u);
  EXPECT_NE(dotcheck::check("digraph { a -- b }", g), "");
  EXPECT_NE(dotcheck::check("digraph { a -> }", g), "");
  EXPECT_NE(dotcheck::check("digraph { a [x=] }", g), "");
  EXPECT_NE(dotcheck::check("digraph { a } extra", g), "");
}

TEST(Graph, HypercubeSizes) {
  const auto l = NkqLandscape::generate(5, 2, 2, Epistasis::random, 1);
  const auto g = build_graph(l);
  EXPECT_EQ(g.node_count(), 32u);
  EXPECT_EQ(g.base_edge_count(), 80u);
  for (auto h : kAll) {
    const auto dot = parse_ok(to_dot(annotate(g, h)));
    EXPECT_EQ(dot.nodes.size(), 32u);
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& e : dot.edges) pairs.insert(std::minmax(e.from, e.to));
    EXPECT_EQ(pairs.size(), 80u) << to_string(h);
  }
}

TEST(Graph, SingleLocus) {
  const auto l = NkqLandscape::generate(1, 0, 3, Epistasis::random, 1);
  const auto dot = parse_ok(to_dot(annotate(build_graph(l), HeuristicKind::scuba)));
  EXPECT_EQ(dot.nodes.size(), 2u);
  EXPECT_EQ(dot.edges.size(), 1u);
}

TEST(Graph, TooManyLociIsRejected) {
  const auto l = NkqLandscape::generate(13, 1, 2, Epistasis::random, 1);
  EXPECT_THROW(build_graph(l), InvalidParameter);
}

TEST(Graph, NodeIdsAreGenotypeIntegers) {
  const auto l = NkqLandscape::generate(6, 2, 3, Epistasis::random, 4);
  const auto g = build_graph(l);
  for (NodeId u = 0; u < g.node_count(); ++u) EXPECT_EQ(g.totals[u], oracle::fitness(l, Genotype::from_integer(u, 6)));
  EXPECT_EQ(g.flip(0, 0), 32u);
  EXPECT_EQ(g.flip(0, 5), 1u);
}

TEST(Graph, ConstantLandscapeHasNoHillClimbArrows) {
  const auto g = build_graph(oracle::constant(4, 1, 2, 1));
  EXPECT_TRUE(annotate(g, HeuristicKind::hill_climb).arrows.empty());
  EXPECT_TRUE(annotate(g, HeuristicKind::scuba).arrows.empty());
  EXPECT_EQ(annotate(g, HeuristicKind::netcrawler).arrows.size(), g.base_edge_count());
  EXPECT_EQ(gray_fill(g, 1), "#ffffff");
}

TEST(Graph, OneMaxHillClimbFlipsTheLowestZero) {
  const auto g = build_graph(oracle::onemax(3));
  const auto a = annotate(g, HeuristicKind::hill_climb);
  EXPECT_EQ(a.arrows.size(), 7u);
  for (const auto& arrow : a.arrows) {
    const auto from = Genotype::from_integer(arrow.from, 3);
    std::size_t first_zero = 0;
    while (from[first_zero]) ++first_zero;
    EXPECT_EQ(arrow.to, g.flip(arrow.from, first_zero));
  }
  EXPECT_EQ(gray_fill(g, 0), "#000000");
  EXPECT_EQ(gray_fill(g, 3), "#ffffff");
}

TEST(Graph, ArrowsMatchBruteForceDynamics) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto l = NkqLandscape::generate(6, seed % 4, 2 + static_cast<Total>(seed % 2), Epistasis::random, seed);
    const oracle::Space space(l);
    const auto g = build_graph(l);
    std::vector<std::size_t> hc_out(g.node_count(), 0);
    for (const auto& arrow : annotate(g, HeuristicKind::hill_climb).arrows) {
      ++hc_out[arrow.from];
      EXPECT_GT(space.f[arrow.to], space.f[arrow.from]);
      EXPECT_EQ(space.f[arrow.to], space.evol(arrow.from));
    }
    for (NodeId u = 0; u < g.node_count(); ++u) EXPECT_EQ(hc_out[u] == 0, space.is_local(u, false, 0));

    for (const auto& arrow : annotate(g, HeuristicKind::scuba).arrows) {
      EXPECT_GE(space.f[arrow.to], space.f[arrow.from]);
      if (arrow.style == EdgeStyle::dotted) {
        EXPECT_EQ(space.f[arrow.to], space.f[arrow.from]);
        EXPECT_GT(space.evol(arrow.to), space.evol(arrow.from));
      }
    }
    for (const auto& arrow : annotate(g, HeuristicKind::hill_climb2).arrows)
      EXPECT_GE(space.evol2(arrow.to), space.evol2(arrow.from));
  }
}

TEST(Graph, NetcrawlerDottedComponentsAreNeutralNetworks) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto l = NkqLandscape::generate(5, 2, 2, Epistasis::random, seed + 500);
    const oracle::Space space(l);
    const auto expected = space.networks();
    const auto g = build_graph(l);

    // Components of the dotted edges only.
    std::vector<NodeId> parent(g.node_count());
    std::iota(parent.begin(), parent.end(), NodeId{0});
    std::function<NodeId(NodeId)> find = [&](NodeId x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& arrow : annotate(g, HeuristicKind::netcrawler).arrows) {
      if (arrow.style != EdgeStyle::dotted) {
        EXPECT_GT(space.f[arrow.to], space.f[arrow.from]);
        continue;
      }
      EXPECT_FALSE(arrow.directed);
      parent[find(arrow.from)] = find(arrow.to);
    }
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (NodeId v = 0; v < g.node_count(); ++v)
        ASSERT_EQ(find(u) == find(v), expected[u] == expected[v]);
    const auto labels = neutral_networks(g);
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (NodeId v = 0; v < g.node_count(); ++v) ASSERT_EQ(labels[u] == labels[v], expected[u] == expected[v]);
  }
}

TEST(Census, InvariantsAgainstBruteForce) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto l = NkqLandscape::generate(5, 2, 2, Epistasis::random, seed);
    const oracle::Space space(l);
    const auto c = census(l);
    std::size_t v_local = 0, v2_local = 0;
    for (std::size_t u = 0; u < space.points.size(); ++u) {
      v_local += space.is_local(u, false, 0);
      v2_local += space.is_local(u, false, 2);
    }
    EXPECT_EQ(c.nodes, 32u);
    EXPECT_EQ(c.local_maxima, v_local);
    EXPECT_EQ(c.local_maxima_v2, v2_local);
    EXPECT_LE(c.local_maxima_v2, c.local_maxima);
    EXPECT_LE(c.scuba_terminals, c.local_maxima);
    for (auto t : c.scuba_terminal_nodes) EXPECT_TRUE(space.is_local(t, false, 0));
    const auto labels = space.networks();
    EXPECT_EQ(c.neutral_networks, std::set<std::size_t>(labels.begin(), labels.end()).size());
  }
}

TEST(Dot, OutputIsDeterministicAndStyled) {
  const auto l = NkqLandscape::generate(5, 2, 2, Epistasis::random, 77);
  const auto g = build_graph(l);
  for (auto h : kAll) {
    const auto text = to_dot(annotate(g, h));
    EXPECT_EQ(text, to_dot(annotate(build_graph(l), h)));
    const auto dot = parse_ok(text);
    EXPECT_TRUE(dot.directed);
    for (const auto& [id, attrs] : dot.nodes) {
      ASSERT_TRUE(attrs.count("fillcolor"));
      EXPECT_EQ(attrs.at("fillcolor").size(), 7u);
    }
    for (const auto& e : dot.edges)
      EXPECT_TRUE(e.attrs.count("style") || e.attrs.at("color") == "gray80");
  }
}

TEST(Dot, NetcrawlerIsRejectedBySuccessors) {
  const auto g = build_graph(oracle::onemax(3));
  EXPECT_THROW(successors(g, HeuristicKind::netcrawler), InvalidParameter);
}
