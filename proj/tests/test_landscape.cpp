#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "scuba/landscape.hpp"

using namespace scuba;

TEST(Generate, TableSizeIsTwoToTheKPlusOne) {
  const auto l = NkqLandscape::generate(64, 0, 2, Epistasis::random, 11);
  for (const auto& t : l.tables()) EXPECT_EQ(t.size(), 2u);
  const auto m = NkqLandscape::generate(10, 3, 4, Epistasis::random, 11);
  for (const auto& t : m.tables()) EXPECT_EQ(t.size(), 16u);
}

TEST(Generate, SmallVisualizationScale) {
  const auto l = NkqLandscape::generate(5, 2, 2, Epistasis::random, 3);
  EXPECT_EQ(l.n(), 5u);
  EXPECT_EQ(oracle::all_genotypes(l.n()).size(), 32u);
}

TEST(Generate, DeterministicPerParameters) {
  const auto a = NkqLandscape::generate(8, 3, 4, Epistasis::adjacent, 77);
  const auto b = NkqLandscape::generate(8, 3, 4, Epistasis::adjacent, 77);
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize(a), serialize(b));
  const auto c = NkqLandscape::generate(8, 3, 4, Epistasis::random, 77);
  const auto d = NkqLandscape::generate(8, 3, 4, Epistasis::random, 77);
  EXPECT_EQ(c, d);
  EXPECT_NE(c, NkqLandscape::generate(8, 3, 4, Epistasis::random, 78));
}

TEST(Generate, RejectsInvalidParameters) {
  EXPECT_THROW(NkqLandscape::generate(4, 4, 2, Epistasis::random, 1), InvalidParameter);
  EXPECT_THROW(NkqLandscape::generate(4, 1, 1, Epistasis::random, 1), InvalidParameter);
  EXPECT_THROW(NkqLandscape::generate(0, 0, 2, Epistasis::random, 1), InvalidParameter);
  EXPECT_NO_THROW(NkqLandscape::generate(4, 3, 2, Epistasis::random, 1));
}

TEST(Generate, EntriesStayInRange) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Total q = 2 + static_cast<Total>(seed % 5) * 7;
    const auto l = NkqLandscape::generate(12, seed % 6, q, seed % 2 ? Epistasis::random : Epistasis::adjacent, seed);
    for (const auto& t : l.tables())
      for (auto e : t) {
        EXPECT_GE(e, 0);
        EXPECT_LE(e, q - 1);
      }
  }
}

TEST(Generate, RandomLinksAreDistinctAndExcludeSelf) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 3 + seed % 20;
    const std::size_t k = seed % n;
    const auto l = NkqLandscape::generate(n, k, 3, Epistasis::random, seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& li = l.links()[i];
      ASSERT_EQ(li.size(), k);
      std::set<std::size_t> unique(li.begin(), li.end());
      EXPECT_EQ(unique.size(), k);
      EXPECT_FALSE(unique.count(i));
    }
  }
}

TEST(Generate, AdjacentLinksAreNearestWithPeriodicBoundary) {
  EXPECT_EQ(NkqLandscape::adjacent_links(10, 4, 0), (std::vector<std::size_t>{9, 1, 8, 2}));
  // Odd K takes the extra locus on the left.
  EXPECT_EQ(NkqLandscape::adjacent_links(10, 3, 5), (std::vector<std::size_t>{4, 6, 3}));
  EXPECT_EQ(NkqLandscape::adjacent_links(4, 3, 3), (std::vector<std::size_t>{2, 0, 1}));
  const auto l = NkqLandscape::generate(9, 8, 2, Epistasis::adjacent, 5);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(std::set<std::size_t>(l.links()[i].begin(), l.links()[i].end()).size(), 8u);
}

TEST(ComponentIndex, PacksOwnAlleleLowestThenLinksInOrder) {
  NkqLandscape::Links links{{1, 2}, {2, 3}, {0, 3}, {0, 1}};
  NkqLandscape::Tables tables(4, std::vector<Total>(8, 0));
  const NkqLandscape l(4, 2, 2, Epistasis::random, 0, links, tables);
  EXPECT_EQ(l.component_index(Genotype::from_string("0000"), 2), 0u);
  EXPECT_EQ(l.component_index(Genotype::from_string("1010"), 2), 3u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(l.component_index(Genotype::from_string("1111"), i), 7u);
}

TEST(Evaluate, InjectedExtremes) {
  const auto top = oracle::constant(6, 2, 5, 4);
  const auto bottom = oracle::constant(6, 2, 5, 0);
  EvalCounter c;
  for (const auto& s : oracle::all_genotypes(6)) {
    EXPECT_DOUBLE_EQ(evaluate(top, s, c).normalized(), 1.0);
    EXPECT_DOUBLE_EQ(evaluate(bottom, s, c).normalized(), 0.0);
  }
  EXPECT_EQ(c.count(), 128u);
}

TEST(Evaluate, HandComputedSum) {
  // f_0: 0->0, 1->2; f_1: 0->1, 1->1; s = 11 gives 2 + 1 = 3 out of N(q-1) = 4.
  const NkqLandscape l(2, 0, 3, Epistasis::random, 0, {{}, {}}, {{0, 2}, {1, 1}});
  EvalCounter c;
  const auto f = evaluate(l, Genotype::from_string("11"), c);
  EXPECT_EQ(f.total, 3);
  EXPECT_DOUBLE_EQ(f.normalized(), 0.75);
  EXPECT_EQ(c.count(), 1u);
}

TEST(Evaluate, LengthMismatchThrows) {
  const auto l = NkqLandscape::generate(5, 1, 2, Epistasis::random, 1);
  EvalCounter c;
  EXPECT_THROW(evaluate(l, Genotype(4), c), std::invalid_argument);
}

TEST(Evaluate, TotalsWithinBoundsAndMatchOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto l = NkqLandscape::generate(9, seed % 5, 2 + static_cast<Total>(seed % 3), Epistasis::random, seed);
    for (const auto& s : oracle::all_genotypes(9)) {
      const auto f = l.fitness(s);
      EXPECT_EQ(f.total, oracle::fitness(l, s));
      EXPECT_GE(f.total, 0);
      EXPECT_LE(f.total, l.max_total());
    }
  }
}

TEST(DeltaEvaluate, ExhaustivelyMatchesFullEvaluation) {
  const auto l = NkqLandscape::generate(10, 3, 4, Epistasis::random, 2024);
  EvalCounter c;
  for (const auto& s : oracle::all_genotypes(10)) {
    const Total t = oracle::fitness(l, s);
    for (std::size_t i = 0; i < 10; ++i)
      ASSERT_EQ(delta_evaluate(l, s, t, i, c).total, oracle::fitness(l, s.flipped(i)));
  }
  EXPECT_EQ(c.count(), 1024u * 10u);
}

TEST(DeltaEvaluate, KZeroTouchesOnlyTheFlippedLocus) {
  const auto l = NkqLandscape::generate(16, 0, 5, Epistasis::random, 8);
  for (std::size_t i = 0; i < 16; ++i) {
    ASSERT_EQ(l.dependents(i).size(), 1u);
    EXPECT_EQ(l.dependents(i).front().first, i);
  }
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_genotype(rng, 16);
    const Total t = l.fitness(s).total;
    for (std::size_t i = 0; i < 16; ++i) {
      const auto& table = l.tables()[i];
      EXPECT_EQ(l.flip_fitness(s, t, i).total - t, table[s[i] ? 0 : 1] - table[s[i] ? 1 : 0]);
    }
  }
}

TEST(DeltaEvaluate, ConstantLandscapeNeverChanges) {
  const auto l = oracle::constant(7, 3, 4, 2);
  EvalCounter c;
  const auto s = Genotype::from_string("0110101");
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(delta_evaluate(l, s, 14, i, c).total, 14);
}

TEST(Serialize, RoundTripIsIdentity) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto l = NkqLandscape::generate(3 + seed, seed % 3, 2 + static_cast<Total>(seed),
                                          seed % 2 ? Epistasis::adjacent : Epistasis::random, seed * 977);
    const auto text = serialize(l);
    const auto back = deserialize(text);
    EXPECT_EQ(back, l);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Serialize, DocumentLayout) {
  const NkqLandscape l(2, 1, 3, Epistasis::adjacent, 9, {{1}, {0}}, {{0, 1, 2, 0}, {2, 2, 1, 0}});
  EXPECT_EQ(serialize(l),
            "nkq-landscape\nformat-version 1\nn 2\nk 1\nq 3\nmode adjacent\nseed 9\n0 1 0 1 2 0\n1 0 2 2 1 0\n");
}

namespace {

std::string small_doc(const std::string& body) {
  return "nkq-landscape\nformat-version 1\nn 2\nk 1\nq 3\nmode random\nseed 1\n" + body;
}

}  // namespace

TEST(Deserialize, EntryEqualToQIsRejected) {
  try {
    deserialize(small_doc("0 1 0 1 3 0\n1 0 0 0 0 0\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 8u);
    EXPECT_EQ(e.field(), "locus 0 entry 2");
  }
}

TEST(Deserialize, WrongLinkCountIsRejected) {
  try {
    deserialize(small_doc("0 0 1 2 0\n1 0 0 0 0 0\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 8u);
    EXPECT_EQ(e.field(), "locus 0");
  }
}

TEST(Deserialize, OtherMalformedInput) {
  EXPECT_THROW(deserialize("garbage\n"), ParseError);
  EXPECT_THROW(deserialize(small_doc("0 1 0 1 2 0\n")), ParseError);                      // missing locus
  EXPECT_THROW(deserialize(small_doc("0 0 0 1 2 0\n1 0 0 0 0 0\n")), ParseError);         // self link
  EXPECT_THROW(deserialize(small_doc("0 1 0 1 2 0\n1 0 0 0 0 0\n2 0\n")), ParseError);    // trailing line
  EXPECT_THROW(deserialize(small_doc("1 1 0 1 2 0\n0 0 0 0 0 0\n")), ParseError);         // out of order
  EXPECT_THROW(deserialize(small_doc("0 1 0 1 x 0\n1 0 0 0 0 0\n")), ParseError);         // not a number
  EXPECT_THROW(deserialize("nkq-landscape\nformat-version 2\n"), ParseError);
  EXPECT_THROW(deserialize("nkq-landscape\nformat-version 1\nn 2\nk 2\n"), ParseError);
}

TEST(Genotype, TextAndIntegerForms) {
  const auto g = Genotype::from_string("01000");
  EXPECT_EQ(g.to_integer(), 8u);
  EXPECT_EQ(Genotype::from_integer(8, 5), g);
  EXPECT_EQ(g.to_string(), "01000");
  EXPECT_EQ(hamming(g, g.flipped(3)), 1u);
  EXPECT_THROW(Genotype::from_string("012"), std::invalid_argument);
}
