#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "cawcoref/clustering.hpp"
#include "generators.hpp"

namespace cawcoref {
namespace {

std::set<std::set<std::size_t>> as_sets(const ClusterPartition& p) {
  std::set<std::set<std::size_t>> out;
  for (const auto& c : p) out.emplace(c.begin(), c.end());
  return out;
}

ScoreMatrix row_of(std::vector<double> scores) {
  ScoreMatrix m(scores.size() + 1);
  for (std::size_t j = 0; j < scores.size(); ++j) m.set(scores.size(), j, scores[j]);
  return m;
}

TEST(ScoreMatrix, SetRejectsNonAntecedents) {
  ScoreMatrix m(3);
  EXPECT_THROW(m.set(1, 1, 0.0), ArgumentError);
  EXPECT_THROW(m.set(1, 2, 0.0), ArgumentError);
  EXPECT_THROW(m.set(3, 0, 0.0), ArgumentError);
  m.set(2, 1, 0.5);
  m.set(2, 1, 0.25);
  EXPECT_EQ(m.get(2, 1), 0.25);
  EXPECT_FALSE(m.get(2, 0).has_value());
}

TEST(PruneTopk, KeepsEverythingWhenRowIsShort) {
  const ScoreMatrix m = row_of({0.1, 0.2, 0.3});
  const ScoreMatrix p = prune_topk(m, 5);
  EXPECT_EQ(p.rows, m.rows);
  EXPECT_EQ(p.k, 5u);
}

TEST(PruneTopk, KeepsHighestScores) {
  const ScoreMatrix p = prune_topk(row_of({0.9, 0.1, 0.5}), 2);
  EXPECT_EQ(p.rows[3], (std::vector<Antecedent>{{0, 0.9}, {2, 0.5}}));
}

TEST(PruneTopk, TiesKeepEarlierAntecedent) {
  const ScoreMatrix p = prune_topk(row_of({1.0, 2.0, 1.0, 1.0}), 2);
  EXPECT_EQ(p.rows[4], (std::vector<Antecedent>{{0, 1.0}, {1, 2.0}}));
}

TEST(PruneTopk, NonPositiveK) {
  EXPECT_THROW(prune_topk(row_of({1.0}), 0), ArgumentError);
  EXPECT_THROW(prune_topk(row_of({1.0}), -3), ArgumentError);
}

TEST(Combine, AddsScores) {
  ScoreMatrix coarse = row_of({1.0, 0.0});
  ScoreMatrix fine(3, ScoreKind::Fine);
  fine.set(2, 0, 0.5);
  fine.set(2, 1, 0.0);
  const ScoreMatrix c = combine(coarse, fine);
  EXPECT_EQ(c.kind, ScoreKind::Combined);
  EXPECT_EQ(c.get(2, 0), 1.5);
  EXPECT_EQ(c.get(2, 1), 0.0);
}

TEST(Combine, SupportMismatch) {
  ScoreMatrix coarse = prune_topk(row_of({1.0, 0.0, 2.0}), 1);
  ScoreMatrix fine(4, ScoreKind::Fine);
  fine.set(3, 0, 0.5);
  EXPECT_THROW(combine(coarse, fine), StructuralError);
  EXPECT_THROW(combine(coarse, ScoreMatrix(7, ScoreKind::Fine)), StructuralError);
}

TEST(Combine, SumMatchesEntrywise) {
  testing::Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform(rng, 1, 12);
    const ScoreMatrix coarse = testing::random_matrix(rng, n);
    ScoreMatrix fine(n, ScoreKind::Fine);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& a : coarse.rows[i])
        if (testing::uniform(rng, 0, 1)) fine.set(i, a.j, static_cast<double>(testing::uniform(rng, 0, 8)) / 4.0);
    const ScoreMatrix c = combine(coarse, fine);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(c.rows[i].size(), fine.rows[i].size());
      for (const auto& a : c.rows[i]) ASSERT_EQ(a.score, *coarse.get(i, a.j) + *fine.get(i, a.j));
    }
  }
}

TEST(InferLinks, NothingAboveDummy) {
  ScoreMatrix m(4);
  m.set(1, 0, -1.0);
  m.set(3, 2, 0.0);
  EXPECT_TRUE(infer_links(m).empty());
  EXPECT_TRUE(links_to_partition(4, infer_links(m)).empty());
}

TEST(InferLinks, ArgmaxWithSmallestIndexOnTies) {
  const ScoreMatrix m = row_of({0.5, 2.0, 2.0, 1.0});
  EXPECT_EQ(infer_links(m), (std::vector<Link>{{4, 1}}));
  EXPECT_TRUE(infer_links(m, 2.0).empty());
}

// He -> Tom and They -> "and" under the conjunction-aware heads.
TEST(InferLinks, TomAndMaryOracle) {
  ScoreMatrix m(16);
  for (std::size_t i = 1; i < 16; ++i)
    for (std::size_t j = 0; j < i; ++j) m.set(i, j, -5.0);
  m.set(6, 0, 5.0);
  m.set(12, 1, 5.0);
  EXPECT_EQ(infer_links(m), (std::vector<Link>{{6, 0}, {12, 1}}));
  EXPECT_EQ(links_to_partition(16, infer_links(m)), (ClusterPartition{{0, 6}, {1, 12}}));

  // with baseline heads both pronouns point at Tom and the entities merge
  m.set(12, 1, -5.0);
  m.set(12, 0, 5.0);
  EXPECT_EQ(links_to_partition(16, infer_links(m)), (ClusterPartition{{0, 6, 12}}));
}

TEST(LinksToPartition, Chains) {
  EXPECT_TRUE(links_to_partition(3, {}).empty());
  EXPECT_EQ(links_to_partition(3, {{1, 0}, {2, 1}}), (ClusterPartition{{0, 1, 2}}));
  EXPECT_EQ(links_to_partition(5, {{4, 2}, {3, 0}}), (ClusterPartition{{0, 3}, {2, 4}}));
  EXPECT_THROW(links_to_partition(3, {{1, 1}}), ArgumentError);
  EXPECT_THROW(links_to_partition(3, {{3, 0}}), ArgumentError);
}

TEST(ClusteringProperties, MatchesTransitiveClosure) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = testing::uniform(rng, 1, 14);
    const auto links = infer_links(testing::random_matrix(rng, n, 0.4), 0.5);
    const ClusterPartition p = links_to_partition(n, links);
    ASSERT_EQ(as_sets(p), testing::closure_components(n, links));
    std::set<std::size_t> seen;
    for (std::size_t c = 0; c < p.size(); ++c) {
      ASSERT_GE(p[c].size(), 2u);
      ASSERT_TRUE(std::is_sorted(p[c].begin(), p[c].end()));
      if (c) {
        ASSERT_LT(p[c - 1].front(), p[c].front());
      }
      for (std::size_t w : p[c]) ASSERT_TRUE(seen.insert(w).second);
    }
  }
}

TEST(ClusteringProperties, RaisingDummyOnlyRemovesLinks) {
  testing::Rng rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const ScoreMatrix m = testing::random_matrix(rng, testing::uniform(rng, 1, 14));
    const auto low = infer_links(m, -1.0);
    const auto high = infer_links(m, 1.0);
    const std::set<Link> low_set(low.begin(), low.end());
    for (const auto& l : high) ASSERT_TRUE(low_set.contains(l));
    // every block at the higher threshold sits inside one block at the lower one
    const auto coarse = as_sets(links_to_partition(m.n, low));
    for (const auto& block : as_sets(links_to_partition(m.n, high))) {
      ASSERT_TRUE(std::any_of(coarse.begin(), coarse.end(), [&](const auto& b) {
        return std::includes(b.begin(), b.end(), block.begin(), block.end());
      }));
    }
  }
}

TEST(ClusteringProperties, RowShiftKeepsArgmax) {
  testing::Rng rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    ScoreMatrix m = testing::random_matrix(rng, testing::uniform(rng, 1, 14));
    ScoreMatrix shifted = m;
    for (auto& row : shifted.rows) {
      const double c = static_cast<double>(testing::uniform(rng, 0, 6)) - 3.0;
      for (auto& a : row) a.score += c;
    }
    const auto a = infer_links(m, -1e9);
    const auto b = infer_links(shifted, -1e9);
    ASSERT_EQ(a, b);
  }
}

TEST(ClusteringProperties, PruneAtFullWidthIsIdentity) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = testing::uniform(rng, 1, 14);
    const ScoreMatrix m = testing::random_matrix(rng, n);
    const ScoreMatrix p = prune_topk(m, static_cast<long long>(n));
    ASSERT_EQ(p.rows, m.rows);
    ASSERT_EQ(infer_links(p), infer_links(m));
    const ScoreMatrix small = prune_topk(m, 2);
    for (const auto& row : small.rows) ASSERT_LE(row.size(), 2u);
  }
}

TEST(ScoreWire, RoundTrip) {
  testing::Rng rng(12);
  std::vector<ScoreMatrix> all;
  for (int trial = 0; trial < 50; ++trial) {
    ScoreMatrix m = testing::random_matrix(rng, testing::uniform(rng, 0, 10));
    m.doc_id = "d" + std::to_string(trial);
    m.part = trial % 3;
    if (trial % 2) m = prune_topk(m, 3);
    all.push_back(m);
  }
  std::stringstream ss;
  emit_score_matrices(ss, all);
  EXPECT_EQ(parse_score_matrices(ss), all);
}

ScoreMatrix parse_one(const std::string& text) {
  std::istringstream in(text);
  auto v = parse_score_matrices(in);
  return v.at(0);
}

TEST(ScoreWire, Rejections) {
  const std::string head = R"({"doc_id":"d","part":0,"n":3,"kind":"fine","k":1,"rows":)";
  EXPECT_NO_THROW(parse_one(head + R"([[2,[[0,1.5]]]]})"));
  EXPECT_THROW(parse_one(head + R"([[2,[[2,1.5]]]]})"), ValidationError);
  EXPECT_THROW(parse_one(head + R"([[3,[[0,1.5]]]]})"), ValidationError);
  EXPECT_THROW(parse_one(head + R"([[2,[[0,1.5],[1,1.0]]]]})"), ValidationError);
  EXPECT_THROW(parse_one(head + R"([[2,[[0,1.5]]],[2,[[1,1.0]]]]})"), ValidationError);
  EXPECT_THROW(parse_one(head + R"([[2,[[0,"x"]]]]})"), ParseError);
  EXPECT_THROW(parse_one(R"({"doc_id":"d","part":0,"n":3,"kind":"odd","rows":[]})"), ParseError);
  EXPECT_THROW(parse_one(R"({"doc_id":"d","part":0,"n":3,"kind":"coarse","rows":[[2,[[0,1],[0,2]]]]})"),
               ValidationError);
  EXPECT_THROW(parse_one(R"({"doc_id":"d","part":0,"n":3,"kind":"coarse","rows":[[2,[[0,1e999]]]]})"),
               ParseError);
}

}  // namespace
}  // namespace cawcoref
