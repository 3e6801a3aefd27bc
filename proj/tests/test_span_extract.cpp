#include <gtest/gtest.h>

#include <sstream>

#include "cawcoref/fixtures.hpp"
#include "cawcoref/span_extract.hpp"
#include "generators.hpp"

namespace cawcoref {
namespace {

BoundaryScores window(std::size_t head, std::size_t start, std::size_t end) {
  BoundaryScores b;
  b.doc_id = "d";
  b.head = head;
  b.sent_start = start;
  b.sent_end = end;
  b.start_scores.assign(head - start + 1, 0.0);
  b.end_scores.assign(end - head, 0.0);
  return b;
}

TEST(SelectSpan, SingleToken) {
  EXPECT_EQ(select_span(window(4, 4, 5)), (MentionSpan{4, 5}));
}

TEST(SelectSpan, UniformScoresGiveTheHeadAlone) {
  EXPECT_EQ(select_span(window(3, 0, 8)), (MentionSpan{3, 4}));
}

TEST(SelectSpan, WiderSpanWinsWhenScoredHigher) {
  // "Tom and Mary are playing": the head "and" sits inside [0, 3)
  BoundaryScores b = window(1, 0, 5);
  b.start_scores = {2.0, 0.5};
  b.end_scores = {0.1, 1.5, 0.2, -1.0};
  EXPECT_EQ(select_span(b), (MentionSpan{0, 3}));
  b.start_scores = {0.5, 2.0};
  b.end_scores = {1.5, 0.1, 0.2, -1.0};
  EXPECT_EQ(select_span(b), (MentionSpan{1, 2}));
}

TEST(SelectSpan, BadRanges) {
  BoundaryScores b = window(2, 0, 4);
  b.start_scores.clear();
  EXPECT_THROW(select_span(b), ArgumentError);
  b = window(2, 0, 4);
  b.end_scores.pop_back();
  EXPECT_THROW(select_span(b), ArgumentError);
  b = window(2, 0, 4);
  b.head = 5;
  EXPECT_THROW(select_span(b), ArgumentError);
}

TEST(OracleBoundaries, TomAndMaryConjunction) {
  const auto [wl, report] = build_wl(fixtures::tom_and_mary(), WordRule::Caw);
  const BoundaryScores b = oracle_boundaries(wl, 1);
  EXPECT_EQ(b.sent_start, 0u);
  EXPECT_EQ(b.sent_end, 6u);
  EXPECT_EQ(select_span(b), (MentionSpan{0, 3}));
  EXPECT_EQ(select_span(oracle_boundaries(wl, 12)), (MentionSpan{12, 13}));
  EXPECT_THROW(oracle_boundaries(wl, 4), LookupError);
}

TEST(SpanProperties, OracleRecoversGoldSpans) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    for (WordRule rule : {WordRule::Baseline, WordRule::Caw}) {
      const Document d = testing::collision_free_document(rng, rule);
      const auto [wl, report] = build_wl(d, rule);
      for (const auto& [head, span] : wl.word_to_span) {
        const BoundaryScores b = oracle_boundaries(wl, head);
        const MentionSpan got = select_span(b);
        ASSERT_EQ(got, span);
        ASSERT_TRUE(got.contains(head));
      }
    }
  }
}

TEST(SpanProperties, DominantBoundariesAreChosen) {
  testing::Rng rng(22);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t start = testing::uniform(rng, 0, 5);
    const std::size_t head = testing::uniform(rng, start, start + 6);
    const std::size_t end = testing::uniform(rng, head + 1, head + 7);
    BoundaryScores b = window(head, start, end);
    for (auto& x : b.start_scores) x = noise(rng);
    for (auto& x : b.end_scores) x = noise(rng);
    const std::size_t s = testing::uniform(rng, start, head);
    const std::size_t e = testing::uniform(rng, head + 1, end);
    b.start_scores[s - start] = 2.0;
    b.end_scores[e - head - 1] = 2.0;
    const MentionSpan got = select_span(b);
    ASSERT_EQ(got, (MentionSpan{s, e}));
    ASSERT_LE(b.sent_start, got.start);
    ASSERT_LE(got.end, b.sent_end);
    ASSERT_TRUE(got.contains(head));
  }
}

TEST(BoundaryWire, RoundTripAndRejections) {
  const auto [wl, report] = build_wl(fixtures::tom_and_mary(), WordRule::Caw);
  std::vector<BoundaryScores> records;
  for (const auto& [head, span] : wl.word_to_span) records.push_back(oracle_boundaries(wl, head));
  std::stringstream ss;
  emit_boundaries(ss, records);
  EXPECT_EQ(parse_boundaries(ss), records);

  std::istringstream short_end(
      R"({"doc_id":"d","part":0,"head":1,"sent_start":0,"sent_end":3,"start_scores":[0,1],"end_scores":[1]})");
  EXPECT_THROW(parse_boundaries(short_end), ValidationError);
  std::istringstream missing(R"({"doc_id":"d","part":0,"head":1})");
  EXPECT_THROW(parse_boundaries(missing), ParseError);
}

}  // namespace
}  // namespace cawcoref
