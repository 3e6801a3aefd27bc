#include <gtest/gtest.h>

#include "cawcoref/conll.hpp"
#include "generators.hpp"

namespace cawcoref {
namespace {

std::string block(const std::vector<std::string>& coref) {
  std::string out = "#begin document (d); part 000\n";
  for (std::size_t i = 0; i < coref.size(); ++i) {
    out += "d 0 " + std::to_string(i) + " w" + std::to_string(i) + " NN - - " + coref[i] + "\n";
  }
  return out + "\n#end document\n";
}

std::vector<std::string> coref_column(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cols = conll_detail::split_ws(line);
    out.emplace_back(cols.back());
  }
  return out;
}

TEST(ParseConll, OpenAndCloseMakeOneSpan) {
  auto docs = parse_conll(block({"(0", "-", "0)"}));
  ASSERT_EQ(docs.size(), 1u);
  ASSERT_EQ(docs[0].clusters.size(), 1u);
  EXPECT_EQ(docs[0].clusters[0].spans, (std::vector<MentionSpan>{{0, 3}}));
}

TEST(ParseConll, UnitAndOpenOnOneToken) {
  auto docs = parse_conll(block({"(0)|(1", "1)"}));
  ASSERT_EQ(docs[0].clusters.size(), 2u);
  EXPECT_EQ(docs[0].clusters[0].id, 0);
  EXPECT_EQ(docs[0].clusters[0].spans, (std::vector<MentionSpan>{{0, 1}}));
  EXPECT_EQ(docs[0].clusters[1].spans, (std::vector<MentionSpan>{{0, 2}}));
}

TEST(ParseConll, CloseMatchesMostRecentOpenOfSameCluster) {
  auto docs = parse_conll(block({"(3", "(3", "3)", "3)"}));
  EXPECT_EQ(docs[0].clusters[0].spans, (std::vector<MentionSpan>{{0, 4}, {1, 3}}));
}

TEST(ParseConll, SentencesAndColumns) {
  std::string text =
      "#begin document (bc/cnn/00/cnn_0001); part 002\n"
      "bc/cnn/00/cnn_0001 2 0 Tom NNP (TOP* - - - Speaker#1 * (0)\n"
      "bc/cnn/00/cnn_0001 2 1 left VBD * leave 01 - Speaker#1 * -\n"
      "\n"
      "bc/cnn/00/cnn_0001 2 0 He PRP * - - - Speaker#1 * (0)\n"
      "\n#end document\n";
  auto docs = parse_conll(text);
  ASSERT_EQ(docs.size(), 1u);
  const auto& d = docs[0];
  EXPECT_EQ(d.doc_id, "bc/cnn/00/cnn_0001");
  EXPECT_EQ(d.part, 2);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.tokens[2].sent_id, 1u);
  EXPECT_EQ(d.tokens[1].pos, "VBD");
  EXPECT_EQ(d.tokens[1].passthrough, (std::vector<std::string>{"*", "leave", "01", "-", "Speaker#1", "*"}));
  const std::string emitted = emit_conll(docs);
  EXPECT_EQ(emitted.substr(0, emitted.find('\n')), "#begin document (bc/cnn/00/cnn_0001); part 002");
  EXPECT_EQ(coref_column(emitted), coref_column(text));
  EXPECT_EQ(parse_conll(emitted), docs);
}

TEST(ParseConll, Errors) {
  try {
    parse_conll(block({"(0", "-", "-"}));
    FAIL() << "unclosed bracket accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_conll(block({"-", "0)"}));
    FAIL() << "stray close accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_conll(block({"(x)"})), ParseError);
  EXPECT_THROW(parse_conll(block({"(1)|"})), ParseError);
  EXPECT_THROW(parse_conll("d 0 0 a NN -\nd 0 1 b NN extra -\n"), ParseError);
  EXPECT_THROW(parse_conll("d zero 0 a NN -\n"), ParseError);
  EXPECT_THROW(parse_conll("d 0 0 a\n"), ParseError);
}

TEST(EmitConll, NoClustersGivesDashes) {
  auto docs = parse_conll(block({"-", "-", "-"}));
  for (const auto& cell : coref_column(emit_conll(docs))) EXPECT_EQ(cell, "-");
}

TEST(EmitConll, UnitMention) {
  Document d;
  d.doc_id = "x";
  d.tokens = {Token{0, "a", "NN", 0, {}, {}, {}}, Token{1, "b", "NN", 0, {}, {}, {}}};
  d.clusters = {{0, {{1, 2}}}};
  EXPECT_EQ(coref_column(emit_conll({d})), (std::vector<std::string>{"-", "(0)"}));
}

TEST(EmitConll, ClosesBeforeUnitsBeforeOpens) {
  Document d;
  d.doc_id = "x";
  for (std::size_t i = 0; i < 4; ++i) d.tokens.push_back(Token{i, "w", "NN", 0, {}, {}, {}});
  d.clusters = {{1, {{1, 4}}}, {2, {{1, 2}}}, {5, {{0, 2}}}};
  EXPECT_EQ(coref_column(emit_conll({d})), (std::vector<std::string>{"(5", "5)|(2)|(1", "-", "1)"}));
}

TEST(EmitConll, SpanOutOfBoundsIsAnError) {
  Document d;
  d.tokens.push_back(Token{0, "w", "NN", 0, {}, {}, {}});
  d.clusters = {{0, {{0, 2}}}};
  EXPECT_THROW(emit_conll({d}), ValidationError);
}

TEST(ConllRoundTrip, RandomNestedDocuments) {
  testing::Rng rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Document> docs;
    const std::size_t ndocs = testing::uniform(rng, 1, 3);
    for (std::size_t k = 0; k < ndocs; ++k) {
      Document d = testing::random_document(rng);
      d.doc_id = "doc" + std::to_string(k);
      for (auto& t : d.tokens) t.head.reset();
      docs.push_back(d);
    }
    const std::string text = emit_conll(docs);
    const auto parsed = parse_conll(text);
    ASSERT_EQ(parsed.size(), docs.size());
    for (std::size_t k = 0; k < docs.size(); ++k) {
      ASSERT_EQ(parsed[k].clusters, docs[k].clusters) << text;
    }
    ASSERT_EQ(emit_conll(parsed), text);
  }
}

}  // namespace
}  // namespace cawcoref
