#pragma once

// Hand-annotated documents used by the demo, the golden tests and the
// bundled corpus under data/. Dependency heads follow the usual English
// analysis: a coordinated NP is headed by its first conjunct, with the
// conjunction and the later conjuncts attached to it.

#include <string>
#include <vector>

#include "cawcoref/document.hpp"

namespace cawcoref::fixtures {

// heads: -1 marks a root.
inline Document make_document(std::string doc_id, const std::vector<std::string>& words,
                              const std::vector<std::string>& pos, const std::vector<int>& heads,
                              const std::vector<std::size_t>& sent_ids,
                              std::vector<std::vector<MentionSpan>> clusters) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  for (std::size_t i = 0; i < words.size(); ++i) {
    Token tok;
    tok.index = i;
    tok.word = words[i];
    tok.pos = pos.at(i);
    tok.sent_id = sent_ids.at(i);
    if (heads.at(i) >= 0) tok.head = static_cast<std::size_t>(heads[i]);
    doc.tokens.push_back(std::move(tok));
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    doc.clusters.push_back({static_cast<int>(c), std::move(clusters[c])});
  }
  validate(doc);
  return doc;
}

// "Tom and Mary are playing. He is 7 years old. They are siblings."
// Clusters: {Tom, He}, {Tom and Mary, They}, {Mary}.
inline Document tom_and_mary() {
  return make_document(
      "tom_and_mary",
      {"Tom", "and", "Mary", "are", "playing", ".", "He", "is", "7", "years", "old", ".", "They", "are",
       "siblings", "."},
      {"NNP", "CC", "NNP", "VBP", "VBG", ".", "PRP", "VBZ", "CD", "NNS", "JJ", ".", "PRP", "VBP", "NNS", "."},
      {4, 0, 0, 4, -1, 4, 7, -1, 9, 10, 7, 7, 13, -1, 13, 13},
      {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2},
      {{{0, 1}, {6, 7}}, {{0, 3}, {12, 13}}, {{2, 3}}});
}

// "David , whose children are called Tom and Ann , is here ."
// The mention of interest is [0, 9): "David, whose children are called Tom and Ann".
inline Document relative_clause() {
  return make_document(
      "relative_clause",
      {"David", ",", "whose", "children", "are", "called", "Tom", "and", "Ann", ",", "is", "here", "."},
      {"NNP", ",", "WP$", "NNS", "VBP", "VBN", "NNP", "CC", "NNP", ",", "VBZ", "RB", "."},
      {10, 0, 3, 5, 5, 0, 5, 6, 6, 0, -1, 10, 10},
      std::vector<std::size_t>(13, 0),
      {{{0, 9}}, {{6, 9}}, {{6, 7}}, {{8, 9}}});
}

inline constexpr MentionSpan kRelativeClauseSpan{0, 9};

// How the baseline model resolved the clash between a conjoined mention and
// its first conjunct: keep the word-level link, or drop it.
enum class CollisionOutcome { KeepLink, DropLink };

struct DemoExample {
  std::string name;
  // Clusters are the evaluation key (the entities a reader would mark).
  Document doc;
  // Conjunct NPs that are mentions of their own entities in training data
  // even when this text never refers back to them.
  std::vector<MentionSpan> nested_mentions;
  CollisionOutcome baseline_outcome = CollisionOutcome::DropLink;
};

inline std::vector<DemoExample> demo_examples() {
  std::vector<DemoExample> out;
  out.push_back({"tom_and_anna",
                 make_document("tom_and_anna",
                               {"Tom", "and", "Anna", "are", "talking", ".", "They", "are", "talking", "."},
                               {"NNP", "CC", "NNP", "VBP", "VBG", ".", "PRP", "VBP", "VBG", "."},
                               {4, 0, 0, 4, -1, 4, 8, 8, -1, 8}, {0, 0, 0, 0, 0, 0, 1, 1, 1, 1},
                               {{{0, 3}, {6, 7}}}),
                 {{0, 1}, {2, 3}},
                 CollisionOutcome::KeepLink});
  out.push_back({"david_and_bert",
                 make_document("david_and_bert",
                               {"My", "friend", "David", "and", "my", "dad", "Bert", "are", "talking", ".", "They",
                                "are", "talking", "."},
                               {"PRP$", "NN", "NNP", "CC", "PRP$", "NN", "NNP", "VBP", "VBG", ".", "PRP", "VBP",
                                "VBG", "."},
                               {1, 2, 8, 2, 5, 6, 2, 8, -1, 8, 12, 12, -1, 12},
                               {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1},
                               {{{0, 1}, {4, 5}}, {{0, 7}, {10, 11}}}),
                 {{0, 3}, {4, 7}},
                 CollisionOutcome::DropLink});
  out.push_back({"guardian_and_chronicle",
                 make_document("guardian_and_chronicle",
                               {"The", "Guardian", "and", "The", "Chronicle", "had", "a", "secret", "meeting", ".",
                                "Both", "newspapers", "are", "on", "thin", "ice", "."},
                               {"DT", "NNP", "CC", "DT", "NNP", "VBD", "DT", "JJ", "NN", ".", "DT", "NNS", "VBP",
                                "IN", "JJ", "NN", "."},
                               {1, 5, 1, 4, 1, -1, 8, 8, 5, 5, 11, 12, -1, 12, 15, 13, 12},
                               {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1},
                               {{{0, 5}, {10, 12}}}),
                 {{0, 2}, {3, 5}},
                 CollisionOutcome::DropLink});
  return out;
}

// The demo texts with key clusters only, as shipped in data/conjunctions.jsonl.
inline std::vector<Document> demo_corpus() {
  std::vector<Document> docs;
  for (const auto& ex : demo_examples()) docs.push_back(ex.doc);
  return docs;
}

}  // namespace cawcoref::fixtures
