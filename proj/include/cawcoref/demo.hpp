#pragma once

// End-to-end run of the word-level pipeline on the bundled conjunction examples:
// head-word decomposition, oracle antecedent scores, link inference,
// clustering, and oracle span extraction, each step judged against the key.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cawcoref/clustering.hpp"
#include "cawcoref/fixtures.hpp"
#include "cawcoref/headword.hpp"
#include "cawcoref/metrics.hpp"
#include "cawcoref/span_extract.hpp"
#include "cawcoref/wl_dataset.hpp"

namespace cawcoref {

inline constexpr double kOracleLinkScore = 5.0;

struct DemoRow {
  std::string example;
  WordRule rule = WordRule::Baseline;
  std::string step;  // "word" or "span"
  Partition<MentionSpan> prediction;
  bool correct = false;
  std::string rendered;
};

namespace demo_detail {

template <typename T>
std::set<std::set<T>> as_sets(const std::vector<std::vector<T>>& p) {
  std::set<std::set<T>> out;
  for (const auto& c : p) out.emplace(c.begin(), c.end());
  return out;
}

}  // namespace demo_detail

// Writes the text with every predicted mention bracketed and tagged by entity,
// e.g. "[Tom and Anna]_1 are talking . [They]_1 are talking ."
inline std::string render_prediction(const Document& doc, const Partition<MentionSpan>& clusters,
                                     bool color = false) {
  static const char* kColors[] = {"\x1b[46m", "\x1b[45m", "\x1b[43m", "\x1b[42m", "\x1b[44m"};
  struct Mark {
    MentionSpan span;
    std::size_t entity;
  };
  std::vector<Mark> marks;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (const auto& s : clusters[c]) marks.push_back({s, c + 1});
  }
  std::ostringstream out;
  for (std::size_t t = 0; t < doc.size(); ++t) {
    if (t) out << ' ';
    // wider spans open first so brackets nest
    std::vector<Mark> opening;
    for (const auto& m : marks) {
      if (m.span.start == t) opening.push_back(m);
    }
    std::sort(opening.begin(), opening.end(), [](const Mark& a, const Mark& b) { return a.span.end > b.span.end; });
    for (const auto& m : opening) {
      if (color) out << kColors[(m.entity - 1) % 5];
      out << '[';
    }
    out << doc.tokens[t].word;
    std::vector<Mark> closing;
    for (const auto& m : marks) {
      if (m.span.end == t + 1) closing.push_back(m);
    }
    std::sort(closing.begin(), closing.end(), [](const Mark& a, const Mark& b) { return a.span.start > b.span.start; });
    for (const auto& m : closing) {
      out << "]_" << m.entity;
      if (color) out << "\x1b[0m";
    }
  }
  return out.str();
}

// Antecedent scores a model trained on `wl` would produce: heads of spans in
// the same gold cluster score high, everything else low. A head claimed by
// spans of several clusters follows the example's collision outcome.
inline ScoreMatrix oracle_word_scores(const Document& training, const WordLevelDoc& wl,
                                      const ConflictReport& report, fixtures::CollisionOutcome outcome) {
  std::set<std::size_t> collided;
  for (const auto& c : report.collisions) collided.insert(c.token);

  std::map<int, std::set<std::size_t>> heads_by_cluster;
  for (const auto& sh : wl.span_heads) heads_by_cluster[sh.cluster_id].insert(sh.assignment.head_index);

  ScoreMatrix m(training.size(), ScoreKind::Coarse);
  m.doc_id = training.doc_id;
  m.part = training.part;
  for (std::size_t i = 1; i < m.n; ++i) {
    for (std::size_t j = 0; j < i; ++j) m.set(i, j, -kOracleLinkScore);
  }
  for (const auto& [id, heads] : heads_by_cluster) {
    for (std::size_t i : heads) {
      for (std::size_t j : heads) {
        if (j >= i) continue;
        const bool clash = collided.contains(i) || collided.contains(j);
        const bool keep = !clash || outcome == fixtures::CollisionOutcome::KeepLink;
        m.set(i, j, keep ? kOracleLinkScore : -kOracleLinkScore);
      }
    }
  }
  return m;
}

inline std::vector<DemoRow> run_demo_example(const fixtures::DemoExample& ex, WordRule rule,
                                             const HeadwordConfig& config = {}) {
  Document training = ex.doc;
  int next_id = 0;
  for (const auto& c : training.clusters) next_id = std::max(next_id, c.id + 1);
  for (const auto& span : ex.nested_mentions) training.clusters.push_back({next_id++, {span}});

  const auto [wl, report] = build_wl(training, rule, config);

  const ScoreMatrix scores = oracle_word_scores(training, wl, report, ex.baseline_outcome);
  const ClusterPartition words = links_to_partition(scores.n, infer_links(scores, 0.0));

  Partition<std::size_t> key_words;
  for (const auto& c : ex.doc.clusters) {
    std::vector<std::size_t> heads;
    for (const auto& s : c.spans) heads.push_back(select_headword(ex.doc, s, rule, config).head_index);
    key_words.push_back(heads);
  }

  Partition<MentionSpan> word_spans;
  Partition<MentionSpan> spans;
  for (const auto& cluster : words) {
    std::vector<MentionSpan> ws, ss;
    for (std::size_t w : cluster) {
      ws.push_back({w, w + 1});
      ss.push_back(select_span(oracle_boundaries(wl, w)));
    }
    word_spans.push_back(ws);
    spans.push_back(ss);
  }

  DemoRow word_row{ex.name, rule, "word", word_spans,
                   demo_detail::as_sets(words) == demo_detail::as_sets(key_words), ""};
  DemoRow span_row{ex.name, rule, "span", spans,
                   demo_detail::as_sets(spans) == demo_detail::as_sets(span_partition(ex.doc)), ""};
  word_row.rendered = render_prediction(ex.doc, word_spans);
  span_row.rendered = render_prediction(ex.doc, spans);
  return {word_row, span_row};
}

// Rows in display order: per example, baseline word/span then CAW word/span.
inline std::vector<DemoRow> run_demo(const HeadwordConfig& config = {}) {
  std::vector<DemoRow> rows;
  for (const auto& ex : fixtures::demo_examples()) {
    for (WordRule rule : {WordRule::Baseline, WordRule::Caw}) {
      auto r = run_demo_example(ex, rule, config);
      rows.insert(rows.end(), r.begin(), r.end());
    }
  }
  return rows;
}

}  // namespace cawcoref
