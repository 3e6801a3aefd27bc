#pragma once

// Word-level decomposition of span clusters.
//
// Every gold span is represented by its head-word. Clusters become clusters of
// head-words, and a word-to-span table remembers which span each head stands
// for. When spans of different clusters share a head the narrower span keeps
// the word (ties: earlier cluster, then earlier start); the wider span's
// cluster loses that word and the clash is listed in the ConflictReport.

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cawcoref/document.hpp"
#include "cawcoref/error.hpp"
#include "cawcoref/headword.hpp"

namespace cawcoref {

struct WordCluster {
  int id = 0;  // gold cluster id
  std::vector<std::size_t> words;

  friend bool operator==(const WordCluster&, const WordCluster&) = default;
};

struct SpanHead {
  int cluster_id = 0;
  HeadwordAssignment assignment;
};

struct WordLevelDoc {
  std::string doc_id;
  int part = 0;
  WordRule rule_used = WordRule::Baseline;
  std::vector<WordCluster> word_clusters;
  std::map<std::size_t, MentionSpan> word_to_span;
  std::vector<std::size_t> sent_ids;  // per token, for sentence windows
  std::vector<SpanHead> span_heads;   // every gold span with its chosen head
};

struct CollisionEntry {
  int cluster_id = 0;
  MentionSpan span;

  friend bool operator==(const CollisionEntry&, const CollisionEntry&) = default;
};

struct Collision {
  std::string doc_id;
  int part = 0;
  std::size_t token = 0;
  std::vector<CollisionEntry> entries;
};

struct ConflictReport {
  std::vector<Collision> collisions;
  std::size_t conjoined_span_count = 0;
  std::size_t total_span_count = 0;
  std::size_t sequential_count = 0;
  std::size_t punctuation_coordination_count = 0;

  ConflictReport& operator+=(const ConflictReport& other) {
    collisions.insert(collisions.end(), other.collisions.begin(), other.collisions.end());
    conjoined_span_count += other.conjoined_span_count;
    total_span_count += other.total_span_count;
    sequential_count += other.sequential_count;
    punctuation_coordination_count += other.punctuation_coordination_count;
    return *this;
  }

  std::optional<double> conjoined_ratio() const {
    if (total_span_count == 0) return std::nullopt;
    return static_cast<double>(conjoined_span_count) / static_cast<double>(total_span_count);
  }
};

// Percentage with two decimals, or "n/a" for an empty corpus.
inline std::string format_ratio(std::optional<double> ratio) {
  if (!ratio) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", *ratio * 100.0);
  return buf;
}

inline std::pair<WordLevelDoc, ConflictReport> build_wl(const Document& doc, WordRule rule,
                                                        const HeadwordConfig& config = {}) {
  WordLevelDoc wl;
  wl.doc_id = doc.doc_id;
  wl.part = doc.part;
  wl.rule_used = rule;
  for (const auto& tok : doc.tokens) wl.sent_ids.push_back(tok.sent_id);

  ConflictReport report;

  struct Claim {
    std::size_t cluster_pos;
    MentionSpan span;
  };
  std::map<std::size_t, std::vector<Claim>> claims;
  for (std::size_t c = 0; c < doc.clusters.size(); ++c) {
    for (const auto& span : doc.clusters[c].spans) {
      validate_span(doc, span);
      const HeadwordAssignment a = select_headword(doc, span, rule, config);
      wl.span_heads.push_back({doc.clusters[c].id, a});
      claims[a.head_index].push_back({c, span});

      const ConjunctionReport conj = analyze_conjunction(doc, span, config);
      ++report.total_span_count;
      if (conj.is_conjoined) ++report.conjoined_span_count;
      if (conj.is_sequential) ++report.sequential_count;
      if (conj.is_punctuation_coordination) ++report.punctuation_coordination_count;
    }
  }

  std::map<std::size_t, std::size_t> owner;  // head token -> winning cluster position
  for (auto& [token, list] : claims) {
    const Claim& winner = *std::min_element(list.begin(), list.end(), [](const Claim& a, const Claim& b) {
      if (a.span.width() != b.span.width()) return a.span.width() < b.span.width();
      if (a.cluster_pos != b.cluster_pos) return a.cluster_pos < b.cluster_pos;
      return a.span.start < b.span.start;
    });
    wl.word_to_span[token] = winner.span;
    owner[token] = winner.cluster_pos;

    const bool cross_cluster = std::any_of(list.begin(), list.end(), [&](const Claim& c) {
      return c.cluster_pos != winner.cluster_pos;
    });
    if (cross_cluster) {
      Collision col{doc.doc_id, doc.part, token, {}};
      for (const auto& c : list) col.entries.push_back({doc.clusters[c.cluster_pos].id, c.span});
      report.collisions.push_back(std::move(col));
    }
  }

  for (std::size_t c = 0; c < doc.clusters.size(); ++c) {
    WordCluster wc{doc.clusters[c].id, {}};
    for (const auto& [token, list] : claims) {
      if (owner[token] != c) continue;
      if (std::any_of(list.begin(), list.end(), [c](const Claim& cl) { return cl.cluster_pos == c; })) {
        wc.words.push_back(token);
      }
    }
    if (!wc.words.empty()) wl.word_clusters.push_back(std::move(wc));
  }
  return {std::move(wl), std::move(report)};
}

inline ConflictReport corpus_stats(const std::vector<Document>& docs, WordRule rule = WordRule::Baseline,
                                   const HeadwordConfig& config = {}) {
  ConflictReport total;
  for (const auto& doc : docs) total += build_wl(doc, rule, config).second;
  return total;
}

inline std::vector<std::vector<MentionSpan>> reconstruct_spans(
    const WordLevelDoc& wl, const std::vector<std::vector<std::size_t>>& coreferent_words) {
  std::vector<std::vector<MentionSpan>> out;
  out.reserve(coreferent_words.size());
  for (const auto& cluster : coreferent_words) {
    std::vector<MentionSpan> spans;
    for (std::size_t w : cluster) {
      auto it = wl.word_to_span.find(w);
      if (it == wl.word_to_span.end()) {
        throw LookupError("token " + std::to_string(w) + " has no word-to-span entry in " + wl.doc_id);
      }
      spans.push_back(it->second);
    }
    out.push_back(std::move(spans));
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> word_cluster_lists(const WordLevelDoc& wl) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& wc : wl.word_clusters) out.push_back(wc.words);
  return out;
}

}  // namespace cawcoref
