#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cawcoref/error.hpp"

namespace cawcoref {

// Half-open token interval [start, end) within one document part.
struct MentionSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t width() const { return end - start; }
  bool contains(std::size_t token) const { return start <= token && token < end; }

  friend auto operator<=>(const MentionSpan&, const MentionSpan&) = default;
};

inline std::string to_string(const MentionSpan& span) {
  return "[" + std::to_string(span.start) + "," + std::to_string(span.end) + ")";
}

struct Token {
  std::size_t index = 0;
  std::string word;
  std::string pos;
  std::size_t sent_id = 0;
  std::optional<std::size_t> head;    // absent for roots
  std::optional<std::string> deprel;  // carried through, never consulted
  // CoNLL columns this toolkit does not interpret (speaker, NE, parse bits...).
  std::vector<std::string> passthrough;

  friend bool operator==(const Token&, const Token&) = default;
};

// A gold (or predicted) entity. The id is the CoNLL cluster number.
struct Cluster {
  int id = 0;
  std::vector<MentionSpan> spans;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Document {
  std::string doc_id;
  int part = 0;
  std::vector<Token> tokens;
  std::vector<Cluster> clusters;

  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const Document&, const Document&) = default;
};

// Sorts spans inside each cluster and clusters by id.
inline void canonicalize(Document& doc) {
  for (auto& cluster : doc.clusters) std::sort(cluster.spans.begin(), cluster.spans.end());
  std::stable_sort(doc.clusters.begin(), doc.clusters.end(),
                   [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
}

inline std::string describe(const Document& doc) {
  return doc.doc_id + " part " + std::to_string(doc.part);
}

inline void validate_span(const Document& doc, const MentionSpan& span) {
  if (span.start >= span.end || span.end > doc.size()) {
    throw ValidationError(describe(doc) + ": span " + to_string(span) +
                          " outside document of " + std::to_string(doc.size()) + " tokens");
  }
}

// Checks every Token and Document invariant. Throws ValidationError naming the
// first violation; a head cycle is reported with its member tokens.
inline void validate(const Document& doc) {
  const std::size_t n = doc.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Token& tok = doc.tokens[i];
    if (tok.index != i) {
      throw ValidationError(describe(doc) + ": token " + std::to_string(i) + " carries index " +
                            std::to_string(tok.index));
    }
    if (i > 0 && tok.sent_id < doc.tokens[i - 1].sent_id) {
      throw ValidationError(describe(doc) + ": sentence ids decrease at token " + std::to_string(i));
    }
    if (tok.head) {
      if (*tok.head == i) {
        throw ValidationError(describe(doc) + ": token " + std::to_string(i) + " is its own head");
      }
      if (*tok.head >= n) {
        throw ValidationError(describe(doc) + ": head " + std::to_string(*tok.head) + " of token " +
                              std::to_string(i) + " outside document");
      }
    }
  }

  // 0 = unvisited, 1 = on the current path, 2 = known to reach a root
  std::vector<char> state(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> path;
    std::size_t cur = i;
    while (state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      if (!doc.tokens[cur].head) break;
      cur = *doc.tokens[cur].head;
    }
    if (state[cur] == 1 && doc.tokens[cur].head) {
      auto first = std::find(path.begin(), path.end(), cur);
      std::string members;
      for (auto it = first; it != path.end(); ++it) {
        members += (members.empty() ? "" : " -> ") + std::to_string(*it);
      }
      throw ValidationError(describe(doc) + ": dependency head cycle " + members + " -> " +
                            std::to_string(cur));
    }
    for (std::size_t t : path) state[t] = 2;
  }

  for (const auto& cluster : doc.clusters) {
    std::vector<MentionSpan> sorted = cluster.spans;
    for (const auto& span : sorted) validate_span(doc, span);
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw ValidationError(describe(doc) + ": cluster " + std::to_string(cluster.id) +
                            " repeats span " + to_string(*dup));
    }
  }
}

// First and one-past-last token of the sentence containing `token`.
inline MentionSpan sentence_bounds(const Document& doc, std::size_t token) {
  const std::size_t sent = doc.tokens.at(token).sent_id;
  std::size_t start = token;
  while (start > 0 && doc.tokens[start - 1].sent_id == sent) --start;
  std::size_t end = token + 1;
  while (end < doc.size() && doc.tokens[end].sent_id == sent) ++end;
  return {start, end};
}

}  // namespace cawcoref
