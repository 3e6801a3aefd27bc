#pragma once

// Head-word selection for mention spans.
//
// Baseline rule: the head is the one token of the span whose dependency head
// lies outside the span (or which is a root). With zero or several such
// tokens the right-most token is used instead.
//
// Conjunction-aware rule: a coordinating conjunction inside the span whose
// head chain reaches the baseline head in fewer than two steps, without
// leaving the span, replaces the baseline head.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cawcoref/document.hpp"

namespace cawcoref {

enum class HeadRule { Baseline, CawConjunction, CawFallbackBaseline };
enum class FallbackReason { NoExternalDependent, MultipleExternalDependents };

inline const char* to_string(HeadRule r) {
  switch (r) {
    case HeadRule::Baseline: return "baseline";
    case HeadRule::CawConjunction: return "caw_conjunction";
    case HeadRule::CawFallbackBaseline: return "caw_fallback_baseline";
  }
  return "?";
}

inline const char* to_string(FallbackReason r) {
  return r == FallbackReason::NoExternalDependent ? "no_external_dependent"
                                                  : "multiple_external_dependents";
}

struct HeadwordAssignment {
  MentionSpan span;
  std::size_t head_index = 0;
  HeadRule rule = HeadRule::Baseline;
  std::optional<FallbackReason> fallback_reason;

  friend bool operator==(const HeadwordAssignment&, const HeadwordAssignment&) = default;
};

struct ConjunctionReport {
  MentionSpan span;
  std::vector<std::size_t> cc_positions;
  // Steps from each cc to the baseline head; empty when the chain leaves the span.
  std::vector<std::optional<std::size_t>> depths;
  bool is_conjoined = false;
  bool is_sequential = false;
  bool is_punctuation_coordination = false;
};

struct HeadwordConfig {
  std::set<std::string> cc_tags{"CC"};
  // Tokens that may act as a comma/hyphen coordinator, matched on word form or POS.
  std::set<std::string> punctuation{",", "-", "--", "HYPH"};
};

inline HeadwordAssignment baseline_headword(const Document& doc, const MentionSpan& span) {
  std::size_t external = 0;
  std::size_t found = span.start;
  for (std::size_t t = span.start; t < span.end; ++t) {
    const auto& head = doc.tokens[t].head;
    if (!head || !span.contains(*head)) {
      ++external;
      found = t;
    }
  }
  HeadwordAssignment out{span, found, HeadRule::Baseline, std::nullopt};
  if (external != 1) {
    out.head_index = span.end - 1;
    out.fallback_reason = external == 0 ? FallbackReason::NoExternalDependent
                                        : FallbackReason::MultipleExternalDependents;
  }
  return out;
}

inline ConjunctionReport analyze_conjunction(const Document& doc, const MentionSpan& span,
                                             const HeadwordConfig& config = {}) {
  ConjunctionReport report;
  report.span = span;
  const std::size_t base = baseline_headword(doc, span).head_index;

  std::size_t qualifying = 0;
  for (std::size_t t = span.start; t < span.end; ++t) {
    if (!config.cc_tags.contains(doc.tokens[t].pos)) continue;
    report.cc_positions.push_back(t);
    std::optional<std::size_t> depth;
    std::size_t cur = t;
    // A chain inside the span has at most width - 1 steps.
    for (std::size_t steps = 0; steps < span.width(); ++steps) {
      if (cur == base) {
        depth = steps;
        break;
      }
      const auto& head = doc.tokens[cur].head;
      if (!head || !span.contains(*head)) break;
      cur = *head;
    }
    report.depths.push_back(depth);
    if (depth && *depth < 2) ++qualifying;
  }
  report.is_conjoined = qualifying >= 1;
  report.is_sequential = qualifying >= 2;

  if (!report.is_conjoined && span.width() >= 3) {
    for (std::size_t t = span.start + 1; t + 1 < span.end; ++t) {
      const Token& tok = doc.tokens[t];
      const bool punct = config.punctuation.contains(tok.word) || config.punctuation.contains(tok.pos);
      if (punct && tok.head == base) {
        report.is_punctuation_coordination = true;
        break;
      }
    }
  }
  return report;
}

inline HeadwordAssignment caw_headword(const Document& doc, const MentionSpan& span,
                                       const HeadwordConfig& config = {}) {
  const ConjunctionReport report = analyze_conjunction(doc, span, config);
  if (report.is_conjoined) {
    std::optional<std::size_t> best;
    std::size_t best_depth = 0;
    for (std::size_t c = 0; c < report.cc_positions.size(); ++c) {
      const auto& d = report.depths[c];
      if (!d || *d >= 2) continue;
      if (!best || *d < best_depth) {
        best = report.cc_positions[c];
        best_depth = *d;
      }
    }
    return {span, *best, HeadRule::CawConjunction, std::nullopt};
  }
  HeadwordAssignment out = baseline_headword(doc, span);
  out.rule = HeadRule::CawFallbackBaseline;
  return out;
}

enum class WordRule { Baseline, Caw };

inline const char* to_string(WordRule r) { return r == WordRule::Baseline ? "baseline" : "caw"; }

inline HeadwordAssignment select_headword(const Document& doc, const MentionSpan& span, WordRule rule,
                                          const HeadwordConfig& config = {}) {
  return rule == WordRule::Baseline ? baseline_headword(doc, span) : caw_headword(doc, span, config);
}

}  // namespace cawcoref
