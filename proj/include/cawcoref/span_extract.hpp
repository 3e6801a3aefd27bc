#pragma once

// Span reconstruction around a coreferent head-word from start/end boundary
// scores. The choice is local to one head: nothing here looks at the cluster
// the head belongs to.

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cawcoref/document.hpp"
#include "cawcoref/error.hpp"
#include "cawcoref/jsonlines.hpp"
#include "cawcoref/wl_dataset.hpp"

namespace cawcoref {

inline constexpr int kBoundarySchemaVersion = 1;

// start_scores[s - sent_start] for s in [sent_start, head];
// end_scores[e - head - 1] for exclusive ends e in (head, sent_end].
struct BoundaryScores {
  std::string doc_id;
  int part = 0;
  std::size_t head = 0;
  std::size_t sent_start = 0;
  std::size_t sent_end = 0;
  std::vector<double> start_scores;
  std::vector<double> end_scores;

  friend bool operator==(const BoundaryScores&, const BoundaryScores&) = default;
};

inline void check_boundaries(const BoundaryScores& b) {
  if (b.start_scores.empty() || b.end_scores.empty()) {
    throw ArgumentError("head " + std::to_string(b.head) + " has an empty candidate range");
  }
  if (b.head < b.sent_start || b.head >= b.sent_end) {
    throw ArgumentError("head " + std::to_string(b.head) + " outside sentence [" +
                        std::to_string(b.sent_start) + "," + std::to_string(b.sent_end) + ")");
  }
  if (b.start_scores.size() != b.head - b.sent_start + 1 || b.end_scores.size() != b.sent_end - b.head) {
    throw ArgumentError("boundary scores for head " + std::to_string(b.head) +
                        " do not cover the sentence window");
  }
}

// Start and end are scored independently, so the best pair is the best start
// with the best end. Ties resolve to the narrowest span: the start nearest the
// head, then the smallest end.
inline MentionSpan select_span(const BoundaryScores& b) {
  check_boundaries(b);
  std::size_t best_s = 0;
  for (std::size_t s = 1; s < b.start_scores.size(); ++s) {
    if (b.start_scores[s] >= b.start_scores[best_s]) best_s = s;
  }
  std::size_t best_e = 0;
  for (std::size_t e = 1; e < b.end_scores.size(); ++e) {
    if (b.end_scores[e] > b.end_scores[best_e]) best_e = e;
  }
  return {b.sent_start + best_s, b.head + 1 + best_e};
}

// One-hot scores at the gold boundaries of word_to_span[head]. The window is
// the head's sentence, widened if the gold span crosses a sentence break.
inline BoundaryScores oracle_boundaries(const WordLevelDoc& wl, std::size_t head) {
  auto it = wl.word_to_span.find(head);
  if (it == wl.word_to_span.end()) {
    throw LookupError("token " + std::to_string(head) + " has no word-to-span entry in " + wl.doc_id);
  }
  const MentionSpan gold = it->second;
  std::size_t start = head;
  while (start > 0 && wl.sent_ids[start - 1] == wl.sent_ids[head]) --start;
  std::size_t end = head + 1;
  while (end < wl.sent_ids.size() && wl.sent_ids[end] == wl.sent_ids[head]) ++end;
  start = std::min(start, gold.start);
  end = std::max(end, gold.end);

  BoundaryScores b;
  b.doc_id = wl.doc_id;
  b.part = wl.part;
  b.head = head;
  b.sent_start = start;
  b.sent_end = end;
  b.start_scores.assign(head - start + 1, 0.0);
  b.end_scores.assign(end - head, 0.0);
  b.start_scores[gold.start - start] = 1.0;
  b.end_scores[gold.end - head - 1] = 1.0;
  return b;
}

inline nlohmann::ordered_json boundaries_to_json(const BoundaryScores& b) {
  nlohmann::ordered_json obj;
  obj["doc_id"] = b.doc_id;
  obj["part"] = b.part;
  obj["head"] = b.head;
  obj["sent_start"] = b.sent_start;
  obj["sent_end"] = b.sent_end;
  obj["start_scores"] = b.start_scores;
  obj["end_scores"] = b.end_scores;
  return obj;
}

inline BoundaryScores boundaries_from_json(const nlohmann::json& obj, std::size_t line = 0) {
  using jsonl_detail::array_field;
  using jsonl_detail::field;
  using jsonl_detail::to_index;
  if (!obj.is_object()) throw ParseError(line, "boundary record is not a JSON object");
  BoundaryScores b;
  const auto& id = field(obj, "doc_id", line);
  if (!id.is_string()) throw ParseError(line, "doc_id is not a string");
  b.doc_id = id.get<std::string>();
  const auto& part = field(obj, "part", line);
  if (!part.is_number_integer()) throw ParseError(line, "part is not an integer");
  b.part = part.get<int>();
  b.head = to_index(field(obj, "head", line), line, "head");
  b.sent_start = to_index(field(obj, "sent_start", line), line, "sent_start");
  b.sent_end = to_index(field(obj, "sent_end", line), line, "sent_end");
  auto read_scores = [&](const char* name) {
    std::vector<double> v;
    for (const auto& x : array_field(obj, name, line)) {
      if (!x.is_number()) throw ParseError(line, std::string(name) + " holds a non-number");
      const double d = x.get<double>();
      if (!std::isfinite(d)) throw ValidationError("line " + std::to_string(line) + ": non-finite boundary score");
      v.push_back(d);
    }
    return v;
  };
  b.start_scores = read_scores("start_scores");
  b.end_scores = read_scores("end_scores");
  try {
    check_boundaries(b);
  } catch (const ArgumentError& e) {
    throw ValidationError("line " + std::to_string(line) + ": " + e.what());
  }
  return b;
}

inline std::vector<BoundaryScores> parse_boundaries(std::istream& in) {
  std::vector<BoundaryScores> out;
  for_each_json_line(in, [&](const nlohmann::json& obj, std::size_t line) {
    try {
      out.push_back(boundaries_from_json(obj, line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line, e.what());
    }
  });
  return out;
}

inline void emit_boundaries(std::ostream& out, const std::vector<BoundaryScores>& records) {
  for (const auto& b : records) out << boundaries_to_json(b).dump() << '\n';
}

}  // namespace cawcoref
