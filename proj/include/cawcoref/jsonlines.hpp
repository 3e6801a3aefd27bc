#pragma once

// One document per line:
//   {"doc_id": "...", "part": 0, "words": [...], "pos": [...], "sent_id": [...],
//    "head": [3, null, ...], "clusters": [[[start, end], ...], ...]}
// Optional: "deprel" (per-token labels, carried through) and "cluster_ids"
// (written only when ids are not 0..m-1). Unknown keys are ignored on input.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cawcoref/document.hpp"
#include "cawcoref/error.hpp"

namespace cawcoref {

inline constexpr int kJsonlinesSchemaVersion = 1;

namespace jsonl_detail {

using nlohmann::json;

inline const json& field(const json& obj, const char* name, std::size_t line) {
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(line, std::string("missing field '") + name + "'");
  return *it;
}

inline const json& array_field(const json& obj, const char* name, std::size_t line) {
  const json& v = field(obj, name, line);
  if (!v.is_array()) throw ParseError(line, std::string("field '") + name + "' is not an array");
  return v;
}

inline std::size_t to_index(const json& v, std::size_t line, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(line, std::string(what) + " is not a non-negative integer: " + v.dump());
  }
  return v.get<std::size_t>();
}

}  // namespace jsonl_detail

inline Document document_from_json(const nlohmann::json& obj, std::size_t line = 0) {
  using namespace jsonl_detail;
  if (!obj.is_object()) throw ParseError(line, "document is not a JSON object");

  Document doc;
  const json& id = field(obj, "doc_id", line);
  if (!id.is_string()) throw ParseError(line, "doc_id is not a string");
  doc.doc_id = id.get<std::string>();
  const json& part = field(obj, "part", line);
  if (!part.is_number_integer()) throw ParseError(line, "part is not an integer");
  doc.part = part.get<int>();

  const json& words = array_field(obj, "words", line);
  const json& pos = array_field(obj, "pos", line);
  const json& sent = array_field(obj, "sent_id", line);
  const json& head = array_field(obj, "head", line);
  const json* deprel = obj.contains("deprel") ? &array_field(obj, "deprel", line) : nullptr;

  const std::size_t n = words.size();
  auto check_len = [&](const json& arr, const char* name) {
    if (arr.size() != n) {
      throw ValidationError("line " + std::to_string(line) + ": '" + name + "' has " +
                            std::to_string(arr.size()) + " entries but 'words' has " +
                            std::to_string(n));
    }
  };
  check_len(pos, "pos");
  check_len(sent, "sent_id");
  check_len(head, "head");
  if (deprel) check_len(*deprel, "deprel");

  doc.tokens.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Token& tok = doc.tokens[i];
    tok.index = i;
    if (!words[i].is_string() || !pos[i].is_string()) {
      throw ParseError(line, "token " + std::to_string(i) + ": word and pos must be strings");
    }
    tok.word = words[i].get<std::string>();
    tok.pos = pos[i].get<std::string>();
    tok.sent_id = to_index(sent[i], line, "sent_id");
    if (!head[i].is_null()) tok.head = to_index(head[i], line, "head");
    if (deprel && !(*deprel)[i].is_null()) {
      if (!(*deprel)[i].is_string()) throw ParseError(line, "deprel entries must be strings");
      tok.deprel = (*deprel)[i].get<std::string>();
    }
  }

  const json& clusters = array_field(obj, "clusters", line);
  const json* ids = obj.contains("cluster_ids") ? &array_field(obj, "cluster_ids", line) : nullptr;
  if (ids && ids->size() != clusters.size()) {
    throw ValidationError("line " + std::to_string(line) + ": 'cluster_ids' does not match 'clusters'");
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (!clusters[c].is_array()) throw ParseError(line, "cluster is not an array");
    Cluster cluster;
    cluster.id = ids ? (*ids)[c].get<int>() : static_cast<int>(c);
    for (const json& span : clusters[c]) {
      if (!span.is_array() || span.size() != 2) {
        throw ParseError(line, "span must be a two-element array [start, end): " + span.dump());
      }
      cluster.spans.push_back({to_index(span[0], line, "span start"), to_index(span[1], line, "span end")});
    }
    doc.clusters.push_back(std::move(cluster));
  }

  try {
    validate(doc);
  } catch (const ValidationError& e) {
    throw ValidationError("line " + std::to_string(line) + ": " + e.what());
  }
  return doc;
}

inline nlohmann::ordered_json document_to_json(const Document& doc) {
  nlohmann::ordered_json obj;
  obj["doc_id"] = doc.doc_id;
  obj["part"] = doc.part;
  auto words = nlohmann::ordered_json::array();
  auto pos = nlohmann::ordered_json::array();
  auto sent = nlohmann::ordered_json::array();
  auto head = nlohmann::ordered_json::array();
  bool has_deprel = false;
  for (const auto& tok : doc.tokens) {
    words.push_back(tok.word);
    pos.push_back(tok.pos);
    sent.push_back(tok.sent_id);
    head.push_back(tok.head ? nlohmann::ordered_json(*tok.head) : nlohmann::ordered_json(nullptr));
    has_deprel = has_deprel || tok.deprel.has_value();
  }
  obj["words"] = std::move(words);
  obj["pos"] = std::move(pos);
  obj["sent_id"] = std::move(sent);
  obj["head"] = std::move(head);
  if (has_deprel) {
    auto deprel = nlohmann::ordered_json::array();
    for (const auto& tok : doc.tokens) {
      deprel.push_back(tok.deprel ? nlohmann::ordered_json(*tok.deprel) : nlohmann::ordered_json(nullptr));
    }
    obj["deprel"] = std::move(deprel);
  }
  auto clusters = nlohmann::ordered_json::array();
  bool positional_ids = true;
  for (std::size_t c = 0; c < doc.clusters.size(); ++c) {
    positional_ids = positional_ids && doc.clusters[c].id == static_cast<int>(c);
    auto spans = nlohmann::ordered_json::array();
    for (const auto& s : doc.clusters[c].spans) spans.push_back({s.start, s.end});
    clusters.push_back(std::move(spans));
  }
  obj["clusters"] = std::move(clusters);
  if (!positional_ids) {
    auto ids = nlohmann::ordered_json::array();
    for (const auto& c : doc.clusters) ids.push_back(c.id);
    obj["cluster_ids"] = std::move(ids);
  }
  return obj;
}

// Calls `fn(json_object, line_number)` for every non-blank line.
template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      // syntax errors and numeric overflow alike
      throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    fn(obj, lineno);
  }
}

inline std::vector<Document> parse_jsonlines(std::istream& in) {
  std::vector<Document> docs;
  for_each_json_line(in, [&](const nlohmann::json& obj, std::size_t line) {
    try {
      docs.push_back(document_from_json(obj, line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line, e.what());
    }
  });
  return docs;
}

inline std::vector<Document> parse_jsonlines(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_jsonlines(in);
}

inline void emit_jsonlines(std::ostream& out, const std::vector<Document>& docs) {
  for (const auto& doc : docs) out << document_to_json(doc).dump() << '\n';
}

inline std::string emit_jsonlines(const std::vector<Document>& docs) {
  std::ostringstream out;
  emit_jsonlines(out, docs);
  return out.str();
}

}  // namespace cawcoref
