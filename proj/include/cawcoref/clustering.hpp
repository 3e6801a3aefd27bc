#pragma once

// Word-level antecedent inference: top-k pruning of coarse scores, coarse+fine
// combination, argmax-against-dummy link selection, and union-find closure.

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cawcoref/error.hpp"
#include "cawcoref/jsonlines.hpp"

namespace cawcoref {

inline constexpr int kScoreMatrixSchemaVersion = 1;

enum class ScoreKind { Coarse, Fine, Combined };

inline const char* to_string(ScoreKind k) {
  switch (k) {
    case ScoreKind::Coarse: return "coarse";
    case ScoreKind::Fine: return "fine";
    case ScoreKind::Combined: return "combined";
  }
  return "?";
}

inline ScoreKind parse_score_kind(const std::string& s) {
  if (s == "coarse") return ScoreKind::Coarse;
  if (s == "fine") return ScoreKind::Fine;
  if (s == "combined") return ScoreKind::Combined;
  throw ArgumentError("unknown score kind '" + s + "'");
}

struct Antecedent {
  std::size_t j = 0;
  double score = 0.0;

  friend bool operator==(const Antecedent&, const Antecedent&) = default;
};

// Sparse antecedent scores; rows[i] holds candidates j < i, ordered by j.
struct ScoreMatrix {
  std::string doc_id;
  int part = 0;
  std::size_t n = 0;
  ScoreKind kind = ScoreKind::Coarse;
  std::optional<std::size_t> k;
  std::vector<std::vector<Antecedent>> rows;

  explicit ScoreMatrix(std::size_t words = 0, ScoreKind kind_ = ScoreKind::Coarse)
      : n(words), kind(kind_), rows(words) {}

  void set(std::size_t i, std::size_t j, double score) {
    if (i >= n || j >= i) {
      throw ArgumentError("antecedent (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") violates j < i < n");
    }
    auto& row = rows[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Antecedent& a, std::size_t jj) { return a.j < jj; });
    if (it != row.end() && it->j == j) {
      it->score = score;
    } else {
      row.insert(it, {j, score});
    }
  }

  std::optional<double> get(std::size_t i, std::size_t j) const {
    if (i >= n) return std::nullopt;
    const auto& row = rows[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Antecedent& a, std::size_t jj) { return a.j < jj; });
    if (it == row.end() || it->j != j) return std::nullopt;
    return it->score;
  }

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;
};

using Link = std::pair<std::size_t, std::size_t>;  // (anaphor i, antecedent j), j < i

// Word clusters with members ascending; clusters ordered by first member.
using ClusterPartition = std::vector<std::vector<std::size_t>>;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

inline ScoreMatrix prune_topk(const ScoreMatrix& coarse, long long k) {
  if (k <= 0) throw ArgumentError("top-k bound must be positive, got " + std::to_string(k));
  ScoreMatrix out = coarse;
  out.k = static_cast<std::size_t>(k);
  for (auto& row : out.rows) {
    if (row.size() <= static_cast<std::size_t>(k)) continue;
    std::stable_sort(row.begin(), row.end(),
                     [](const Antecedent& a, const Antecedent& b) { return a.score > b.score; });
    row.resize(static_cast<std::size_t>(k));
    std::sort(row.begin(), row.end(), [](const Antecedent& a, const Antecedent& b) { return a.j < b.j; });
  }
  return out;
}

inline ScoreMatrix combine(const ScoreMatrix& coarse, const ScoreMatrix& fine) {
  if (coarse.n != fine.n) {
    throw StructuralError("cannot combine matrices over " + std::to_string(coarse.n) + " and " +
                          std::to_string(fine.n) + " words");
  }
  ScoreMatrix out(fine.n, ScoreKind::Combined);
  out.doc_id = fine.doc_id.empty() ? coarse.doc_id : fine.doc_id;
  out.part = fine.doc_id.empty() ? coarse.part : fine.part;
  out.k = fine.k ? fine.k : coarse.k;
  for (std::size_t i = 0; i < fine.n; ++i) {
    for (const auto& a : fine.rows[i]) {
      auto c = coarse.get(i, a.j);
      if (!c) {
        throw StructuralError("fine score (" + std::to_string(i) + ", " + std::to_string(a.j) +
                              ") has no coarse counterpart");
      }
      out.rows[i].push_back({a.j, *c + a.score});
    }
  }
  return out;
}

inline std::vector<Link> infer_links(const ScoreMatrix& scores, double dummy = 0.0) {
  std::vector<Link> links;
  for (std::size_t i = 0; i < scores.n; ++i) {
    const auto& row = scores.rows[i];
    if (row.empty()) continue;
    const Antecedent* best = &row.front();
    for (const auto& a : row) {
      if (a.score > best->score || (a.score == best->score && a.j < best->j)) best = &a;
    }
    if (best->score > dummy) links.emplace_back(i, best->j);
  }
  return links;
}

inline ClusterPartition links_to_partition(std::size_t n, const std::vector<Link>& links) {
  UnionFind uf(n);
  std::vector<bool> linked(n, false);
  for (const auto& [i, j] : links) {
    if (i >= n || j >= i) {
      throw ArgumentError("malformed link (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") for " + std::to_string(n) + " words");
    }
    uf.unite(i, j);
    linked[i] = linked[j] = true;
  }
  std::map<std::size_t, std::size_t> slot;  // root -> cluster position
  ClusterPartition out;
  for (std::size_t w = 0; w < n; ++w) {
    if (!linked[w]) continue;
    auto [it, fresh] = slot.emplace(uf.find(w), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(w);
  }
  return out;
}

// ---- wire format ----------------------------------------------------------
// {"doc_id", "part", "n", "kind", ["k",] "rows": [[i, [[j, score], ...]], ...]}

inline nlohmann::ordered_json score_matrix_to_json(const ScoreMatrix& m) {
  nlohmann::ordered_json obj;
  obj["doc_id"] = m.doc_id;
  obj["part"] = m.part;
  obj["n"] = m.n;
  obj["kind"] = to_string(m.kind);
  if (m.k) obj["k"] = *m.k;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    if (m.rows[i].empty()) continue;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& a : m.rows[i]) entries.push_back({a.j, a.score});
    rows.push_back({i, std::move(entries)});
  }
  obj["rows"] = std::move(rows);
  return obj;
}

inline ScoreMatrix score_matrix_from_json(const nlohmann::json& obj, std::size_t line = 0) {
  using jsonl_detail::field;
  using jsonl_detail::to_index;
  if (!obj.is_object()) throw ParseError(line, "score matrix is not a JSON object");
  const auto& kind = field(obj, "kind", line);
  if (!kind.is_string()) throw ParseError(line, "kind is not a string");
  ScoreMatrix m(to_index(field(obj, "n", line), line, "n"), ScoreKind::Coarse);
  try {
    m.kind = parse_score_kind(kind.get<std::string>());
  } catch (const ArgumentError& e) {
    throw ParseError(line, e.what());
  }
  const auto& id = field(obj, "doc_id", line);
  if (!id.is_string()) throw ParseError(line, "doc_id is not a string");
  m.doc_id = id.get<std::string>();
  const auto& part = field(obj, "part", line);
  if (!part.is_number_integer()) throw ParseError(line, "part is not an integer");
  m.part = part.get<int>();
  if (obj.contains("k") && !obj["k"].is_null()) m.k = to_index(obj["k"], line, "k");

  const auto& rows = jsonl_detail::array_field(obj, "rows", line);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 2 || !row[1].is_array()) {
      throw ParseError(line, "row must be [i, [[j, score], ...]]");
    }
    const std::size_t i = to_index(row[0], line, "row index");
    if (i >= m.n) throw ValidationError("line " + std::to_string(line) + ": row " + std::to_string(i) + " >= n");
    if (!m.rows[i].empty()) {
      throw ValidationError("line " + std::to_string(line) + ": row " + std::to_string(i) + " listed twice");
    }
    for (const auto& entry : row[1]) {
      if (!entry.is_array() || entry.size() != 2 || !entry[1].is_number()) {
        throw ParseError(line, "antecedent entry must be [j, score]: " + entry.dump());
      }
      const std::size_t j = to_index(entry[0], line, "antecedent index");
      const double score = entry[1].get<double>();
      if (!std::isfinite(score)) {
        throw ValidationError("line " + std::to_string(line) + ": non-finite score at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (j >= i) {
        throw ValidationError("line " + std::to_string(line) + ": antecedent " + std::to_string(j) +
                              " is not before word " + std::to_string(i));
      }
      if (m.get(i, j)) {
        throw ValidationError("line " + std::to_string(line) + ": duplicate antecedent (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      m.set(i, j, score);
    }
    if (m.k && m.kind != ScoreKind::Coarse && m.rows[i].size() > *m.k) {
      throw ValidationError("line " + std::to_string(line) + ": row " + std::to_string(i) +
                            " exceeds k = " + std::to_string(*m.k));
    }
  }
  return m;
}

inline std::vector<ScoreMatrix> parse_score_matrices(std::istream& in) {
  std::vector<ScoreMatrix> out;
  for_each_json_line(in, [&](const nlohmann::json& obj, std::size_t line) {
    try {
      out.push_back(score_matrix_from_json(obj, line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line, e.what());
    }
  });
  return out;
}

inline void emit_score_matrices(std::ostream& out, const std::vector<ScoreMatrix>& matrices) {
  for (const auto& m : matrices) out << score_matrix_to_json(m).dump() << '\n';
}

}  // namespace cawcoref
