#pragma once

// CoNLL-2012 coreference columns.
//
// A token line is whitespace separated. The coreference cell is "-" or a
// "|"-joined list of "(7" (open), "7)" (close) and "(7)" (single-token
// mention). A close matches the most recent unmatched open of the same
// cluster. Blank lines end sentences; "#begin document" / "#end document"
// lines are accepted and regenerated on output.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cawcoref/document.hpp"
#include "cawcoref/error.hpp"

namespace cawcoref {

struct ColumnConfig {
  int doc_col = 0;
  int part_col = 1;
  int word_num_col = 2;
  int word_col = 3;
  int pos_col = 4;
  int coref_col = -1;  // negative: last column
};

namespace conll_detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

inline int parse_int(std::string_view text, std::size_t line, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line, std::string(what) + " '" + std::string(text) + "' is not an integer");
  }
  return value;
}

inline int parse_cluster_id(std::string_view text, std::size_t line) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError(line, "cluster id '" + std::string(text) + "' is not a non-negative integer");
  }
  return parse_int(text, line, "cluster id");
}

// Column positions resolved against a line with `ncols` columns.
struct Layout {
  std::size_t doc, part, word_num, word, pos, coref;

  static std::size_t resolve(int col, std::size_t ncols) {
    return col < 0 ? ncols - static_cast<std::size_t>(-col) : static_cast<std::size_t>(col);
  }

  Layout(const ColumnConfig& cfg, std::size_t ncols)
      : doc(resolve(cfg.doc_col, ncols)),
        part(resolve(cfg.part_col, ncols)),
        word_num(resolve(cfg.word_num_col, ncols)),
        word(resolve(cfg.word_col, ncols)),
        pos(resolve(cfg.pos_col, ncols)),
        coref(resolve(cfg.coref_col, ncols)) {}

  std::vector<std::size_t> used() const { return {doc, part, word_num, word, pos, coref}; }

  bool is_used(std::size_t c) const {
    auto u = used();
    return std::find(u.begin(), u.end(), c) != u.end();
  }
};

struct OpenMention {
  std::size_t token;
  std::size_t line;
};

struct DocState {
  Document doc;
  std::size_t ncols = 0;
  std::size_t sent_id = 0;
  bool sentence_has_tokens = false;
  std::map<int, std::vector<OpenMention>> open;
  std::map<int, std::vector<MentionSpan>> spans;
};

inline void finish(DocState& st) {
  for (const auto& [id, stack] : st.open) {
    if (!stack.empty()) {
      throw ParseError(stack.back().line,
                       "unclosed coreference bracket for cluster " + std::to_string(id));
    }
  }
  st.open.clear();
  st.doc.clusters.clear();
  for (auto& [id, spans] : st.spans) {
    std::sort(spans.begin(), spans.end());
    st.doc.clusters.push_back({id, spans});
  }
}

}  // namespace conll_detail

inline std::vector<Document> parse_conll(std::istream& in, const ColumnConfig& config = {}) {
  using namespace conll_detail;
  std::vector<DocState> states;
  std::map<std::pair<std::string, int>, std::size_t> by_key;
  DocState* current = nullptr;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) {
      if (current && current->sentence_has_tokens) {
        ++current->sent_id;
        current->sentence_has_tokens = false;
      }
      continue;
    }
    if (line.front() == '#') {
      if (line.rfind("#end document", 0) == 0 && current) {
        if (current->sentence_has_tokens) {
          ++current->sent_id;
          current->sentence_has_tokens = false;
        }
        current = nullptr;
      }
      continue;
    }

    auto cols = split_ws(line);
    Layout layout(config, cols.size());
    for (std::size_t c : layout.used()) {
      if (c >= cols.size()) {
        throw ParseError(lineno, "expected at least " + std::to_string(c + 1) + " columns, found " +
                                     std::to_string(cols.size()));
      }
    }

    std::pair<std::string, int> key{std::string(cols[layout.doc]),
                                    parse_int(cols[layout.part], lineno, "part")};
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      it = by_key.emplace(key, states.size()).first;
      states.emplace_back();
      states.back().doc.doc_id = key.first;
      states.back().doc.part = key.second;
      states.back().ncols = cols.size();
    }
    current = &states[it->second];
    if (cols.size() != current->ncols) {
      throw ParseError(lineno, "ragged line: " + std::to_string(cols.size()) +
                                   " columns where the document uses " +
                                   std::to_string(current->ncols));
    }

    Document& doc = current->doc;
    Token tok;
    tok.index = doc.tokens.size();
    tok.word = std::string(cols[layout.word]);
    tok.pos = std::string(cols[layout.pos]);
    tok.sent_id = current->sent_id;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!layout.is_used(c)) tok.passthrough.emplace_back(cols[c]);
    }
    current->sentence_has_tokens = true;

    std::string_view cell = cols[layout.coref];
    if (cell != "-") {
      std::size_t pos = 0;
      while (pos <= cell.size()) {
        std::size_t bar = cell.find('|', pos);
        if (bar == std::string_view::npos) bar = cell.size();
        std::string_view entry = cell.substr(pos, bar - pos);
        pos = bar + 1;
        if (entry.empty()) throw ParseError(lineno, "empty coreference entry in '" + std::string(cell) + "'");
        const bool opens = entry.front() == '(';
        const bool closes = entry.back() == ')';
        if (opens) entry.remove_prefix(1);
        if (closes && !entry.empty()) entry.remove_suffix(1);
        if (!opens && !closes) {
          throw ParseError(lineno, "coreference entry '" + std::string(entry) + "' has no bracket");
        }
        const int id = parse_cluster_id(entry, lineno);
        if (opens && closes) {
          current->spans[id].push_back({tok.index, tok.index + 1});
        } else if (opens) {
          current->open[id].push_back({tok.index, lineno});
        } else {
          auto& stack = current->open[id];
          if (stack.empty()) {
            throw ParseError(lineno, "closing bracket for cluster " + std::to_string(id) +
                                         " without a matching open");
          }
          current->spans[id].push_back({stack.back().token, tok.index + 1});
          stack.pop_back();
        }
      }
    }
    doc.tokens.push_back(std::move(tok));
  }

  std::vector<Document> docs;
  docs.reserve(states.size());
  for (auto& st : states) {
    finish(st);
    validate(st.doc);
    docs.push_back(std::move(st.doc));
  }
  return docs;
}

inline std::vector<Document> parse_conll(std::string_view text, const ColumnConfig& config = {}) {
  std::istringstream in{std::string(text)};
  return parse_conll(in, config);
}

// Renders one coreference cell per token: closes, then single-token mentions,
// then opens, each group ordered by cluster id.
inline std::vector<std::string> coref_cells(const Document& doc) {
  struct Marks {
    std::vector<int> closes, units, opens;
  };
  std::vector<Marks> marks(doc.size());
  for (const auto& cluster : doc.clusters) {
    for (const auto& span : cluster.spans) {
      if (span.start >= span.end || span.end > doc.size()) {
        throw ValidationError(describe(doc) + ": cannot emit span " + to_string(span) +
                              " of cluster " + std::to_string(cluster.id));
      }
      if (span.width() == 1) {
        marks[span.start].units.push_back(cluster.id);
      } else {
        marks[span.start].opens.push_back(cluster.id);
        marks[span.end - 1].closes.push_back(cluster.id);
      }
    }
  }
  std::vector<std::string> cells;
  cells.reserve(doc.size());
  for (auto& m : marks) {
    std::sort(m.closes.begin(), m.closes.end());
    std::sort(m.units.begin(), m.units.end());
    std::sort(m.opens.begin(), m.opens.end());
    std::string cell;
    auto add = [&cell](const std::string& entry) {
      if (!cell.empty()) cell += '|';
      cell += entry;
    };
    for (int id : m.closes) add(std::to_string(id) + ")");
    for (int id : m.units) add("(" + std::to_string(id) + ")");
    for (int id : m.opens) add("(" + std::to_string(id));
    cells.push_back(cell.empty() ? "-" : cell);
  }
  return cells;
}

inline void emit_conll(std::ostream& out, const std::vector<Document>& docs,
                       const ColumnConfig& config = {}) {
  for (const auto& doc : docs) {
    const auto cells = coref_cells(doc);
    char part[16];
    std::snprintf(part, sizeof part, "%03d", doc.part);
    out << "#begin document (" << doc.doc_id << "); part " << part << '\n';

    std::size_t word_num = 0;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const Token& tok = doc.tokens[i];
      if (i > 0 && tok.sent_id != doc.tokens[i - 1].sent_id) {
        out << '\n';
        word_num = 0;
      }
      const std::size_t min_cols = tok.passthrough.size() + 6;
      std::size_t ncols = min_cols;
      for (int c : {config.doc_col, config.part_col, config.word_num_col, config.word_col,
                    config.pos_col, config.coref_col}) {
        if (c >= 0) ncols = std::max(ncols, static_cast<std::size_t>(c) + 1);
      }
      conll_detail::Layout layout(config, ncols);
      std::vector<std::string> row(ncols);
      row[layout.doc] = doc.doc_id;
      row[layout.part] = std::to_string(doc.part);
      row[layout.word_num] = std::to_string(word_num++);
      row[layout.word] = tok.word;
      row[layout.pos] = tok.pos.empty() ? "-" : tok.pos;
      row[layout.coref] = cells[i];
      std::size_t next = 0;
      for (std::size_t c = 0; c < ncols; ++c) {
        if (layout.is_used(c)) continue;
        row[c] = next < tok.passthrough.size() ? tok.passthrough[next++] : "-";
      }
      for (std::size_t c = 0; c < ncols; ++c) out << (c ? "\t" : "") << row[c];
      out << '\n';
    }
    if (doc.size() > 0) out << '\n';
    out << "#end document\n";
  }
}

inline std::string emit_conll(const std::vector<Document>& docs, const ColumnConfig& config = {}) {
  std::ostringstream out;
  emit_conll(out, docs, config);
  return out.str();
}

}  // namespace cawcoref
