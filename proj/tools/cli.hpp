#pragma once

// Command-line front end. `run` takes its streams as arguments; main() passes
// the standard ones.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cawcoref/cawcoref.hpp"

namespace cawcoref::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kValidation = 3, kIo = 4 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::string headword_rule = "caw";
  std::vector<std::string> cc_tags{"CC"};
  double dummy = 0.0;
  std::optional<long long> top_k;
  ColumnConfig columns;
  unsigned jobs = 1;

  WordRule rule() const { return headword_rule == "baseline" ? WordRule::Baseline : WordRule::Caw; }

  HeadwordConfig headword() const {
    HeadwordConfig h;
    h.cc_tags = {cc_tags.begin(), cc_tags.end()};
    return h;
  }
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

// Opens `path` for reading, "-" meaning the provided stdin stream.
class Input {
 public:
  Input(const std::string& path, std::istream& std_in) : path_(path) {
    if (path == "-") {
      stream_ = &std_in;
    } else {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) throw IoError("cannot open '" + path + "' for reading");
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& std_out) : path_(path) {
    if (path == "-") {
      stream_ = &std_out;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

// Re-throws parse/validation failures with the file name in front.
template <typename Fn>
auto with_file_context(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline std::vector<Document> read_docs(const std::string& path, const std::string& format,
                                       const PipelineConfig& cfg, std::istream& std_in) {
  Input in(path, std_in);
  return with_file_context(path, [&] {
    return format == "conll" ? parse_conll(in.get(), cfg.columns) : parse_jsonlines(in.get());
  });
}

inline nlohmann::ordered_json span_json(const MentionSpan& s) { return {s.start, s.end}; }

inline nlohmann::ordered_json assignment_json(const HeadwordAssignment& a) {
  nlohmann::ordered_json obj;
  obj["head"] = a.head_index;
  obj["rule"] = to_string(a.rule);
  obj["fallback_reason"] =
      a.fallback_reason ? nlohmann::ordered_json(to_string(*a.fallback_reason)) : nlohmann::ordered_json(nullptr);
  return obj;
}

inline nlohmann::ordered_json collision_json(const Collision& c) {
  nlohmann::ordered_json obj;
  obj["doc_id"] = c.doc_id;
  obj["part"] = c.part;
  obj["token"] = c.token;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : c.entries) entries.push_back({{"cluster_id", e.cluster_id}, {"span", span_json(e.span)}});
  obj["entries"] = std::move(entries);
  return obj;
}

inline nlohmann::ordered_json report_json(const ConflictReport& r, WordRule rule) {
  nlohmann::ordered_json obj;
  obj["rule"] = to_string(rule);
  obj["total_span_count"] = r.total_span_count;
  obj["conjoined_span_count"] = r.conjoined_span_count;
  const auto ratio = r.conjoined_ratio();
  obj["conjoined_ratio"] = ratio ? nlohmann::ordered_json(*ratio) : nlohmann::ordered_json("n/a");
  obj["sequential_count"] = r.sequential_count;
  obj["punctuation_coordination_count"] = r.punctuation_coordination_count;
  obj["collision_count"] = r.collisions.size();
  auto cols = nlohmann::ordered_json::array();
  for (const auto& c : r.collisions) cols.push_back(collision_json(c));
  obj["collisions"] = std::move(cols);
  return obj;
}

inline double round2(double percent_value) { return std::round(percent_value * 100.0) / 100.0; }

inline nlohmann::ordered_json triple_json(const ScoreTriple& t) {
  return {{"p", round2(t.precision * 100.0)}, {"r", round2(t.recall * 100.0)}, {"f1", round2(t.f1 * 100.0)}};
}

// ---- subcommands -----------------------------------------------------------

inline int cmd_ingest(const std::string& from, const std::string& to, const std::string& input,
                      const std::string& output, const PipelineConfig& cfg, Streams io) {
  const auto docs = read_docs(input, from, cfg, io.in);
  Output out(output, io.out);
  if (to == "conll") {
    emit_conll(out.get(), docs, cfg.columns);
  } else {
    emit_jsonlines(out.get(), docs);
  }
  out.finish();
  return kOk;
}

inline int cmd_headwords(const std::string& input, const std::string& output, const PipelineConfig& cfg,
                         Streams io) {
  const auto docs = read_docs(input, "jsonl", cfg, io.in);
  const HeadwordConfig hw = cfg.headword();
  const auto lines = parallel_map(docs.size(), cfg.jobs, [&](std::size_t d) {
    const Document& doc = docs[d];
    auto obj = document_to_json(doc);
    auto mentions = nlohmann::ordered_json::array();
    std::size_t sequential = 0;
    for (const auto& cluster : doc.clusters) {
      for (const auto& span : cluster.spans) {
        const auto report = analyze_conjunction(doc, span, hw);
        nlohmann::ordered_json m;
        m["cluster_id"] = cluster.id;
        m["span"] = span_json(span);
        m["baseline"] = assignment_json(baseline_headword(doc, span));
        m["caw"] = assignment_json(caw_headword(doc, span, hw));
        m["cc_positions"] = report.cc_positions;
        auto depths = nlohmann::ordered_json::array();
        for (const auto& dep : report.depths) {
          depths.push_back(dep ? nlohmann::ordered_json(*dep) : nlohmann::ordered_json(nullptr));
        }
        m["depths"] = std::move(depths);
        m["is_conjoined"] = report.is_conjoined;
        m["is_sequential"] = report.is_sequential;
        m["is_punctuation_coordination"] = report.is_punctuation_coordination;
        if (report.is_sequential) ++sequential;
        mentions.push_back(std::move(m));
      }
    }
    obj["mentions"] = std::move(mentions);
    return std::make_pair(obj.dump(), sequential);
  });
  Output out(output, io.out);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    out.get() << lines[d].first << '\n';
    if (lines[d].second > 0) {
      io.err << "warning: " << describe(docs[d]) << ": " << lines[d].second
             << " span(s) with sequential conjunctions; left-most shallowest conjunction used\n";
    }
  }
  out.finish();
  return kOk;
}

inline int cmd_build_wl(const std::string& input, const std::string& output, const PipelineConfig& cfg,
                        Streams io) {
  const auto docs = read_docs(input, "jsonl", cfg, io.in);
  const HeadwordConfig hw = cfg.headword();
  const WordRule rule = cfg.rule();
  const auto lines = parallel_map(docs.size(), cfg.jobs, [&](std::size_t d) {
    const auto [wl, report] = build_wl(docs[d], rule, hw);
    auto obj = document_to_json(docs[d]);
    nlohmann::ordered_json w;
    w["rule"] = to_string(rule);
    auto clusters = nlohmann::ordered_json::array();
    auto ids = nlohmann::ordered_json::array();
    for (const auto& wc : wl.word_clusters) {
      clusters.push_back(wc.words);
      ids.push_back(wc.id);
    }
    w["word_clusters"] = std::move(clusters);
    w["word_cluster_ids"] = std::move(ids);
    auto mapping = nlohmann::ordered_json::array();
    for (const auto& [tok, span] : wl.word_to_span) mapping.push_back({tok, span_json(span)});
    w["word_to_span"] = std::move(mapping);
    auto cols = nlohmann::ordered_json::array();
    for (const auto& c : report.collisions) cols.push_back(collision_json(c));
    w["collisions"] = std::move(cols);
    obj["word_level"] = std::move(w);
    return obj.dump();
  });
  Output out(output, io.out);
  for (const auto& line : lines) out.get() << line << '\n';
  out.finish();
  return kOk;
}

inline int cmd_analyze(const std::string& input, const std::string& format, const std::string& json_out,
                       const PipelineConfig& cfg, Streams io) {
  const auto docs = read_docs(input, "jsonl", cfg, io.in);
  const HeadwordConfig hw = cfg.headword();
  const WordRule rule = cfg.rule();
  const auto reports =
      parallel_map(docs.size(), cfg.jobs, [&](std::size_t d) { return build_wl(docs[d], rule, hw).second; });
  ConflictReport total;
  for (const auto& r : reports) total += r;
  const auto record = report_json(total, rule);

  if (format == "json") {
    io.out << record.dump() << '\n';
  } else {
    io.out << "documents:                 " << docs.size() << '\n'
           << "head-word rule:            " << to_string(rule) << '\n'
           << "gold spans:                " << total.total_span_count << '\n'
           << "conjoined spans:           " << total.conjoined_span_count << '\n'
           << "conjoined ratio:           " << format_ratio(total.conjoined_ratio()) << '\n'
           << "sequential conjunctions:   " << total.sequential_count << '\n'
           << "comma/hyphen coordination: " << total.punctuation_coordination_count << '\n'
           << "head-word collisions:      " << total.collisions.size() << '\n';
    for (const auto& c : total.collisions) {
      io.out << "  " << c.doc_id << " part " << c.part << " token " << c.token << ":";
      for (const auto& e : c.entries) io.out << " cluster " << e.cluster_id << " " << to_string(e.span);
      io.out << '\n';
    }
  }
  if (!json_out.empty()) {
    Output out(json_out, io.out);
    out.get() << record.dump() << '\n';
    out.finish();
  }
  return kOk;
}

inline int cmd_cluster(const std::string& docs_path, const std::string& docs_format, const std::string& scores_path,
                       const std::string& spans_path, const std::string& output, const PipelineConfig& cfg,
                       Streams io) {
  const auto docs = read_docs(docs_path, docs_format, cfg, io.in);

  std::map<std::pair<std::string, int>, std::map<ScoreKind, ScoreMatrix>> matrices;
  {
    Input in(scores_path, io.in);
    auto parsed = with_file_context(scores_path, [&] { return parse_score_matrices(in.get()); });
    for (auto& m : parsed) {
      auto& slot = matrices[{m.doc_id, m.part}];
      if (slot.contains(m.kind)) {
        throw ValidationError(scores_path + ": two " + to_string(m.kind) + " matrices for " + m.doc_id);
      }
      slot.emplace(m.kind, std::move(m));
    }
  }
  std::map<std::tuple<std::string, int, std::size_t>, BoundaryScores> boundaries;
  if (!spans_path.empty()) {
    Input in(spans_path, io.in);
    auto parsed = with_file_context(spans_path, [&] { return parse_boundaries(in.get()); });
    for (auto& b : parsed) boundaries[{b.doc_id, b.part, b.head}] = std::move(b);
  }

  auto predicted = parallel_map(docs.size(), cfg.jobs, [&](std::size_t d) {
    Document doc = docs[d];
    doc.clusters.clear();
    auto it = matrices.find({doc.doc_id, doc.part});
    if (it == matrices.end()) return doc;
    const auto& kinds = it->second;

    std::optional<ScoreMatrix> scores;
    if (auto c = kinds.find(ScoreKind::Combined); c != kinds.end()) {
      scores = c->second;
    } else if (auto coarse = kinds.find(ScoreKind::Coarse); coarse != kinds.end()) {
      ScoreMatrix pruned = cfg.top_k ? prune_topk(coarse->second, *cfg.top_k) : coarse->second;
      auto fine = kinds.find(ScoreKind::Fine);
      scores = fine != kinds.end() ? combine(pruned, fine->second) : pruned;
    } else {
      throw ValidationError(scores_path + ": " + describe(doc) + " has fine scores but no coarse scores");
    }
    if (scores->n != doc.size()) {
      throw ValidationError(scores_path + ": " + describe(doc) + " has " + std::to_string(doc.size()) +
                            " words but its score matrix covers " + std::to_string(scores->n));
    }

    const ClusterPartition words = links_to_partition(scores->n, infer_links(*scores, cfg.dummy));
    std::set<MentionSpan> used;
    for (const auto& cluster : words) {
      Cluster out{static_cast<int>(doc.clusters.size()), {}};
      for (std::size_t w : cluster) {
        MentionSpan span{w, w + 1};
        if (!spans_path.empty()) {
          auto b = boundaries.find({doc.doc_id, doc.part, w});
          if (b == boundaries.end()) {
            throw ValidationError(spans_path + ": no boundary scores for head " + std::to_string(w) + " in " +
                                  describe(doc));
          }
          span = select_span(b->second);
        }
        // two heads expanding to one span: the earlier cluster keeps it
        if (used.insert(span).second) out.spans.push_back(span);
      }
      if (!out.spans.empty()) {
        std::sort(out.spans.begin(), out.spans.end());
        doc.clusters.push_back(std::move(out));
      }
    }
    return doc;
  });

  Output out(output, io.out);
  emit_conll(out.get(), predicted, cfg.columns);
  out.finish();
  return kOk;
}

inline int cmd_score(const std::string& key_path, const std::string& response_path, const std::string& format,
                     const PipelineConfig& cfg, Streams io) {
  const auto key = read_docs(key_path, "conll", cfg, io.in);
  const auto response = read_docs(response_path, "conll", cfg, io.in);
  std::map<std::pair<std::string, int>, const Document*> by_key;
  for (const auto& d : response) by_key[{d.doc_id, d.part}] = &d;

  CorpusScorer scorer;
  for (const auto& k : key) {
    auto it = by_key.find({k.doc_id, k.part});
    Partition<MentionSpan> resp = it == by_key.end() ? Partition<MentionSpan>{} : span_partition(*it->second);
    if (it == by_key.end()) io.err << "warning: response has no document " << describe(k) << '\n';
    scorer.add(span_partition(k), resp);
  }
  const CorefScore s = scorer.result();

  if (format == "json") {
    nlohmann::ordered_json obj;
    obj["muc"] = triple_json(s.muc);
    obj["b3"] = triple_json(s.b3);
    obj["ceaf_phi4"] = triple_json(s.ceaf_phi4);
    obj["avg_f1"] = round2(s.avg_f1 * 100.0);
    io.out << obj.dump() << '\n';
  } else {
    auto row = [&](const char* name, const ScoreTriple& t) {
      io.out << std::left << std::setw(10) << name << "  P " << std::right << std::setw(6) << percent(t.precision)
             << "  R " << std::setw(6) << percent(t.recall) << "  F1 " << std::setw(6) << percent(t.f1) << '\n';
    };
    row("MUC", s.muc);
    row("B3", s.b3);
    row("CEAF_phi4", s.ceaf_phi4);
    io.out << "Avg. F1     " << percent(s.avg_f1) << '\n';
  }
  return kOk;
}

inline int cmd_demo(bool color, const PipelineConfig& cfg, Streams io) {
  const auto examples = fixtures::demo_examples();
  const auto rows = run_demo(cfg.headword());
  std::size_t r = 0;
  for (const auto& ex : examples) {
    io.out << "== " << ex.name << '\n';
    for (int k = 0; k < 4; ++k, ++r) {
      const DemoRow& row = rows[r];
      io.out << std::left << std::setw(9) << to_string(row.rule) << std::setw(5) << row.step
             << std::setw(4) << (row.correct ? "Yes" : "No") << ' '
             << render_prediction(ex.doc, row.prediction, color) << '\n';
    }
  }
  return kOk;
}

}  // namespace detail

inline std::string version_string() {
  return std::string("cawcoref ") + kVersion + " (jsonlines schema " + std::to_string(kJsonlinesSchemaVersion) +
         ", score-matrix schema " + std::to_string(kScoreMatrixSchemaVersion) + ", boundary-score schema " +
         std::to_string(kBoundarySchemaVersion) + ")";
}

inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Word-level coreference toolkit: head-words, word-level data, clustering and scoring", "cawcoref"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", version_string());
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags win");

  PipelineConfig cfg;
  long long top_k = 0;
  app.add_option("--rule", cfg.headword_rule, "Head-word rule")
      ->check(CLI::IsMember({"baseline", "caw"}))
      ->capture_default_str();
  app.add_option("--cc-tags", cfg.cc_tags, "POS tags treated as coordinating conjunctions")->capture_default_str();
  app.add_option("--dummy", cfg.dummy, "Dummy antecedent score (link threshold)")->capture_default_str();
  app.add_option("--top-k", top_k, "Keep the k best coarse antecedents per word")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Documents processed in parallel")->check(CLI::PositiveNumber);
  app.add_option("--doc-col", cfg.columns.doc_col, "CoNLL document id column")->capture_default_str();
  app.add_option("--part-col", cfg.columns.part_col, "CoNLL part column")->capture_default_str();
  app.add_option("--word-num-col", cfg.columns.word_num_col, "CoNLL word number column")->capture_default_str();
  app.add_option("--word-col", cfg.columns.word_col, "CoNLL word column")->capture_default_str();
  app.add_option("--pos-col", cfg.columns.pos_col, "CoNLL POS column")->capture_default_str();
  app.add_option("--coref-col", cfg.columns.coref_col, "CoNLL coreference column (negative counts from the end)")
      ->capture_default_str();

  std::string input = "-", output = "-";
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("-i,--input", input, "Input file ('-' for stdin)");
    sub->add_option("-o,--output", output, "Output file ('-' for stdout)");
  };

  auto* ingest = app.add_subcommand("ingest", "Convert between CoNLL-2012 and jsonlines");
  std::string from = "conll", to = "jsonl";
  ingest->add_option("--from", from)->check(CLI::IsMember({"conll", "jsonl"}))->capture_default_str();
  ingest->add_option("--to", to)->check(CLI::IsMember({"conll", "jsonl"}))->capture_default_str();
  add_io(ingest);

  auto* headwords = app.add_subcommand("headwords", "Annotate every gold span with both head-word rules");
  add_io(headwords);

  auto* build = app.add_subcommand("build-wl", "Decompose span clusters into word-level clusters");
  add_io(build);

  auto* analyze = app.add_subcommand("analyze-conflicts", "Count conjoined spans and head-word collisions");
  std::string format = "text", json_out;
  analyze->add_option("-i,--input", input, "Input jsonlines file ('-' for stdin)");
  analyze->add_option("--format", format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  analyze->add_option("--json-out", json_out, "Also write the machine-readable record here");

  auto* cluster = app.add_subcommand("cluster", "Infer clusters from score matrices and write a CoNLL response");
  std::string docs_path, docs_format = "jsonl", scores_path, spans_path;
  cluster->add_option("--docs", docs_path, "Documents (tokens) to attach predictions to")->required();
  cluster->add_option("--docs-format", docs_format)->check(CLI::IsMember({"conll", "jsonl"}))->capture_default_str();
  cluster->add_option("--scores", scores_path, "Score-matrix jsonlines file")->required();
  cluster->add_option("--spans", spans_path, "Boundary-score jsonlines file; without it mentions are single words");
  cluster->add_option("-o,--output", output, "Output CoNLL file ('-' for stdout)");

  auto* score = app.add_subcommand("score", "MUC, B3, CEAF_phi4 and their average over CoNLL files");
  std::string key_path, response_path;
  score->add_option("--key", key_path)->required();
  score->add_option("--response", response_path)->required();
  score->add_option("--format", format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  auto* demo = app.add_subcommand("demo", "Run the bundled conjunction examples under both head-word rules");
  bool color = false;
  demo->add_flag("--color", color, "Colour predicted mentions with ANSI escapes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    io.out << version_string() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }
  if (top_k > 0) cfg.top_k = top_k;

  try {
    if (*ingest) return detail::cmd_ingest(from, to, input, output, cfg, io);
    if (*headwords) return detail::cmd_headwords(input, output, cfg, io);
    if (*build) return detail::cmd_build_wl(input, output, cfg, io);
    if (*analyze) return detail::cmd_analyze(input, format, json_out, cfg, io);
    if (*cluster) return detail::cmd_cluster(docs_path, docs_format, scores_path, spans_path, output, cfg, io);
    if (*score) return detail::cmd_score(key_path, response_path, format, cfg, io);
    if (*demo) return detail::cmd_demo(color, cfg, io);
  } catch (const IoError& e) {
    io.err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    io.err << "parse error: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    io.err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const StructuralError& e) {
    io.err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const ArgumentError& e) {
    io.err << "argument error: " << e.what() << '\n';
    return kUsage;
  } catch (const LookupError& e) {
    io.err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace cawcoref::cli
