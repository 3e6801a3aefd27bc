#pragma once

// CoNLL coreference metrics: MUC, B-cubed, CEAF-phi4 and their average F1.
//
// Every metric is kept as precision/recall numerators and denominators;
// documents accumulate before the final division (corpus-level
// aggregation). Mentions are compared by exact identity; a mention missing
// from the other side earns no credit.

#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cawcoref/assignment.hpp"
#include "cawcoref/document.hpp"

namespace cawcoref {

struct ScoreTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline double f1_score(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

struct MetricCounts {
  double recall_num = 0.0;
  double recall_den = 0.0;
  double precision_num = 0.0;
  double precision_den = 0.0;

  MetricCounts& operator+=(const MetricCounts& o) {
    recall_num += o.recall_num;
    recall_den += o.recall_den;
    precision_num += o.precision_num;
    precision_den += o.precision_den;
    return *this;
  }

  ScoreTriple triple() const {
    ScoreTriple t;
    t.recall = recall_den == 0.0 ? 0.0 : recall_num / recall_den;
    t.precision = precision_den == 0.0 ? 0.0 : precision_num / precision_den;
    t.f1 = f1_score(t.precision, t.recall);
    return t;
  }
};

struct CorefScore {
  ScoreTriple muc;
  ScoreTriple b3;
  ScoreTriple ceaf_phi4;
  double avg_f1 = 0.0;
};

template <typename Mention>
using Partition = std::vector<std::vector<Mention>>;

namespace metrics_detail {

template <typename Mention>
std::map<Mention, std::size_t> cluster_index(const Partition<Mention>& p) {
  std::map<Mention, std::size_t> idx;
  for (std::size_t c = 0; c < p.size(); ++c) {
    for (const auto& m : p[c]) idx.emplace(m, c);
  }
  return idx;
}

// Sum over gold clusters of (|K| - pieces(K)) and (|K| - 1).
template <typename Mention>
std::pair<double, double> muc_side(const Partition<Mention>& gold, const Partition<Mention>& other) {
  const auto where = cluster_index(other);
  double num = 0.0, den = 0.0;
  for (const auto& k : gold) {
    if (k.empty()) continue;
    std::set<std::size_t> blocks;
    std::size_t unaligned = 0;
    for (const auto& m : k) {
      auto it = where.find(m);
      if (it == where.end()) {
        ++unaligned;
      } else {
        blocks.insert(it->second);
      }
    }
    const double pieces = static_cast<double>(blocks.size() + unaligned);
    num += static_cast<double>(k.size()) - pieces;
    den += static_cast<double>(k.size()) - 1.0;
  }
  return {num, den};
}

template <typename Mention>
std::pair<double, double> b3_side(const Partition<Mention>& gold, const Partition<Mention>& other) {
  const auto where = cluster_index(other);
  double num = 0.0, den = 0.0;
  for (const auto& k : gold) {
    if (k.empty()) continue;
    std::map<std::size_t, std::size_t> overlap;
    for (const auto& m : k) {
      auto it = where.find(m);
      if (it != where.end()) ++overlap[it->second];
    }
    double sq = 0.0;
    for (const auto& [c, count] : overlap) sq += static_cast<double>(count * count);
    num += sq / static_cast<double>(k.size());
    den += static_cast<double>(k.size());
  }
  return {num, den};
}

}  // namespace metrics_detail

template <typename Mention>
MetricCounts muc_counts(const Partition<Mention>& key, const Partition<Mention>& response) {
  auto [rn, rd] = metrics_detail::muc_side(key, response);
  auto [pn, pd] = metrics_detail::muc_side(response, key);
  return {rn, rd, pn, pd};
}

template <typename Mention>
MetricCounts b_cubed_counts(const Partition<Mention>& key, const Partition<Mention>& response) {
  auto [rn, rd] = metrics_detail::b3_side(key, response);
  auto [pn, pd] = metrics_detail::b3_side(response, key);
  return {rn, rd, pn, pd};
}

template <typename Mention>
double phi4(const std::vector<Mention>& a, const std::vector<Mention>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::set<Mention> sa(a.begin(), a.end());
  std::size_t common = 0;
  for (const auto& m : b) common += sa.count(m);
  return 2.0 * static_cast<double>(common) / static_cast<double>(a.size() + b.size());
}

template <typename Mention>
MetricCounts ceaf_phi4_counts(const Partition<Mention>& key, const Partition<Mention>& response) {
  std::vector<std::vector<double>> sim(key.size(), std::vector<double>(response.size(), 0.0));
  for (std::size_t i = 0; i < key.size(); ++i) {
    for (std::size_t j = 0; j < response.size(); ++j) sim[i][j] = phi4(key[i], response[j]);
  }
  const double best = max_weight_assignment(sim).value;
  return {best, static_cast<double>(key.size()), best, static_cast<double>(response.size())};
}

template <typename Mention>
ScoreTriple muc(const Partition<Mention>& key, const Partition<Mention>& response) {
  return muc_counts(key, response).triple();
}

template <typename Mention>
ScoreTriple b_cubed(const Partition<Mention>& key, const Partition<Mention>& response) {
  return b_cubed_counts(key, response).triple();
}

template <typename Mention>
ScoreTriple ceaf_phi4(const Partition<Mention>& key, const Partition<Mention>& response) {
  return ceaf_phi4_counts(key, response).triple();
}

inline CorefScore assemble(const ScoreTriple& muc_t, const ScoreTriple& b3_t, const ScoreTriple& ceaf_t) {
  return {muc_t, b3_t, ceaf_t, (muc_t.f1 + b3_t.f1 + ceaf_t.f1) / 3.0};
}

template <typename Mention>
CorefScore conll_average(const Partition<Mention>& key, const Partition<Mention>& response) {
  return assemble(muc(key, response), b_cubed(key, response), ceaf_phi4(key, response));
}

// Accumulates counts over documents; the ratios are taken once at the end.
class CorpusScorer {
 public:
  template <typename Mention>
  void add(const Partition<Mention>& key, const Partition<Mention>& response) {
    muc_ += muc_counts(key, response);
    b3_ += b_cubed_counts(key, response);
    ceaf_ += ceaf_phi4_counts(key, response);
  }

  CorefScore result() const { return assemble(muc_.triple(), b3_.triple(), ceaf_.triple()); }

 private:
  MetricCounts muc_, b3_, ceaf_;
};

inline Partition<MentionSpan> span_partition(const Document& doc) {
  Partition<MentionSpan> out;
  for (const auto& c : doc.clusters) out.push_back(c.spans);
  return out;
}

inline std::string percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value * 100.0);
  return buf;
}

}  // namespace cawcoref
