// Test-side reference implementations, written independently of the library
// code paths they check: a naive greedy simulator, a recursive exhaustive
// coverage search, and a plain triple-loop match recount.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tipcover/coverage.hpp"
#include "tipcover/indexing.hpp"
#include "tipcover/selection.hpp"
#include "tipcover/similarity.hpp"

namespace oracles {

inline std::uint32_t draw(std::mt19937& rng, std::uint32_t n) {
  return n == 0 ? 0 : rng() % n;
}

// Explicit matrix for synthetic instances. rows[i][j] = tip i covers review j.
inline tipcover::CoverageMatrix make_matrix(
    const std::vector<std::vector<int>>& rows,
    std::vector<std::uint32_t> sentence_counts = {},
    std::vector<std::uint32_t> relevant_counts = {}) {
  tipcover::CoverageMatrix m;
  const std::size_t n_tips = rows.size();
  const std::size_t n_reviews = n_tips == 0 ? 0 : rows[0].size();
  for (std::size_t i = 0; i < n_tips; ++i) {
    m.tip_ids.push_back("t" + std::string(i < 9 ? "0" : "") + std::to_string(i + 1));
  }
  for (std::size_t j = 0; j < n_reviews; ++j) {
    m.review_ids.push_back("r" + std::string(j < 9 ? "0" : "") + std::to_string(j + 1));
  }
  for (const auto& row : rows) {
    m.covers.emplace_back(row.begin(), row.end());
  }
  if (sentence_counts.empty()) sentence_counts.assign(n_tips, 1);
  if (relevant_counts.empty()) {
    for (std::size_t i = 0; i < n_tips; ++i) {
      bool any = std::any_of(rows[i].begin(), rows[i].end(), [](int b) { return b != 0; });
      relevant_counts.push_back(any ? sentence_counts[i] : 0);
    }
  }
  m.tip_sentence_counts = std::move(sentence_counts);
  m.tip_relevant_counts = std::move(relevant_counts);
  return m;
}

// Random instance with covers density around `density` tenths and sentence
// counts 1..4.
inline tipcover::CoverageMatrix random_matrix(std::mt19937& rng, std::size_t n_tips,
                                             std::size_t n_reviews,
                                             std::uint32_t density_tenths = 4) {
  std::vector<std::vector<int>> rows(n_tips, std::vector<int>(n_reviews, 0));
  for (auto& row : rows) {
    for (auto& cell : row) cell = draw(rng, 10) < density_tenths ? 1 : 0;
  }
  std::vector<std::uint32_t> sentences, relevant;
  for (std::size_t i = 0; i < n_tips; ++i) {
    std::uint32_t s = 1 + draw(rng, 4);
    bool any = std::any_of(rows[i].begin(), rows[i].end(), [](int b) { return b != 0; });
    std::uint32_t r = any ? 1 + draw(rng, s) : 0;
    sentences.push_back(s);
    relevant.push_back(r);
  }
  return make_matrix(rows, sentences, relevant);
}

// Naive greedy simulation of the tip-selection rule, kept deliberately
// simple: recompute everything from scratch each step.
inline std::vector<std::size_t> greedy_reference(const tipcover::CoverageMatrix& m,
                                                 int budget, double alpha, double beta) {
  std::vector<std::size_t> chosen;
  std::set<std::size_t> used;
  while (static_cast<int>(chosen.size()) < budget) {
    std::set<std::size_t> covered;
    for (std::size_t c : chosen) {
      for (std::size_t j = 0; j < m.review_count(); ++j) {
        if (m.covers[c][j]) covered.insert(j);
      }
    }
    double eff_sum = 0.0;
    for (std::size_t c : chosen) {
      eff_sum += static_cast<double>(m.tip_relevant_counts[c]) / m.tip_sentence_counts[c];
    }

    struct Candidate {
      std::size_t tip;
      double ratio, gain, eff;
      std::string id;
    };
    std::vector<Candidate> eligible;
    for (std::size_t i = 0; i < m.tip_count(); ++i) {
      if (used.count(i) || m.tip_sentence_counts[i] == 0) continue;
      double tip_eff =
          static_cast<double>(m.tip_relevant_counts[i]) / m.tip_sentence_counts[i];
      if ((eff_sum + tip_eff) / (chosen.size() + 1.0) < alpha) continue;
      std::size_t newly = 0;
      for (std::size_t j = 0; j < m.review_count(); ++j) {
        if (m.covers[i][j] && !covered.count(j)) ++newly;
      }
      double gain = m.review_count() == 0
                        ? 0.0
                        : static_cast<double>(newly) / m.review_count();
      double cost = beta * (1.0 - tip_eff) + (1.0 - beta);
      double ratio = cost == 0.0 ? std::numeric_limits<double>::infinity() : gain / cost;
      eligible.push_back({i, ratio, gain, tip_eff, m.tip_ids[i]});
    }
    if (eligible.empty()) break;
    double max_gain = 0.0;
    for (const auto& c : eligible) max_gain = std::max(max_gain, c.gain);
    if (max_gain == 0.0) break;
    std::sort(eligible.begin(), eligible.end(), [](const Candidate& a, const Candidate& b) {
      if (a.ratio != b.ratio) return a.ratio > b.ratio;
      if (a.gain != b.gain) return a.gain > b.gain;
      if (a.eff != b.eff) return a.eff > b.eff;
      return a.id < b.id;
    });
    chosen.push_back(eligible.front().tip);
    used.insert(eligible.front().tip);
  }
  return chosen;
}

// Exhaustive best coverage by recursive combination enumeration; second,
// structurally different implementation next to the library's mask loop.
inline void enumerate_subsets(const tipcover::CoverageMatrix& m, std::size_t from,
                              int remaining, std::vector<std::size_t>& current,
                              std::size_t& best_count,
                              std::vector<std::string>& best_ids, bool& have) {
  std::set<std::size_t> covered;
  for (std::size_t tip : current) {
    for (std::size_t j = 0; j < m.review_count(); ++j) {
      if (m.covers[tip][j]) covered.insert(j);
    }
  }
  std::vector<std::string> ids;
  for (std::size_t tip : current) ids.push_back(m.tip_ids[tip]);
  std::sort(ids.begin(), ids.end());
  if (!current.empty() &&
      (!have || covered.size() > best_count ||
       (covered.size() == best_count && ids < best_ids))) {
    have = true;
    best_count = covered.size();
    best_ids = ids;
  }
  if (remaining == 0) return;
  for (std::size_t i = from; i < m.tip_count(); ++i) {
    current.push_back(i);
    enumerate_subsets(m, i + 1, remaining - 1, current, best_count, best_ids, have);
    current.pop_back();
  }
}

inline std::pair<double, std::vector<std::string>> exhaustive_best_coverage(
    const tipcover::CoverageMatrix& m, int k) {
  std::size_t best_count = 0;
  std::vector<std::string> best_ids;
  bool have = false;
  std::vector<std::size_t> current;
  enumerate_subsets(m, 0, k, current, best_count, best_ids, have);
  const double coverage = m.review_count() == 0
                              ? 0.0
                              : static_cast<double>(best_count) / m.review_count();
  return {coverage, best_ids};
}

// Plain recount of how many selected tips each review covers, using the
// similarity primitives directly (no kernel involvement).
inline std::map<std::string, int> recount_matches(const tipcover::Index& index,
                                                  const std::vector<std::size_t>& tips,
                                                  const tipcover::UserPreferences& prefs,
                                                  double threshold) {
  using namespace tipcover;
  const Corpus& corpus = index.corpus();
  PrefVector pref_vec = resolve_preferences(prefs, corpus.vocabulary);
  std::map<std::string, int> counts;
  for (std::size_t j = 0; j < corpus.reviews.size(); ++j) {
    int count = 0;
    for (std::size_t tip : tips) {
      bool matched = false;
      for (const SentenceStats& s : index.review_stats(j).sentences) {
        for (const SentenceStats& u : index.tip_stats(tip).sentences) {
          double syn = syntactic_sim(s, u);
          double sem = semantic_sim(s, u, index.vocab_size(), index.epsilon());
          double sent = sentiment_sim(s, u);
          double boost = preference_boost(pref_vec, s);
          SimilarityScores scores = merge_and_match(syn, sem, sent, boost, threshold);
          if (scores.matched) matched = true;
        }
      }
      if (matched) ++count;
    }
    counts[corpus.reviews[j].id] = count;
  }
  return counts;
}

}  // namespace oracles
