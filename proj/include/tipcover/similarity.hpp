#pragma once

#include <string>
#include <vector>

#include "tipcover/corpus.hpp"
#include "tipcover/indexing.hpp"

namespace tipcover {

struct MergeWeights {
  double w_syn = 1.0;
  double w_sem = 1.0;
  double w_sent = 1.0;
};

struct SimilarityScores {
  double syntactic = 0.0;  // [0,1]
  double semantic = 0.0;   // [0,1]
  double sentiment = 0.0;  // [-1,1]
  double merged = 0.0;     // [0,1]
  bool matched = false;
};

// Cosine over sparse TF-IDF vectors; 0 when either side has zero norm.
double cosine(const TfIdfVector& a, const TfIdfVector& b);

double syntactic_sim(const SentenceStats& a, const SentenceStats& b);

// Jensen-Shannon divergence with base-2 logs, in [0,1]. Throws on length
// mismatch. Tolerates zero entries (0 log 0 = 0), so unsmoothed test vectors
// work too.
double jsd(const TermDistribution& p, const TermDistribution& q);

// Same value computed from sparse counts: terms outside both supports share
// one closed-form background contribution.
double jsd_from_counts(const std::vector<std::pair<TermId, std::uint32_t>>& a,
                       std::uint32_t len_a,
                       const std::vector<std::pair<TermId, std::uint32_t>>& b,
                       std::uint32_t len_b, std::size_t vocab_size, double eps);

// 1 - JSD of the two smoothed sentence distributions.
double semantic_sim(const SentenceStats& a, const SentenceStats& b,
                    std::size_t vocab_size, double eps);

// Product of the two lexicon polarities.
double sentiment_sim(const SentenceStats& a, const SentenceStats& b);

// User preferences resolved against a corpus vocabulary. Terms missing from
// the vocabulary still count toward the total weight (they are preferences
// the sentence does not satisfy).
struct PrefVector {
  std::vector<std::pair<TermId, double>> resolved;  // sorted by term id
  double total_weight = 0.0;
  bool empty() const { return total_weight == 0.0; }
};

PrefVector resolve_preferences(const UserPreferences& prefs, const Vocabulary& vocab);

// Weighted fraction of preference terms present in the sentence.
double preference_overlap(const PrefVector& prefs, const SentenceStats& sentence);

// 1 for empty preferences, else 0.5 + 0.5 * overlap.
double preference_boost(const PrefVector& prefs, const SentenceStats& sentence);

// merged = weighted mean of (syn, sem, (sent+1)/2) scaled by the preference
// boost; matched = merged >= threshold.
SimilarityScores merge_and_match(double syn, double sem, double sent,
                                 double pref_boost, double threshold,
                                 const MergeWeights& weights = {});

// Full score of one review sentence against one tip sentence.
SimilarityScores score_pair(const SentenceStats& s, const SentenceStats& u,
                            std::size_t vocab_size, double eps, double pref_boost,
                            double threshold, const MergeWeights& weights = {});

// Review sentence vs whole tip: single-sentence tips compare directly;
// multi-sentence tips take the sentence with the best merged score.
SimilarityScores score_vs_tip(const SentenceStats& s, const DocumentStats& tip,
                              std::size_t vocab_size, double eps, double pref_boost,
                              double threshold, const MergeWeights& weights = {});

// Histogram intersection of whole-document term counts (diagnostic only).
double f_score(const Index& index, std::size_t review_idx, std::size_t tip_idx);
double f_score_counts(const std::vector<std::pair<TermId, std::uint32_t>>& a,
                      const std::vector<std::pair<TermId, std::uint32_t>>& b);

struct RankedCandidate {
  std::string id;
  double merged = 0.0;
  double syntactic = 0.0;
  double semantic = 0.0;
  double sentiment = 0.0;
};

// Total deterministic order: merged desc, then syntactic, semantic,
// sentiment desc, finally id asc.
std::vector<RankedCandidate> rank_candidates(std::vector<RankedCandidate> candidates);

}  // namespace tipcover
