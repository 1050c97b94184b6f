#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tipcover/config.hpp"
#include "tipcover/coverage.hpp"
#include "tipcover/selection.hpp"

namespace tipcover {

// A candidate review set with one personalized score per member.
struct ScoredSet {
  std::string id;
  std::vector<std::string> review_ids;
  std::vector<double> scores;  // X_i in [0,1]

  std::size_t size() const { return review_ids.size(); }
};

// Minimum member score. Throws on an empty set.
double per_eff_min(const ScoredSet& s);
// Mean member score. Throws on an empty set.
double per_gain(const ScoredSet& s);
// 1 - per_eff_min. Throws on an empty set.
double per_cost(const ScoredSet& s);

struct SetEvaluation {
  std::string id;
  std::size_t size = 0;
  double gain = 0.0;
  double cost = 0.0;
  double eff_min = 0.0;
  bool feasible = false;
};

struct MaxPerCoverageChoice {
  std::size_t chosen_index = 0;
  std::string chosen_id;
  std::vector<SetEvaluation> table;
};

// Among sets with per_eff_min >= alpha, picks the best gain/cost ratio
// (zero cost outranks every finite ratio; ties prefer larger gain, then
// smaller size, then lexicographic id). Throws InfeasibleError naming alpha
// when no candidate qualifies.
MaxPerCoverageChoice max_per_coverage_select(const std::vector<ScoredSet>& candidates,
                                             double alpha);

// Candidate sets for the evaluation: prefixes of the ranked selection,
// sizes 1..n, scored by each review's personalized merged score.
std::vector<ScoredSet> prefix_candidate_sets(const ReviewSelection& selection);

struct BruteForceResult {
  std::vector<std::size_t> tip_indices;
  std::vector<std::string> tip_ids;  // sorted lexicographically
  double coverage = 0.0;
};

// Exhaustive optimum over all tip subsets of size <= k. Guarded to at most
// 20 tips; ties pick the lexicographically smallest id sequence.
BruteForceResult brute_force_max_coverage(const CoverageMatrix& m, int k);

// Greedy-vs-optimal guarantee: greedy >= (1 - 1/e) * opt.
bool approximation_check(double greedy_cov, double opt_cov);

struct SweepRow {
  double threshold = 0.0;
  std::size_t selected_count = 0;
  double accuracy = 0.0;  // selected / total reviews
};

// Reruns the personalized selection at each threshold against one fixed tip
// subset. Thresholds must be ascending and within [0,1].
std::vector<SweepRow> threshold_sweep(const Index& index, const TipSelection& tips,
                                      const UserPreferences& prefs,
                                      const SelectionConfig& config,
                                      const std::vector<double>& thresholds);

struct ReviewScoreRow {
  std::string id;
  bool selected = false;
  double score = 0.0;
};

struct EvaluationReport {
  std::vector<ReviewScoreRow> rows;      // every review, corpus order
  std::vector<SetEvaluation> set_table;  // per candidate set
  std::string chosen_set_id;
  std::vector<std::string> chosen_review_ids;
  double accuracy = 0.0;
  std::vector<SweepRow> sweep;
};

// Plain-text score table: one row per review plus the trailing average line.
std::string render_score_table(const std::vector<ReviewScoreRow>& rows,
                               double threshold);

}  // namespace tipcover
