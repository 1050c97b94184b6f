#include "tipcover/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "tipcover/errors.hpp"
#include "tipcover/kernels.hpp"

namespace tipcover {

double per_eff_min(const ScoredSet& s) {
  if (s.scores.empty()) throw ValidationError("per_eff_min of an empty set");
  return *std::min_element(s.scores.begin(), s.scores.end());
}

double per_gain(const ScoredSet& s) {
  if (s.scores.empty()) throw ValidationError("per_gain of an empty set");
  double sum = 0.0;
  for (double x : s.scores) sum += x;
  return sum / static_cast<double>(s.scores.size());
}

double per_cost(const ScoredSet& s) { return 1.0 - per_eff_min(s); }

MaxPerCoverageChoice max_per_coverage_select(const std::vector<ScoredSet>& candidates,
                                             double alpha) {
  if (candidates.empty()) {
    throw ValidationError("max_per_coverage_select needs at least one candidate set");
  }
  MaxPerCoverageChoice choice;
  choice.table.reserve(candidates.size());

  bool have_best = false;
  double best_ratio = 0.0, best_gain = 0.0;
  std::size_t best_size = 0, best_index = 0;

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const ScoredSet& s = candidates[i];
    SetEvaluation eval;
    eval.id = s.id;
    eval.size = s.size();
    eval.eff_min = per_eff_min(s);
    eval.gain = per_gain(s);
    eval.cost = per_cost(s);
    eval.feasible = eval.eff_min >= alpha;
    choice.table.push_back(eval);
    if (!eval.feasible) continue;

    const double ratio = eval.cost == 0.0 ? std::numeric_limits<double>::infinity()
                                          : eval.gain / eval.cost;
    bool wins = false;
    if (!have_best) {
      wins = true;
    } else if (ratio != best_ratio) {
      wins = ratio > best_ratio;
    } else if (eval.gain != best_gain) {
      wins = eval.gain > best_gain;
    } else if (eval.size != best_size) {
      wins = eval.size < best_size;
    } else {
      wins = s.id < candidates[best_index].id;
    }
    if (wins) {
      have_best = true;
      best_ratio = ratio;
      best_gain = eval.gain;
      best_size = eval.size;
      best_index = i;
    }
  }
  if (!have_best) {
    std::ostringstream msg;
    msg << "no candidate set satisfies the efficiency constraint alpha=" << alpha;
    throw InfeasibleError(msg.str());
  }
  choice.chosen_index = best_index;
  choice.chosen_id = candidates[best_index].id;
  return choice;
}

std::vector<ScoredSet> prefix_candidate_sets(const ReviewSelection& selection) {
  std::vector<ScoredSet> sets;
  ScoredSet prefix;
  for (std::size_t n = 0; n < selection.selected.size(); ++n) {
    prefix.review_ids.push_back(selection.selected[n].review_id);
    prefix.scores.push_back(selection.selected[n].merged);
    prefix.id = "S" + std::to_string(n + 1);
    sets.push_back(prefix);
  }
  return sets;
}

BruteForceResult brute_force_max_coverage(const CoverageMatrix& m, int k) {
  if (k < 1) throw ValidationError("subset budget must be at least 1");
  if (m.tip_count() > 20) {
    throw ValidationError("brute-force coverage oracle is desk-scale only (> 20 tips)");
  }
  const std::size_t n = m.tip_count();
  const std::uint32_t limit = static_cast<std::uint32_t>(1u << n);

  BruteForceResult best;  // empty subset covers nothing
  std::vector<std::string> best_ids;
  bool have = false;

  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) > k) continue;
    std::vector<std::uint8_t> covered(m.review_count(), 0);
    std::vector<std::size_t> tips;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        tips.push_back(i);
        for (std::size_t j = 0; j < m.review_count(); ++j) covered[j] |= m.covers[i][j];
      }
    }
    std::size_t count = 0;
    for (std::uint8_t c : covered) count += c;
    const double coverage =
        m.review_count() == 0 ? 0.0 : static_cast<double>(count) / m.review_count();

    std::vector<std::string> ids;
    for (std::size_t i : tips) ids.push_back(m.tip_ids[i]);
    std::sort(ids.begin(), ids.end());
    if (!have || coverage > best.coverage ||
        (coverage == best.coverage && ids < best_ids)) {
      have = true;
      best.coverage = coverage;
      best.tip_indices = tips;
      best_ids = ids;
    }
  }
  best.tip_ids = best_ids;
  return best;
}

bool approximation_check(double greedy_cov, double opt_cov) {
  static const double kRatio = 1.0 - 1.0 / std::exp(1.0);
  return greedy_cov >= kRatio * opt_cov;
}

std::vector<SweepRow> threshold_sweep(const Index& index, const TipSelection& tips,
                                      const UserPreferences& prefs,
                                      const SelectionConfig& config,
                                      const std::vector<double>& thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 0.0 || thresholds[i] > 1.0) {
      throw ValidationError("sweep thresholds must lie in [0,1]");
    }
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw ValidationError("sweep thresholds must be sorted ascending");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  const std::size_t n_reviews = index.corpus().reviews.size();
  for (double threshold : thresholds) {
    SelectionConfig at = config;
    at.match_threshold = threshold;
    ReviewSelection sel = select_reviews(index, tips, prefs, at);
    SweepRow row;
    row.threshold = threshold;
    row.selected_count = sel.selected.size();
    row.accuracy =
        n_reviews == 0 ? 0.0 : static_cast<double>(row.selected_count) / n_reviews;
    rows.push_back(row);
  }
  return rows;
}

std::string render_score_table(const std::vector<ReviewScoreRow>& rows,
                               double threshold) {
  std::ostringstream out;
  out << "ID\tReview Selection\tThreshold\tMaxPerCoverage\n";
  double sum = 0.0;
  bool first = true;
  for (const ReviewScoreRow& row : rows) {
    out << row.id << '\t' << (row.selected ? "Selected" : "Not selected") << '\t';
    if (first) {
      out << static_cast<int>(threshold * 100.0 + 0.5) << '%';
      first = false;
    }
    out << '\t';
    std::ostringstream score;
    score.precision(3);
    score << row.score;
    out << score.str() << '\n';
    sum += row.score;
  }
  const double avg = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
  std::ostringstream pct;
  pct.precision(4);
  pct << avg * 100.0;
  out << "Average MaxperCoverage Score\t" << pct.str() << "%\n";
  return out.str();
}

}  // namespace tipcover
