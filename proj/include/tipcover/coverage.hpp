#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tipcover/config.hpp"
#include "tipcover/indexing.hpp"
#include "tipcover/similarity.hpp"

namespace tipcover {

// Boolean tip-covers-review matrix plus the per-tip sentence bookkeeping the
// efficiency measures need. Immutable once built; also constructible directly
// from explicit rows for tests and synthetic instances.
struct CoverageMatrix {
  std::vector<std::string> tip_ids;
  std::vector<std::string> review_ids;
  std::vector<std::vector<std::uint8_t>> covers;  // [tip][review]
  std::vector<std::uint32_t> tip_sentence_counts;
  std::vector<std::uint32_t> tip_relevant_counts;
  double threshold = 0.0;

  std::size_t tip_count() const { return tip_ids.size(); }
  std::size_t review_count() const { return review_ids.size(); }
};

// Matrix at config.match_threshold. Preferences play no role here.
CoverageMatrix build_coverage_matrix(const Index& index, const SelectionConfig& config);
// Reference path built on the serial kernel; same output.
CoverageMatrix build_coverage_matrix_serial(const Index& index,
                                            const SelectionConfig& config);

// Fraction of all reviews covered by one tip.
double cov(const CoverageMatrix& m, std::size_t tip);

// Fraction of all reviews covered by the union of a tip set; 0 for an empty
// set.
double cov_set(const CoverageMatrix& m, const std::vector<std::size_t>& tips);

// Fraction of the tip's sentences that match at least one review. Throws for
// a tip with no sentences.
double eff(const CoverageMatrix& m, std::size_t tip);

// Mean efficiency over a nonempty tip set; throws on an empty one.
double eff_avg(const CoverageMatrix& m, const std::vector<std::size_t>& tips);

struct TipSelectionStep {
  std::string chosen_id;
  double gain = 0.0;
  double cost = 0.0;
  double cov_after = 0.0;
  double eff_avg_after = 0.0;
};

struct TipSelection {
  std::vector<std::size_t> tip_indices;  // selection order
  std::vector<std::string> tip_ids;
  std::vector<TipSelectionStep> trace;

  bool empty() const { return tip_indices.empty(); }
  std::size_t size() const { return tip_indices.size(); }
};

// Greedy subset selection: each step keeps only candidates whose addition
// holds the running average efficiency at or above alpha, then takes the
// best gain/cost ratio. Cost is beta*(1-eff)+(1-beta); a zero-cost candidate
// outranks every finite ratio. Ties break like rank_candidates (ratio, gain,
// efficiency, id). Stops at the budget, when no candidate is eligible, or
// when the best gain is zero.
TipSelection select_micro_reviews(const CoverageMatrix& m, int budget, double alpha,
                                  double beta);

}  // namespace tipcover
