#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tipcover/config.hpp"
#include "tipcover/coverage.hpp"
#include "tipcover/indexing.hpp"

namespace tipcover {

// Per-review outcome of the personalized selection pass.
struct ReviewMatch {
  std::string review_id;
  std::size_t review_index = 0;
  int match_count = 0;      // selected tips covered, preferences applied
  double coverage = 0.0;    // fraction of selected tips covered (no preferences)
  double efficiency = 0.0;  // fraction of sentences matching >= 1 selected tip
  double merged = 0.0;      // personalized score: mean best merged over tips
  double syntactic = 0.0;
  double semantic = 0.0;
  double sentiment = 0.0;
  std::vector<double> merged_per_tip;
  bool selected = false;
};

struct ReviewSelection {
  std::vector<ReviewMatch> selected;  // ranked
  std::vector<ReviewMatch> all;       // corpus order, selected flag set
  std::size_t rejected_count = 0;
};

// Personalized review selection: a review is kept when it covers at least
// config.match_count of the selected tips under the preference-boosted merged
// similarity; kept reviews are ranked. Throws when `tips` is empty.
ReviewSelection select_reviews(const Index& index, const TipSelection& tips,
                     const UserPreferences& prefs, const SelectionConfig& config);

// Same contract on the serial reference kernel.
ReviewSelection select_reviews_serial(const Index& index, const TipSelection& tips,
                            const UserPreferences& prefs,
                            const SelectionConfig& config);

// Fraction of the selected tips that cover this review, read off the
// coverage matrix. Throws when the selection is empty.
double review_coverage(const CoverageMatrix& m, const TipSelection& tips,
                       std::size_t review_idx);

// Fraction of the review's sentences that match at least one selected tip
// (no preferences). Throws for a review with no sentences.
double review_efficiency(const Index& index, const TipSelection& tips,
                         std::size_t review_idx, const SelectionConfig& config);

}  // namespace tipcover
