#pragma once

#include <cstdint>
#include <vector>

#include "tipcover/indexing.hpp"
#include "tipcover/similarity.hpp"

namespace tipcover {

// Pairwise match tables between tips and reviews at one threshold, no
// preferences (tip-side coverage is not personalized).
struct MatchTables {
  // covers[tip][review]: some sentence of the tip matches the review.
  std::vector<std::vector<std::uint8_t>> covers;
  // relevant[tip][sentence]: that tip sentence matches at least one review.
  std::vector<std::vector<std::uint8_t>> relevant;
};

// OpenMP kernel. Results are identical for any thread count: every cell is
// an independent pure function of the index.
MatchTables compute_match_tables(const Index& index, double threshold,
                                 const MergeWeights& weights);

// Plain nested-loop reference used by the tests and the benchmark.
MatchTables compute_match_tables_serial(const Index& index, double threshold,
                                        const MergeWeights& weights);

// Scores of one review against a fixed tip subset.
struct ReviewScore {
  // Best pref-boosted score of the review against each selected tip, plus
  // the plain (boost-free) match flag that mirrors the coverage matrix.
  std::vector<SimilarityScores> per_tip;
  std::vector<std::uint8_t> tip_matched;      // pref-boosted match
  std::vector<std::uint8_t> tip_matched_raw;  // boost-free match
  std::vector<std::uint8_t> sentence_relevant;  // boost-free, per review sentence
  int match_count = 0;  // number of set bits in tip_matched
};

std::vector<ReviewScore> score_reviews(const Index& index,
                                       const std::vector<std::size_t>& tips,
                                       const PrefVector& prefs, double threshold,
                                       const MergeWeights& weights);

std::vector<ReviewScore> score_reviews_serial(const Index& index,
                                              const std::vector<std::size_t>& tips,
                                              const PrefVector& prefs,
                                              double threshold,
                                              const MergeWeights& weights);

}  // namespace tipcover
