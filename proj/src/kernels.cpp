#include "tipcover/kernels.hpp"

#include <algorithm>

namespace tipcover {

namespace {

// Does any sentence of the review reach the threshold against this tip
// sentence? Pure per-pair predicate shared by both kernel variants.
bool sentence_matches_review(const SentenceStats& tip_sentence,
                             const DocumentStats& review, std::size_t vocab,
                             double eps, double threshold,
                             const MergeWeights& weights) {
  for (const SentenceStats& s : review.sentences) {
    if (score_pair(s, tip_sentence, vocab, eps, 1.0, threshold, weights).matched)
      return true;
  }
  return false;
}

MatchTables allocate_tables(const Index& index) {
  MatchTables t;
  const std::size_t n_tips = index.corpus().micro_reviews.size();
  const std::size_t n_reviews = index.corpus().reviews.size();
  t.covers.assign(n_tips, std::vector<std::uint8_t>(n_reviews, 0));
  t.relevant.resize(n_tips);
  for (std::size_t i = 0; i < n_tips; ++i) {
    t.relevant[i].assign(index.tip_stats(i).sentences.size(), 0);
  }
  return t;
}

// Fills the rows for one tip. Both kernel variants run exactly this, so the
// parallel path is bit-identical to the serial one for any thread count.
void fill_tip_rows(const Index& index, std::size_t tip_idx, double threshold,
                   const MergeWeights& weights, MatchTables& tables) {
  const DocumentStats& tip = index.tip_stats(tip_idx);
  const std::size_t vocab = index.vocab_size();
  const double eps = index.epsilon();
  for (std::size_t u = 0; u < tip.sentences.size(); ++u) {
    for (std::size_t j = 0; j < index.corpus().reviews.size(); ++j) {
      if (sentence_matches_review(tip.sentences[u], index.review_stats(j), vocab,
                                  eps, threshold, weights)) {
        tables.covers[tip_idx][j] = 1;
        tables.relevant[tip_idx][u] = 1;
      }
    }
  }
}

}  // namespace

MatchTables compute_match_tables(const Index& index, double threshold,
                                 const MergeWeights& weights) {
  MatchTables tables = allocate_tables(index);
  const std::ptrdiff_t n_tips = static_cast<std::ptrdiff_t>(tables.covers.size());
  // Each iteration owns the rows of one tip, so there are no write conflicts.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < n_tips; ++i) {
    fill_tip_rows(index, static_cast<std::size_t>(i), threshold, weights, tables);
  }
  return tables;
}

MatchTables compute_match_tables_serial(const Index& index, double threshold,
                                        const MergeWeights& weights) {
  MatchTables tables = allocate_tables(index);
  for (std::size_t i = 0; i < tables.covers.size(); ++i) {
    fill_tip_rows(index, i, threshold, weights, tables);
  }
  return tables;
}

namespace {

// Per-review scoring body shared by both paths.
ReviewScore score_one_review(const Index& index, std::size_t review_idx,
                             const std::vector<std::size_t>& tips,
                             const PrefVector& prefs, double threshold,
                             const MergeWeights& weights) {
  const DocumentStats& review = index.review_stats(review_idx);
  const std::size_t vocab = index.vocab_size();
  const double eps = index.epsilon();

  ReviewScore out;
  out.per_tip.resize(tips.size());
  out.tip_matched.assign(tips.size(), 0);
  out.tip_matched_raw.assign(tips.size(), 0);
  out.sentence_relevant.assign(review.sentences.size(), 0);

  for (std::size_t k = 0; k < tips.size(); ++k) {
    const DocumentStats& tip = index.tip_stats(tips[k]);
    SimilarityScores best;
    bool first = true;
    for (std::size_t si = 0; si < review.sentences.size(); ++si) {
      const SentenceStats& s = review.sentences[si];
      SimilarityScores raw = score_vs_tip(s, tip, vocab, eps, 1.0, threshold, weights);
      if (raw.matched) {
        out.tip_matched_raw[k] = 1;
        out.sentence_relevant[si] = 1;
      }
      const double boost = preference_boost(prefs, s);
      SimilarityScores boosted = raw;
      boosted.merged = raw.merged * boost;
      boosted.matched = boosted.merged >= threshold;
      if (first || boosted.merged > best.merged) {
        best = boosted;
        first = false;
      }
    }
    out.per_tip[k] = best;
    if (best.matched) out.tip_matched[k] = 1;
  }
  for (std::uint8_t m : out.tip_matched) out.match_count += m;
  return out;
}

}  // namespace

std::vector<ReviewScore> score_reviews(const Index& index,
                                       const std::vector<std::size_t>& tips,
                                       const PrefVector& prefs, double threshold,
                                       const MergeWeights& weights) {
  std::vector<ReviewScore> out(index.corpus().reviews.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = score_one_review(
        index, static_cast<std::size_t>(j), tips, prefs, threshold, weights);
  }
  return out;
}

std::vector<ReviewScore> score_reviews_serial(const Index& index,
                                              const std::vector<std::size_t>& tips,
                                              const PrefVector& prefs,
                                              double threshold,
                                              const MergeWeights& weights) {
  std::vector<ReviewScore> out;
  out.reserve(index.corpus().reviews.size());
  for (std::size_t j = 0; j < index.corpus().reviews.size(); ++j) {
    out.push_back(score_one_review(index, j, tips, prefs, threshold, weights));
  }
  return out;
}

}  // namespace tipcover
