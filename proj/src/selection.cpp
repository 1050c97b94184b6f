#include "tipcover/selection.hpp"

#include <algorithm>

#include "tipcover/errors.hpp"
#include "tipcover/kernels.hpp"
#include "tipcover/similarity.hpp"

namespace tipcover {

namespace {

ReviewSelection assemble(const Index& index, const TipSelection& tips,
                         const std::vector<ReviewScore>& scores,
                         const SelectionConfig& config) {
  const Corpus& corpus = index.corpus();
  ReviewSelection out;
  out.all.reserve(corpus.reviews.size());

  for (std::size_t j = 0; j < corpus.reviews.size(); ++j) {
    const ReviewScore& score = scores[j];
    ReviewMatch match;
    match.review_id = corpus.reviews[j].id;
    match.review_index = j;
    match.match_count = score.match_count;

    std::size_t raw_hits = 0;
    for (std::uint8_t b : score.tip_matched_raw) raw_hits += b;
    match.coverage = static_cast<double>(raw_hits) / tips.size();

    const std::size_t n_sentences = score.sentence_relevant.size();
    if (n_sentences > 0) {
      std::size_t relevant = 0;
      for (std::uint8_t b : score.sentence_relevant) relevant += b;
      match.efficiency = static_cast<double>(relevant) / n_sentences;
    }

    match.merged_per_tip.reserve(score.per_tip.size());
    double sum_m = 0, sum_syn = 0, sum_sem = 0, sum_sent = 0;
    for (const SimilarityScores& s : score.per_tip) {
      match.merged_per_tip.push_back(s.merged);
      sum_m += s.merged;
      sum_syn += s.syntactic;
      sum_sem += s.semantic;
      sum_sent += s.sentiment;
    }
    const double n_tips = static_cast<double>(tips.size());
    match.merged = sum_m / n_tips;
    match.syntactic = sum_syn / n_tips;
    match.semantic = sum_sem / n_tips;
    match.sentiment = sum_sent / n_tips;
    match.selected = match.match_count >= config.match_count;
    out.all.push_back(std::move(match));
  }

  std::vector<RankedCandidate> ranked;
  for (const ReviewMatch& m : out.all) {
    if (m.selected) {
      ranked.push_back({m.review_id, m.merged, m.syntactic, m.semantic, m.sentiment});
    }
  }
  ranked = rank_candidates(std::move(ranked));
  out.selected.reserve(ranked.size());
  for (const RankedCandidate& c : ranked) {
    auto it = std::find_if(out.all.begin(), out.all.end(),
                           [&](const ReviewMatch& m) { return m.review_id == c.id; });
    out.selected.push_back(*it);
  }
  out.rejected_count = out.all.size() - out.selected.size();
  return out;
}

}  // namespace

ReviewSelection select_reviews(const Index& index, const TipSelection& tips,
                     const UserPreferences& prefs, const SelectionConfig& config) {
  if (tips.empty()) {
    throw ValidationError("tip subset required before review selection");
  }
  PrefVector pref_vec = resolve_preferences(prefs, index.corpus().vocabulary);
  MergeWeights weights{config.w_syn, config.w_sem, config.w_sent};
  auto scores = score_reviews(index, tips.tip_indices, pref_vec,
                              config.match_threshold, weights);
  return assemble(index, tips, scores, config);
}

ReviewSelection select_reviews_serial(const Index& index, const TipSelection& tips,
                            const UserPreferences& prefs,
                            const SelectionConfig& config) {
  if (tips.empty()) {
    throw ValidationError("tip subset required before review selection");
  }
  PrefVector pref_vec = resolve_preferences(prefs, index.corpus().vocabulary);
  MergeWeights weights{config.w_syn, config.w_sem, config.w_sent};
  auto scores = score_reviews_serial(index, tips.tip_indices, pref_vec,
                                     config.match_threshold, weights);
  return assemble(index, tips, scores, config);
}

double review_coverage(const CoverageMatrix& m, const TipSelection& tips,
                       std::size_t review_idx) {
  if (tips.empty()) {
    throw ValidationError("review coverage needs a nonempty tip selection");
  }
  std::size_t hits = 0;
  for (std::size_t tip : tips.tip_indices) hits += m.covers[tip][review_idx];
  return static_cast<double>(hits) / tips.size();
}

double review_efficiency(const Index& index, const TipSelection& tips,
                         std::size_t review_idx, const SelectionConfig& config) {
  const DocumentStats& review = index.review_stats(review_idx);
  if (review.sentences.empty()) {
    throw ValidationError("efficiency undefined for review \"" +
                          index.corpus().reviews[review_idx].id +
                          "\" with no sentences");
  }
  MergeWeights weights{config.w_syn, config.w_sem, config.w_sent};
  std::size_t relevant = 0;
  for (const SentenceStats& s : review.sentences) {
    for (std::size_t tip : tips.tip_indices) {
      SimilarityScores scores =
          score_vs_tip(s, index.tip_stats(tip), index.vocab_size(), index.epsilon(),
                       1.0, config.match_threshold, weights);
      if (scores.matched) {
        ++relevant;
        break;
      }
    }
  }
  return static_cast<double>(relevant) / review.sentences.size();
}

}  // namespace tipcover
