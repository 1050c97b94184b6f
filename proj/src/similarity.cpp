#include "tipcover/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "tipcover/errors.hpp"

namespace tipcover {

namespace {

constexpr double kLog2 = 0.6931471805599453;  // ln 2

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// p * log2(p / m) with the 0 log 0 = 0 convention.
double plogpm(double p, double m) {
  if (p <= 0.0 || m <= 0.0) return 0.0;
  return p * (std::log(p / m) / kLog2);
}

}  // namespace

double cosine(const TfIdfVector& a, const TfIdfVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() && ib != b.weights.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return clamp01(dot / (a.norm * b.norm));
}

double syntactic_sim(const SentenceStats& a, const SentenceStats& b) {
  return cosine(a.tfidf, b.tfidf);
}

double jsd(const TermDistribution& p, const TermDistribution& q) {
  if (p.p.size() != q.p.size()) {
    throw ValidationError("jsd: distribution lengths differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.p.size(); ++i) {
    double m = 0.5 * (p.p[i] + q.p[i]);
    sum += 0.5 * plogpm(p.p[i], m) + 0.5 * plogpm(q.p[i], m);
  }
  return clamp01(sum);
}

double jsd_from_counts(const std::vector<std::pair<TermId, std::uint32_t>>& a,
                       std::uint32_t len_a,
                       const std::vector<std::pair<TermId, std::uint32_t>>& b,
                       std::uint32_t len_b, std::size_t vocab_size, double eps) {
  const double denom_a = len_a + eps * static_cast<double>(vocab_size);
  const double denom_b = len_b + eps * static_cast<double>(vocab_size);
  const double p0 = eps / denom_a;
  const double q0 = eps / denom_b;
  const double m0 = 0.5 * (p0 + q0);
  const double background = 0.5 * plogpm(p0, m0) + 0.5 * plogpm(q0, m0);

  double sum = 0.0;
  std::size_t support = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    double ca = 0.0, cb = 0.0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      ca = ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      cb = ib->second;
      ++ib;
    } else {
      ca = ia->second;
      cb = ib->second;
      ++ia;
      ++ib;
    }
    const double p = (ca + eps) / denom_a;
    const double q = (cb + eps) / denom_b;
    const double m = 0.5 * (p + q);
    sum += 0.5 * plogpm(p, m) + 0.5 * plogpm(q, m);
    ++support;
  }
  sum += background * static_cast<double>(vocab_size - support);
  return clamp01(sum);
}

double semantic_sim(const SentenceStats& a, const SentenceStats& b,
                    std::size_t vocab_size, double eps) {
  return clamp01(1.0 - jsd_from_counts(a.counts, a.length, b.counts, b.length,
                                       vocab_size, eps));
}

double sentiment_sim(const SentenceStats& a, const SentenceStats& b) {
  return a.polarity * b.polarity;
}

PrefVector resolve_preferences(const UserPreferences& prefs, const Vocabulary& vocab) {
  PrefVector out;
  for (const PreferenceTerm& term : prefs.terms) {
    out.total_weight += term.weight;
    if (auto id = vocab.find(term.term)) {
      out.resolved.emplace_back(*id, term.weight);
    }
  }
  std::sort(out.resolved.begin(), out.resolved.end());
  return out;
}

double preference_overlap(const PrefVector& prefs, const SentenceStats& sentence) {
  if (prefs.total_weight == 0.0) return 0.0;
  double hit = 0.0;
  for (const auto& [term, weight] : prefs.resolved) {
    auto it = std::lower_bound(
        sentence.counts.begin(), sentence.counts.end(), term,
        [](const auto& entry, TermId t) { return entry.first < t; });
    if (it != sentence.counts.end() && it->first == term) hit += weight;
  }
  return hit / prefs.total_weight;
}

double preference_boost(const PrefVector& prefs, const SentenceStats& sentence) {
  if (prefs.empty()) return 1.0;
  return 0.5 + 0.5 * preference_overlap(prefs, sentence);
}

SimilarityScores merge_and_match(double syn, double sem, double sent,
                                 double pref_boost, double threshold,
                                 const MergeWeights& weights) {
  const double total = weights.w_syn + weights.w_sem + weights.w_sent;
  SimilarityScores scores;
  scores.syntactic = syn;
  scores.semantic = sem;
  scores.sentiment = sent;
  scores.merged =
      (weights.w_syn * syn + weights.w_sem * sem + weights.w_sent * (sent + 1.0) / 2.0) /
      total * pref_boost;
  scores.matched = scores.merged >= threshold;
  return scores;
}

SimilarityScores score_pair(const SentenceStats& s, const SentenceStats& u,
                            std::size_t vocab_size, double eps, double pref_boost,
                            double threshold, const MergeWeights& weights) {
  return merge_and_match(syntactic_sim(s, u), semantic_sim(s, u, vocab_size, eps),
                         sentiment_sim(s, u), pref_boost, threshold, weights);
}

SimilarityScores score_vs_tip(const SentenceStats& s, const DocumentStats& tip,
                              std::size_t vocab_size, double eps, double pref_boost,
                              double threshold, const MergeWeights& weights) {
  SimilarityScores best;
  bool first = true;
  for (const SentenceStats& u : tip.sentences) {
    SimilarityScores scores = score_pair(s, u, vocab_size, eps, pref_boost, threshold, weights);
    if (first || scores.merged > best.merged) {
      best = scores;
      first = false;
    }
  }
  return best;
}

double f_score_counts(const std::vector<std::pair<TermId, std::uint32_t>>& a,
                      const std::vector<std::pair<TermId, std::uint32_t>>& b) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += std::min(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double f_score(const Index& index, std::size_t review_idx, std::size_t tip_idx) {
  return f_score_counts(index.review_stats(review_idx).counts,
                        index.tip_stats(tip_idx).counts);
}

std::vector<RankedCandidate> rank_candidates(std::vector<RankedCandidate> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const RankedCandidate& a, const RankedCandidate& b) {
              if (a.merged != b.merged) return a.merged > b.merged;
              if (a.syntactic != b.syntactic) return a.syntactic > b.syntactic;
              if (a.semantic != b.semantic) return a.semantic > b.semantic;
              if (a.sentiment != b.sentiment) return a.sentiment > b.sentiment;
              return a.id < b.id;
            });
  return candidates;
}

}  // namespace tipcover
