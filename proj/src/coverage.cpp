#include "tipcover/coverage.hpp"

#include <algorithm>
#include <limits>

#include "tipcover/errors.hpp"
#include "tipcover/kernels.hpp"

namespace tipcover {

namespace {

CoverageMatrix matrix_from_tables(const Index& index, MatchTables tables,
                                  double threshold) {
  CoverageMatrix m;
  m.threshold = threshold;
  const Corpus& corpus = index.corpus();
  m.review_ids.reserve(corpus.reviews.size());
  for (const Review& r : corpus.reviews) m.review_ids.push_back(r.id);
  m.tip_ids.reserve(corpus.micro_reviews.size());
  for (const MicroReview& mr : corpus.micro_reviews) m.tip_ids.push_back(mr.id);
  m.covers = std::move(tables.covers);
  m.tip_sentence_counts.reserve(tables.relevant.size());
  m.tip_relevant_counts.reserve(tables.relevant.size());
  for (const auto& row : tables.relevant) {
    m.tip_sentence_counts.push_back(static_cast<std::uint32_t>(row.size()));
    m.tip_relevant_counts.push_back(static_cast<std::uint32_t>(
        std::count(row.begin(), row.end(), std::uint8_t{1})));
  }
  return m;
}

}  // namespace

CoverageMatrix build_coverage_matrix(const Index& index, const SelectionConfig& config) {
  MergeWeights weights{config.w_syn, config.w_sem, config.w_sent};
  return matrix_from_tables(
      index, compute_match_tables(index, config.match_threshold, weights),
      config.match_threshold);
}

CoverageMatrix build_coverage_matrix_serial(const Index& index,
                                            const SelectionConfig& config) {
  MergeWeights weights{config.w_syn, config.w_sem, config.w_sent};
  return matrix_from_tables(
      index, compute_match_tables_serial(index, config.match_threshold, weights),
      config.match_threshold);
}

double cov(const CoverageMatrix& m, std::size_t tip) {
  if (m.review_count() == 0) return 0.0;
  std::size_t covered = 0;
  for (std::uint8_t c : m.covers[tip]) covered += c;
  return static_cast<double>(covered) / m.review_count();
}

double cov_set(const CoverageMatrix& m, const std::vector<std::size_t>& tips) {
  if (m.review_count() == 0 || tips.empty()) return 0.0;
  std::vector<std::uint8_t> covered(m.review_count(), 0);
  for (std::size_t tip : tips) {
    for (std::size_t j = 0; j < m.review_count(); ++j) covered[j] |= m.covers[tip][j];
  }
  std::size_t n = 0;
  for (std::uint8_t c : covered) n += c;
  return static_cast<double>(n) / m.review_count();
}

double eff(const CoverageMatrix& m, std::size_t tip) {
  if (m.tip_sentence_counts[tip] == 0) {
    throw ValidationError("efficiency undefined for tip \"" + m.tip_ids[tip] +
                          "\" with no sentences");
  }
  return static_cast<double>(m.tip_relevant_counts[tip]) / m.tip_sentence_counts[tip];
}

double eff_avg(const CoverageMatrix& m, const std::vector<std::size_t>& tips) {
  if (tips.empty()) throw ValidationError("average efficiency of an empty tip set");
  double sum = 0.0;
  for (std::size_t tip : tips) sum += eff(m, tip);
  return sum / static_cast<double>(tips.size());
}

TipSelection select_micro_reviews(const CoverageMatrix& m, int budget, double alpha,
                                  double beta) {
  if (budget < 1) throw ValidationError("tip budget must be at least 1");

  TipSelection selection;
  std::vector<std::uint8_t> covered(m.review_count(), 0);
  std::size_t covered_count = 0;
  double eff_sum = 0.0;

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < m.tip_count(); ++i) {
    if (m.tip_sentence_counts[i] > 0) pool.push_back(i);
  }

  while (selection.size() < static_cast<std::size_t>(budget) && !pool.empty()) {
    const double k = static_cast<double>(selection.size());
    std::vector<RankedCandidate> eligible;
    std::vector<std::size_t> eligible_index;
    std::vector<double> eligible_gain, eligible_cost;
    for (std::size_t tip : pool) {
      const double tip_eff = eff(m, tip);
      if ((eff_sum + tip_eff) / (k + 1.0) < alpha) continue;
      std::size_t newly = 0;
      for (std::size_t j = 0; j < m.review_count(); ++j) {
        if (!covered[j] && m.covers[tip][j]) ++newly;
      }
      const double gain =
          m.review_count() == 0 ? 0.0 : static_cast<double>(newly) / m.review_count();
      const double cost = beta * (1.0 - tip_eff) + (1.0 - beta);
      const double ratio =
          cost == 0.0 ? std::numeric_limits<double>::infinity() : gain / cost;
      eligible.push_back({m.tip_ids[tip], ratio, gain, tip_eff, 0.0});
      eligible_index.push_back(tip);
      eligible_gain.push_back(gain);
      eligible_cost.push_back(cost);
    }
    if (eligible.empty()) break;
    double max_gain = 0.0;
    for (double g : eligible_gain) max_gain = std::max(max_gain, g);
    if (max_gain == 0.0) break;

    // Best ratio first, ties resolved exactly like rank_candidates.
    std::size_t best = 0;
    for (std::size_t c = 1; c < eligible.size(); ++c) {
      const RankedCandidate& a = eligible[c];
      const RankedCandidate& b = eligible[best];
      const bool wins = a.merged != b.merged      ? a.merged > b.merged
                        : a.syntactic != b.syntactic ? a.syntactic > b.syntactic
                        : a.semantic != b.semantic   ? a.semantic > b.semantic
                                                     : a.id < b.id;
      if (wins) best = c;
    }

    const std::size_t chosen = eligible_index[best];
    eff_sum += eff(m, chosen);
    for (std::size_t j = 0; j < m.review_count(); ++j) {
      if (!covered[j] && m.covers[chosen][j]) {
        covered[j] = 1;
        ++covered_count;
      }
    }
    selection.tip_indices.push_back(chosen);
    selection.tip_ids.push_back(m.tip_ids[chosen]);
    selection.trace.push_back(
        {m.tip_ids[chosen], eligible_gain[best], eligible_cost[best],
         m.review_count() == 0
             ? 0.0
             : static_cast<double>(covered_count) / m.review_count(),
         eff_sum / static_cast<double>(selection.size())});
    pool.erase(std::find(pool.begin(), pool.end(), chosen));
  }
  return selection;
}

}  // namespace tipcover
