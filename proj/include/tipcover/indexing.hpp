#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tipcover/corpus.hpp"

namespace tipcover {

// Sparse TF-IDF vector, entries sorted by term id, zero weights omitted.
struct TfIdfVector {
  std::vector<std::pair<TermId, double>> weights;
  double norm = 0.0;
};

// Dense smoothed unigram distribution over the vocabulary.
struct TermDistribution {
  std::vector<double> p;
  double epsilon = 0.0;
};

// Signed word lists; a stem is positive (+1) or negative (-1), never both.
class PolarityLexicon {
 public:
  static PolarityLexicon from_files(const std::string& positive_path,
                                    const std::string& negative_path);

  int sign(const std::string& stem) const {
    auto it = signs_.find(stem);
    return it == signs_.end() ? 0 : it->second;
  }
  std::size_t size() const { return signs_.size(); }

 private:
  std::unordered_map<std::string, int> signs_;
};

// Everything precomputed for one sentence: sparse counts, a TF-IDF vector,
// and the lexicon polarity. Counts are sorted by term id.
struct SentenceStats {
  std::vector<std::pair<TermId, std::uint32_t>> counts;
  std::uint32_t length = 0;
  TfIdfVector tfidf;
  double polarity = 0.0;
};

struct DocumentStats {
  std::vector<std::pair<TermId, std::uint32_t>> counts;
  std::uint32_t length = 0;
  TfIdfVector tfidf;
  std::vector<SentenceStats> sentences;
};

// Immutable per-corpus statistics. All accessors are safe to call from
// multiple threads once built.
class Index {
 public:
  Index(const Corpus& corpus, double epsilon, const PolarityLexicon& lexicon);

  const Corpus& corpus() const { return *corpus_; }
  double epsilon() const { return epsilon_; }
  std::size_t vocab_size() const { return df_.size(); }

  std::uint32_t df(TermId t) const { return df_[t]; }
  double idf(TermId t) const { return idf_[t]; }
  int term_sign(TermId t) const { return term_sign_[t]; }

  const DocumentStats& review_stats(std::size_t i) const { return reviews_[i]; }
  const DocumentStats& tip_stats(std::size_t i) const { return tips_[i]; }

  // Smoothed distribution of one document, computed on demand.
  TermDistribution review_distribution(std::size_t i) const;
  TermDistribution tip_distribution(std::size_t i) const;

 private:
  DocumentStats build_document(const std::vector<Sentence>& sentences) const;

  const Corpus* corpus_;
  double epsilon_;
  std::vector<std::uint32_t> df_;
  std::vector<double> idf_;
  std::vector<int> term_sign_;
  std::vector<DocumentStats> reviews_;
  std::vector<DocumentStats> tips_;
};

// idf = ln(total documents / document frequency); reviews and tips both
// count as documents. Throws on an empty corpus.
Index build_index(const Corpus& corpus, double epsilon,
                  const PolarityLexicon& lexicon);

// p(w) = (count(w) + eps) / (len + eps * vocab_size); empty input gives the
// uniform distribution.
TermDistribution term_distribution(const std::vector<TermId>& tokens,
                                   std::size_t vocab_size, double eps);

// (positives - negatives) / max(1, positives + negatives), in [-1, 1].
double polarity(const std::vector<TermId>& tokens, const PolarityLexicon& lexicon,
                const Vocabulary& vocab);

// Top-k stems by count, ties broken by lexicographic stem order.
std::vector<std::string> extract_keywords(
    const std::unordered_map<std::string, std::uint32_t>& histogram, int k);

// User profile assembled from one user's reviews:
// keyword histogram, top-k keywords, a TF-IDF centroid and a category label.
struct UserProfile {
  std::string user_id;
  std::unordered_map<std::string, std::uint32_t> histogram;
  std::vector<std::string> top_keywords;
  std::string category;  // "uncategorized" when nothing matches
  TfIdfVector tfidf_centroid;
};

using CategorySeeds = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Categories get binary seed-term vectors; the profile lands in the category
// with maximal cosine against the centroid, ties to the lexicographically
// first name. review_indices address index.corpus().reviews; throws when the
// user has no reviews.
UserProfile build_profile(const std::string& user_id,
                          const std::vector<std::size_t>& review_indices,
                          const CategorySeeds& categories, const Index& index,
                          int k);

// Positions of one user's reviews in corpus order.
std::vector<std::size_t> reviews_of_user(const Corpus& corpus,
                                         const std::string& user_id);

// Keywords become preference terms weighted count / max count.
UserPreferences profile_to_preferences(const UserProfile& profile);

// Loads a {"name": ["seed", ...]} JSON file; seeds are stemmed.
CategorySeeds load_categories(const std::string& path,
                              const PreprocessPipeline& pipeline);

}  // namespace tipcover
