#include "tipcover/indexing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tipcover/errors.hpp"

namespace tipcover {

using nlohmann::json;

PolarityLexicon PolarityLexicon::from_files(const std::string& positive_path,
                                            const std::string& negative_path) {
  PolarityLexicon lex;
  auto read = [&lex](const std::string& path, int sign) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open lexicon file: " + path);
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto [it, inserted] = lex.signs_.emplace(line, sign);
      if (!inserted && it->second != sign) {
        throw ValidationError("lexicon stem \"" + line + "\" appears with both signs");
      }
    }
  };
  read(positive_path, +1);
  read(negative_path, -1);
  return lex;
}

namespace {

std::vector<std::pair<TermId, std::uint32_t>> count_tokens(
    const std::vector<TermId>& tokens) {
  std::map<TermId, std::uint32_t> counts;
  for (TermId t : tokens) ++counts[t];
  return {counts.begin(), counts.end()};
}

TfIdfVector make_tfidf(const std::vector<std::pair<TermId, std::uint32_t>>& counts,
                       std::uint32_t length, const std::vector<double>& idf) {
  TfIdfVector v;
  if (length == 0) return v;
  double sq = 0.0;
  for (const auto& [term, count] : counts) {
    double w = (static_cast<double>(count) / length) * idf[term];
    if (w > 0.0) {
      v.weights.emplace_back(term, w);
      sq += w * w;
    }
  }
  v.norm = std::sqrt(sq);
  return v;
}

}  // namespace

Index::Index(const Corpus& corpus, double epsilon, const PolarityLexicon& lexicon)
    : corpus_(&corpus), epsilon_(epsilon) {
  const std::size_t n_docs = corpus.document_count();
  if (n_docs == 0) throw ValidationError("cannot index an empty corpus");
  if (!(epsilon > 0.0)) throw ValidationError("smoothing epsilon must be positive");

  const std::size_t vocab = corpus.vocabulary.size();
  df_.assign(vocab, 0);
  auto count_df = [this](const std::vector<Sentence>& sentences) {
    std::vector<TermId> seen;
    for (const Sentence& s : sentences)
      seen.insert(seen.end(), s.tokens.begin(), s.tokens.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (TermId t : seen) ++df_[t];
  };
  for (const Review& r : corpus.reviews) count_df(r.sentences);
  for (const MicroReview& mr : corpus.micro_reviews) count_df(mr.sentences);

  idf_.assign(vocab, 0.0);
  for (std::size_t t = 0; t < vocab; ++t) {
    if (df_[t] > 0) idf_[t] = std::log(static_cast<double>(n_docs) / df_[t]);
  }

  term_sign_.assign(vocab, 0);
  for (std::size_t t = 0; t < vocab; ++t) {
    term_sign_[t] = lexicon.sign(corpus.vocabulary.term(static_cast<TermId>(t)));
  }

  reviews_.reserve(corpus.reviews.size());
  for (const Review& r : corpus.reviews) reviews_.push_back(build_document(r.sentences));
  tips_.reserve(corpus.micro_reviews.size());
  for (const MicroReview& mr : corpus.micro_reviews)
    tips_.push_back(build_document(mr.sentences));
}

DocumentStats Index::build_document(const std::vector<Sentence>& sentences) const {
  DocumentStats doc;
  std::vector<TermId> all_tokens;
  doc.sentences.reserve(sentences.size());
  for (const Sentence& s : sentences) {
    SentenceStats stats;
    stats.counts = count_tokens(s.tokens);
    stats.length = static_cast<std::uint32_t>(s.tokens.size());
    stats.tfidf = make_tfidf(stats.counts, stats.length, idf_);
    int pos = 0, neg = 0;
    for (TermId t : s.tokens) {
      int sign = term_sign_[t];
      if (sign > 0) ++pos;
      if (sign < 0) ++neg;
    }
    stats.polarity = static_cast<double>(pos - neg) / std::max(1, pos + neg);
    doc.sentences.push_back(std::move(stats));
    all_tokens.insert(all_tokens.end(), s.tokens.begin(), s.tokens.end());
  }
  doc.counts = count_tokens(all_tokens);
  doc.length = static_cast<std::uint32_t>(all_tokens.size());
  doc.tfidf = make_tfidf(doc.counts, doc.length, idf_);
  return doc;
}

namespace {

TermDistribution distribution_from_counts(
    const std::vector<std::pair<TermId, std::uint32_t>>& counts, std::uint32_t length,
    std::size_t vocab_size, double eps) {
  TermDistribution d;
  d.epsilon = eps;
  const double denom = length + eps * static_cast<double>(vocab_size);
  d.p.assign(vocab_size, eps / denom);
  for (const auto& [term, count] : counts) d.p[term] = (count + eps) / denom;
  return d;
}

}  // namespace

TermDistribution Index::review_distribution(std::size_t i) const {
  const DocumentStats& doc = reviews_[i];
  return distribution_from_counts(doc.counts, doc.length, vocab_size(), epsilon_);
}

TermDistribution Index::tip_distribution(std::size_t i) const {
  const DocumentStats& doc = tips_[i];
  return distribution_from_counts(doc.counts, doc.length, vocab_size(), epsilon_);
}

Index build_index(const Corpus& corpus, double epsilon, const PolarityLexicon& lexicon) {
  return Index(corpus, epsilon, lexicon);
}

TermDistribution term_distribution(const std::vector<TermId>& tokens,
                                   std::size_t vocab_size, double eps) {
  if (vocab_size == 0) throw ValidationError("term_distribution needs vocab_size > 0");
  if (!(eps > 0.0)) throw ValidationError("term_distribution needs eps > 0");
  return distribution_from_counts(count_tokens(tokens),
                                  static_cast<std::uint32_t>(tokens.size()), vocab_size,
                                  eps);
}

double polarity(const std::vector<TermId>& tokens, const PolarityLexicon& lexicon,
                const Vocabulary& vocab) {
  int pos = 0, neg = 0;
  for (TermId t : tokens) {
    int sign = lexicon.sign(vocab.term(t));
    if (sign > 0) ++pos;
    if (sign < 0) ++neg;
  }
  return static_cast<double>(pos - neg) / std::max(1, pos + neg);
}

std::vector<std::string> extract_keywords(
    const std::unordered_map<std::string, std::uint32_t>& histogram, int k) {
  if (k <= 0) throw ValidationError("extract_keywords needs k > 0");
  std::vector<std::pair<std::string, std::uint32_t>> entries(histogram.begin(),
                                                             histogram.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(std::min<std::size_t>(entries.size(), static_cast<std::size_t>(k)));
  for (const auto& [stem, count] : entries) {
    if (out.size() == static_cast<std::size_t>(k)) break;
    out.push_back(stem);
  }
  return out;
}

namespace {

double cosine_against_seed(const TfIdfVector& centroid, const std::vector<TermId>& seed) {
  if (centroid.norm == 0.0 || seed.empty()) return 0.0;
  double dot = 0.0;
  for (const auto& [term, weight] : centroid.weights) {
    if (std::binary_search(seed.begin(), seed.end(), term)) dot += weight;
  }
  return dot / (centroid.norm * std::sqrt(static_cast<double>(seed.size())));
}

}  // namespace

std::vector<std::size_t> reviews_of_user(const Corpus& corpus,
                                         const std::string& user_id) {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < corpus.reviews.size(); ++i) {
    if (corpus.reviews[i].user_id == user_id) indices.push_back(i);
  }
  return indices;
}

UserProfile build_profile(const std::string& user_id,
                          const std::vector<std::size_t>& review_indices,
                          const CategorySeeds& categories, const Index& index, int k) {
  if (review_indices.empty()) {
    throw ValidationError("cannot build a profile for user \"" + user_id +
                          "\" with no reviews");
  }
  for (const auto& [name, seeds] : categories) {
    if (seeds.empty()) {
      throw ValidationError("category \"" + name + "\" has no seed terms");
    }
  }

  UserProfile profile;
  profile.user_id = user_id;

  const Vocabulary& vocab = index.corpus().vocabulary;
  std::map<TermId, double> centroid;
  for (std::size_t idx : review_indices) {
    for (const Sentence& s : index.corpus().reviews[idx].sentences) {
      for (TermId t : s.tokens) ++profile.histogram[vocab.term(t)];
    }
  }
  // Centroid = mean of the member reviews' TF-IDF vectors.
  for (std::size_t idx : review_indices) {
    for (const auto& [term, weight] : index.review_stats(idx).tfidf.weights) {
      centroid[term] += weight / review_indices.size();
    }
  }
  double sq = 0.0;
  for (const auto& [term, weight] : centroid) {
    if (weight > 0.0) {
      profile.tfidf_centroid.weights.emplace_back(term, weight);
      sq += weight * weight;
    }
  }
  profile.tfidf_centroid.norm = std::sqrt(sq);

  profile.top_keywords = extract_keywords(profile.histogram, k);

  std::string best_name = "uncategorized";
  double best_cos = 0.0;
  for (const auto& [name, seeds] : categories) {
    std::vector<TermId> ids;
    for (const auto& seed : seeds) {
      if (auto id = vocab.find(seed)) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    double c = cosine_against_seed(profile.tfidf_centroid, ids);
    if (c > best_cos || (c == best_cos && c > 0.0 && name < best_name)) {
      best_cos = c;
      best_name = name;
    }
  }
  profile.category = best_cos > 0.0 ? best_name : "uncategorized";
  return profile;
}

UserPreferences profile_to_preferences(const UserProfile& profile) {
  UserPreferences prefs;
  prefs.user_id = profile.user_id;
  if (profile.top_keywords.empty()) return prefs;
  std::uint32_t max_count = 0;
  for (const auto& stem : profile.top_keywords) {
    max_count = std::max(max_count, profile.histogram.at(stem));
  }
  for (const auto& stem : profile.top_keywords) {
    prefs.terms.push_back(
        {stem, static_cast<double>(profile.histogram.at(stem)) / max_count});
  }
  return prefs;
}

CategorySeeds load_categories(const std::string& path,
                              const PreprocessPipeline& pipeline) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open categories file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ValidationError(path + ": malformed categories JSON");
  }
  CategorySeeds out;
  for (const auto& [name, seeds] : j.items()) {
    std::vector<std::string> stems;
    for (const auto& seed : seeds) {
      for (const auto& token : tokenize(seed.get<std::string>())) {
        if (pipeline.is_stopword(token)) continue;
        std::string stem = porter_stem(token);
        if (!stem.empty() && !pipeline.is_stopword(stem)) stems.push_back(std::move(stem));
      }
    }
    out.emplace_back(name, std::move(stems));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace tipcover
