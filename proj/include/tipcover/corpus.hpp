#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tipcover/textprep.hpp"

namespace tipcover {

using TermId = std::uint32_t;

// Interning table mapping stems to dense ids, shared by every document of a
// corpus. Ids are assigned in first-seen order.
class Vocabulary {
 public:
  TermId intern(const std::string& term);
  std::optional<TermId> find(const std::string& term) const;
  const std::string& term(TermId id) const { return terms_[id]; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> ids_;
};

// One preprocessed sentence: interned stems plus the byte range the sentence
// occupies in the raw document text.
struct Sentence {
  std::uint32_t index = 0;
  std::vector<TermId> tokens;
  std::size_t raw_begin = 0;
  std::size_t raw_end = 0;
};

struct Review {
  std::string id;
  std::string venue_id;
  std::string user_id;  // empty when the source line had none
  std::string raw_text;
  std::vector<Sentence> sentences;
  std::optional<double> rating;
};

// A tip: at most 140 characters of raw text, usually a single sentence.
struct MicroReview {
  std::string id;
  std::string venue_id;
  std::string raw_text;
  std::vector<Sentence> sentences;
};

inline constexpr std::size_t kMaxTipLength = 140;

struct Corpus {
  std::string venue_id;
  std::vector<Review> reviews;
  std::vector<MicroReview> micro_reviews;
  Vocabulary vocabulary;

  std::size_t document_count() const {
    return reviews.size() + micro_reviews.size();
  }
};

struct PreferenceTerm {
  std::string term;  // stemmed
  double weight = 0; // in (0, 1]
};

struct UserPreferences {
  std::string user_id;
  std::vector<PreferenceTerm> terms;
  bool empty() const { return terms.empty(); }
};

// Preference snapshots of earlier users, kept in timestamp order.
struct PreferenceHistory {
  struct Entry {
    std::int64_t timestamp = 0;
    UserPreferences prefs;
  };
  std::vector<Entry> entries;

  // Inserts keeping ascending timestamp order (stable for equal stamps).
  void add(Entry entry);
};

// Reads the JSON Lines review and tip files and preprocesses every document.
// Duplicate ids, malformed lines (reported with their line number) and tips
// longer than 140 characters are rejected.
Corpus load_corpus(const std::string& reviews_path, const std::string& tips_path,
                   const PreprocessPipeline& pipeline);

// Reads a preference file, stems the terms, and deduplicates keeping the
// maximum weight per stem. Weights outside (0,1] are rejected.
UserPreferences load_preferences(const std::string& path,
                                 const PreprocessPipeline& pipeline);

// Deterministic synthetic corpus: topic-clustered reviews plus tips that
// borrow their wording from the reviews, so coverage is nontrivial.
Corpus generate_fixture(std::uint64_t seed, int n_reviews, int n_tips,
                        int vocab_size, const PreprocessPipeline& pipeline);

// Cache round-trip used by the CLI between pipeline stages.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus_cache(const std::string& path);
std::string corpus_to_json_string(const Corpus& corpus);
Corpus corpus_from_json_string(const std::string& text);

bool structurally_equal(const Corpus& a, const Corpus& b);

}  // namespace tipcover
