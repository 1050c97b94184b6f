#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tipcover {

// Porter's suffix-stripping algorithm over a lowercase word. Words of one or
// two letters come back unchanged, as do words containing no letters at all.
std::string porter_stem(std::string_view word);

// Lowercase ASCII-alphabetic tokens in text order. Digits, punctuation and
// anything non-alphabetic separate tokens, so hyphenated words split.
std::vector<std::string> tokenize(std::string_view text);

// Half-open byte range of one sentence within the original text.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Sentences end at '.', '!' or '?' (runs thereof) followed by whitespace or
// end of text; the final fragment counts even without terminal punctuation.
std::vector<SentenceSpan> split_sentences(std::string_view text);

// Stateless preprocessing configuration: the stopword list. The stemmer has
// no knobs. Safe to share across threads.
class PreprocessPipeline {
 public:
  PreprocessPipeline() = default;
  explicit PreprocessPipeline(std::unordered_set<std::string> stopwords)
      : stopwords_(std::move(stopwords)) {}

  // One lowercase word per line; '#' lines and blanks ignored.
  static PreprocessPipeline from_file(const std::string& path);

  bool is_stopword(const std::string& token) const {
    return stopwords_.count(token) > 0;
  }
  std::size_t stopword_count() const { return stopwords_.size(); }

 private:
  std::unordered_set<std::string> stopwords_;
};

// Keeps the relative order of the surviving tokens. Idempotent.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PreprocessPipeline& pipeline);

// One preprocessed sentence: surviving stems plus where the sentence sat in
// the raw text. Sentences that lose every token are dropped by preprocess().
struct StemmedSentence {
  std::vector<std::string> stems;
  SentenceSpan span;
};

// Full pipeline: sentence split, tokenize, stopword removal, stemming.
// Stopwords are filtered again after stemming so no output stem is ever a
// stoplist member.
std::vector<StemmedSentence> preprocess(std::string_view text,
                                        const PreprocessPipeline& pipeline);

}  // namespace tipcover
