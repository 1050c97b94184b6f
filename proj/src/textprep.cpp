#include "tipcover/textprep.hpp"

#include <cctype>
#include <fstream>

#include "tipcover/errors.hpp"

namespace tipcover {

namespace {

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char to_lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_char(c)) {
      current.push_back(to_lower_ascii(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<SentenceSpan> split_sentences(std::string_view text) {
  std::vector<SentenceSpan> spans;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_terminal(text[i])) {
      std::size_t end = i + 1;
      while (end < text.size() && is_terminal(text[end])) ++end;
      if (end >= text.size() || is_space(text[end])) {
        spans.push_back({start, end});
        i = end;
        while (i < text.size() && is_space(text[i])) ++i;
        start = i;
        continue;
      }
      i = end;
      continue;
    }
    ++i;
  }
  if (start < text.size()) spans.push_back({start, text.size()});
  return spans;
}

PreprocessPipeline PreprocessPipeline::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stopword list: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && is_space(line.back())) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) c = to_lower_ascii(c);
    words.insert(line);
  }
  return PreprocessPipeline(std::move(words));
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PreprocessPipeline& pipeline) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!pipeline.is_stopword(t)) kept.push_back(t);
  return kept;
}

std::vector<StemmedSentence> preprocess(std::string_view text,
                                        const PreprocessPipeline& pipeline) {
  std::vector<StemmedSentence> sentences;
  for (const SentenceSpan& span : split_sentences(text)) {
    std::vector<std::string> stems;
    for (const auto& token :
         tokenize(text.substr(span.begin, span.end - span.begin))) {
      if (pipeline.is_stopword(token)) continue;
      std::string stem = porter_stem(token);
      if (stem.empty() || pipeline.is_stopword(stem)) continue;
      stems.push_back(std::move(stem));
    }
    if (!stems.empty()) sentences.push_back({std::move(stems), span});
  }
  return sentences;
}

}  // namespace tipcover
