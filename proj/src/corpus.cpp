#include "tipcover/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "tipcover/errors.hpp"

namespace tipcover {

using nlohmann::json;

TermId Vocabulary::intern(const std::string& term) {
  auto it = ids_.find(term);
  if (it != ids_.end()) return it->second;
  TermId id = static_cast<TermId>(terms_.size());
  terms_.push_back(term);
  ids_.emplace(term, id);
  return id;
}

std::optional<TermId> Vocabulary::find(const std::string& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void PreferenceHistory::add(Entry entry) {
  auto pos = std::upper_bound(
      entries.begin(), entries.end(), entry.timestamp,
      [](std::int64_t t, const Entry& e) { return t < e.timestamp; });
  entries.insert(pos, std::move(entry));
}

namespace {

std::vector<Sentence> intern_sentences(const std::string& text,
                                       const PreprocessPipeline& pipeline,
                                       Vocabulary& vocab) {
  std::vector<Sentence> out;
  std::uint32_t index = 0;
  for (const StemmedSentence& s : preprocess(text, pipeline)) {
    Sentence sentence;
    sentence.index = index++;
    sentence.raw_begin = s.span.begin;
    sentence.raw_end = s.span.end;
    sentence.tokens.reserve(s.stems.size());
    for (const auto& stem : s.stems) sentence.tokens.push_back(vocab.intern(stem));
    out.push_back(std::move(sentence));
  }
  return out;
}

json parse_line(const std::string& line, const std::string& path, std::size_t lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ValidationError(path + ":" + std::to_string(lineno) + ": malformed JSON line");
  }
  return j;
}

std::string require_string(const json& j, const char* key, const std::string& path,
                           std::size_t lineno) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ValidationError(path + ":" + std::to_string(lineno) + ": missing string field \"" +
                          key + "\"");
  }
  return j[key].get<std::string>();
}

}  // namespace

Corpus load_corpus(const std::string& reviews_path, const std::string& tips_path,
                   const PreprocessPipeline& pipeline) {
  Corpus corpus;
  std::unordered_set<std::string> seen_ids;

  std::ifstream rin(reviews_path);
  if (!rin) throw ValidationError("cannot open reviews file: " + reviews_path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(rin, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, reviews_path, lineno);
    Review r;
    r.id = require_string(j, "id", reviews_path, lineno);
    r.venue_id = require_string(j, "venue_id", reviews_path, lineno);
    r.raw_text = require_string(j, "text", reviews_path, lineno);
    if (j.contains("user_id")) r.user_id = j["user_id"].get<std::string>();
    if (j.contains("rating")) {
      double rating = j["rating"].get<double>();
      if (rating < 1.0 || rating > 5.0) {
        throw ValidationError(reviews_path + ":" + std::to_string(lineno) +
                              ": rating out of range for review \"" + r.id + "\"");
      }
      r.rating = rating;
    }
    if (!seen_ids.insert(r.id).second) {
      throw ValidationError(reviews_path + ":" + std::to_string(lineno) +
                            ": duplicate document id \"" + r.id + "\"");
    }
    // a corpus covers exactly one venue
    if (corpus.venue_id.empty()) {
      corpus.venue_id = r.venue_id;
    } else if (corpus.venue_id != r.venue_id) {
      throw ValidationError(reviews_path + ":" + std::to_string(lineno) +
                            ": review \"" + r.id + "\" belongs to venue \"" +
                            r.venue_id + "\", corpus is \"" + corpus.venue_id + "\"");
    }
    r.sentences = intern_sentences(r.raw_text, pipeline, corpus.vocabulary);
    corpus.reviews.push_back(std::move(r));
  }

  std::ifstream tin(tips_path);
  if (!tin) throw ValidationError("cannot open tips file: " + tips_path);
  lineno = 0;
  while (std::getline(tin, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, tips_path, lineno);
    MicroReview mr;
    mr.id = require_string(j, "id", tips_path, lineno);
    mr.venue_id = require_string(j, "venue_id", tips_path, lineno);
    mr.raw_text = require_string(j, "text", tips_path, lineno);
    if (mr.raw_text.size() > kMaxTipLength) {
      throw ValidationError(tips_path + ":" + std::to_string(lineno) + ": tip \"" + mr.id +
                            "\" exceeds " + std::to_string(kMaxTipLength) + " characters");
    }
    if (!seen_ids.insert(mr.id).second) {
      throw ValidationError(tips_path + ":" + std::to_string(lineno) +
                            ": duplicate document id \"" + mr.id + "\"");
    }
    if (corpus.venue_id.empty()) {
      corpus.venue_id = mr.venue_id;
    } else if (corpus.venue_id != mr.venue_id) {
      throw ValidationError(tips_path + ":" + std::to_string(lineno) + ": tip \"" +
                            mr.id + "\" belongs to venue \"" + mr.venue_id +
                            "\", corpus is \"" + corpus.venue_id + "\"");
    }
    mr.sentences = intern_sentences(mr.raw_text, pipeline, corpus.vocabulary);
    corpus.micro_reviews.push_back(std::move(mr));
  }
  return corpus;
}

UserPreferences load_preferences(const std::string& path,
                                 const PreprocessPipeline& pipeline) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open preferences file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ValidationError(path + ": malformed preferences JSON");
  }

  UserPreferences prefs;
  if (j.contains("user_id")) prefs.user_id = j["user_id"].get<std::string>();
  if (!j.contains("terms")) return prefs;

  std::unordered_map<std::string, double> best;
  std::vector<std::string> order;
  for (const auto& entry : j["terms"]) {
    std::string term = entry.at("term").get<std::string>();
    double weight = entry.at("weight").get<double>();
    if (!(weight > 0.0) || weight > 1.0) {
      throw ValidationError(path + ": preference weight for \"" + term +
                            "\" outside (0,1]");
    }
    auto tokens = tokenize(term);
    for (const auto& token : tokens) {
      if (pipeline.is_stopword(token)) continue;
      std::string stem = porter_stem(token);
      if (stem.empty() || pipeline.is_stopword(stem)) continue;
      auto it = best.find(stem);
      if (it == best.end()) {
        best.emplace(stem, weight);
        order.push_back(stem);
      } else if (weight > it->second) {
        it->second = weight;
      }
    }
  }
  prefs.terms.reserve(order.size());
  for (const auto& stem : order) prefs.terms.push_back({stem, best[stem]});
  return prefs;
}

namespace {

// Deterministic cross-platform draw: mt19937 output is pinned by the
// standard; the distribution classes are not, so reduce by hand.
std::uint32_t draw(std::mt19937& rng, std::uint32_t n) {
  return n == 0 ? 0 : rng() % n;
}

std::string synth_word(std::mt19937& rng) {
  static constexpr char kConsonants[] = "bcdfghjklmnprstvz";
  static constexpr char kVowels[] = "aeiou";
  std::size_t syllables = 2 + draw(rng, 2);
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w.push_back(kConsonants[draw(rng, sizeof(kConsonants) - 1)]);
    w.push_back(kVowels[draw(rng, sizeof(kVowels) - 1)]);
  }
  return w;
}

}  // namespace

Corpus generate_fixture(std::uint64_t seed, int n_reviews, int n_tips,
                        int vocab_size, const PreprocessPipeline& pipeline) {
  if (n_reviews <= 0 || n_tips <= 0 || vocab_size <= 0) {
    throw ValidationError("generate_fixture requires positive counts");
  }
  std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));

  std::vector<std::string> pool;
  std::unordered_set<std::string> used;
  while (pool.size() < static_cast<std::size_t>(vocab_size)) {
    std::string w = synth_word(rng);
    if (pipeline.is_stopword(w) || !used.insert(w).second) continue;
    pool.push_back(std::move(w));
  }

  // Words are grouped into topics; each document draws mostly from its own
  // topic with occasional global words, which keeps tip/review overlap high
  // inside a topic and low across topics.
  const std::uint32_t n_topics = 3 + draw(rng, 3);
  auto topic_word = [&](std::uint32_t topic) -> const std::string& {
    std::uint32_t per = static_cast<std::uint32_t>(pool.size()) / n_topics;
    if (per == 0 || draw(rng, 10) == 0) return pool[draw(rng, pool.size())];
    return pool[topic * per + draw(rng, per)];
  };

  std::ostringstream reviews_file, tips_file;
  std::vector<std::pair<std::uint32_t, std::vector<std::string>>> review_words;
  for (int i = 0; i < n_reviews; ++i) {
    std::uint32_t topic = draw(rng, n_topics);
    std::uint32_t n_sentences = 2 + draw(rng, 3);
    std::vector<std::string> words;
    std::string text;
    for (std::uint32_t s = 0; s < n_sentences; ++s) {
      std::uint32_t n_words = 3 + draw(rng, 4);
      for (std::uint32_t w = 0; w < n_words; ++w) {
        const std::string& word = topic_word(topic);
        words.push_back(word);
        if (!text.empty() && text.back() == '.') text += ' ';
        text += word;
        text += (w + 1 == n_words) ? "." : " ";
      }
    }
    review_words.emplace_back(topic, std::move(words));
    json line = {{"id", "r" + std::to_string(i + 1)},
                 {"venue_id", "synthetic"},
                 {"text", text}};
    reviews_file << line.dump() << "\n";
  }

  for (int i = 0; i < n_tips; ++i) {
    // Borrow words from one concrete review so every tip overlaps the
    // review side even after stemming.
    const auto& [topic, words] = review_words[draw(rng, review_words.size())];
    std::uint32_t n_words = 3 + draw(rng, 3);
    std::string text;
    for (std::uint32_t w = 0; w < n_words; ++w) {
      const std::string& word =
          (w == 0 || draw(rng, 3) != 0) ? words[draw(rng, words.size())] : topic_word(topic);
      text += word;
      text += (w + 1 == n_words) ? "." : " ";
    }
    json line = {{"id", "t" + std::to_string(i + 1)},
                 {"venue_id", "synthetic"},
                 {"text", text}};
    tips_file << line.dump() << "\n";
  }

  // Feed the generated lines through the regular loader so the fixture
  // behaves exactly like an ingested file pair.
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::string line;
  {
    std::istringstream rin(reviews_file.str());
    std::size_t lineno = 0;
    while (std::getline(rin, line)) {
      ++lineno;
      json j = parse_line(line, "<fixture-reviews>", lineno);
      Review r;
      r.id = j["id"].get<std::string>();
      r.venue_id = j["venue_id"].get<std::string>();
      r.raw_text = j["text"].get<std::string>();
      corpus.venue_id = r.venue_id;
      r.sentences = intern_sentences(r.raw_text, pipeline, corpus.vocabulary);
      corpus.reviews.push_back(std::move(r));
    }
    std::istringstream tin(tips_file.str());
    lineno = 0;
    while (std::getline(tin, line)) {
      ++lineno;
      json j = parse_line(line, "<fixture-tips>", lineno);
      MicroReview mr;
      mr.id = j["id"].get<std::string>();
      mr.venue_id = j["venue_id"].get<std::string>();
      mr.raw_text = j["text"].get<std::string>();
      if (mr.raw_text.size() > kMaxTipLength) mr.raw_text.resize(kMaxTipLength);
      mr.sentences = intern_sentences(mr.raw_text, pipeline, corpus.vocabulary);
      corpus.micro_reviews.push_back(std::move(mr));
    }
  }
  return corpus;
}

namespace {

json sentence_to_json(const Sentence& s) {
  return json{{"index", s.index},
              {"tokens", s.tokens},
              {"span", {s.raw_begin, s.raw_end}}};
}

Sentence sentence_from_json(const json& j) {
  Sentence s;
  s.index = j.at("index").get<std::uint32_t>();
  s.tokens = j.at("tokens").get<std::vector<TermId>>();
  s.raw_begin = j.at("span").at(0).get<std::size_t>();
  s.raw_end = j.at("span").at(1).get<std::size_t>();
  return s;
}

}  // namespace

std::string corpus_to_json_string(const Corpus& corpus) {
  json j;
  j["venue_id"] = corpus.venue_id;
  j["vocabulary"] = corpus.vocabulary.terms();
  json reviews = json::array();
  for (const Review& r : corpus.reviews) {
    json jr = {{"id", r.id}, {"venue_id", r.venue_id}, {"text", r.raw_text}};
    if (!r.user_id.empty()) jr["user_id"] = r.user_id;
    if (r.rating) jr["rating"] = *r.rating;
    json sentences = json::array();
    for (const Sentence& s : r.sentences) sentences.push_back(sentence_to_json(s));
    jr["sentences"] = std::move(sentences);
    reviews.push_back(std::move(jr));
  }
  j["reviews"] = std::move(reviews);
  json tips = json::array();
  for (const MicroReview& mr : corpus.micro_reviews) {
    json jt = {{"id", mr.id}, {"venue_id", mr.venue_id}, {"text", mr.raw_text}};
    json sentences = json::array();
    for (const Sentence& s : mr.sentences) sentences.push_back(sentence_to_json(s));
    jt["sentences"] = std::move(sentences);
    tips.push_back(std::move(jt));
  }
  j["micro_reviews"] = std::move(tips);
  return j.dump(2);
}

Corpus corpus_from_json_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ValidationError("malformed corpus cache JSON");
  }
  Corpus corpus;
  corpus.venue_id = j.at("venue_id").get<std::string>();
  for (const auto& term : j.at("vocabulary")) {
    corpus.vocabulary.intern(term.get<std::string>());
  }
  for (const auto& jr : j.at("reviews")) {
    Review r;
    r.id = jr.at("id").get<std::string>();
    r.venue_id = jr.at("venue_id").get<std::string>();
    r.raw_text = jr.at("text").get<std::string>();
    if (jr.contains("user_id")) r.user_id = jr["user_id"].get<std::string>();
    if (jr.contains("rating")) r.rating = jr["rating"].get<double>();
    for (const auto& js : jr.at("sentences")) r.sentences.push_back(sentence_from_json(js));
    corpus.reviews.push_back(std::move(r));
  }
  for (const auto& jt : j.at("micro_reviews")) {
    MicroReview mr;
    mr.id = jt.at("id").get<std::string>();
    mr.venue_id = jt.at("venue_id").get<std::string>();
    mr.raw_text = jt.at("text").get<std::string>();
    for (const auto& js : jt.at("sentences")) mr.sentences.push_back(sentence_from_json(js));
    corpus.micro_reviews.push_back(std::move(mr));
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write corpus cache: " + path);
  out << corpus_to_json_string(corpus) << "\n";
}

Corpus load_corpus_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus cache: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return corpus_from_json_string(buf.str());
}

bool structurally_equal(const Corpus& a, const Corpus& b) {
  auto sentences_equal = [](const std::vector<Sentence>& x, const std::vector<Sentence>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].index != y[i].index || x[i].tokens != y[i].tokens ||
          x[i].raw_begin != y[i].raw_begin || x[i].raw_end != y[i].raw_end)
        return false;
    }
    return true;
  };
  if (a.venue_id != b.venue_id || a.vocabulary.terms() != b.vocabulary.terms() ||
      a.reviews.size() != b.reviews.size() ||
      a.micro_reviews.size() != b.micro_reviews.size())
    return false;
  for (std::size_t i = 0; i < a.reviews.size(); ++i) {
    const Review& x = a.reviews[i];
    const Review& y = b.reviews[i];
    if (x.id != y.id || x.venue_id != y.venue_id || x.user_id != y.user_id ||
        x.raw_text != y.raw_text || x.rating != y.rating ||
        !sentences_equal(x.sentences, y.sentences))
      return false;
  }
  for (std::size_t i = 0; i < a.micro_reviews.size(); ++i) {
    const MicroReview& x = a.micro_reviews[i];
    const MicroReview& y = b.micro_reviews[i];
    if (x.id != y.id || x.venue_id != y.venue_id || x.raw_text != y.raw_text ||
        !sentences_equal(x.sentences, y.sentences))
      return false;
  }
  return true;
}

}  // namespace tipcover
