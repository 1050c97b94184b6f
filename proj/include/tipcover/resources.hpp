#pragma once

#include <string>

namespace tipcover {

// Bundled data files; every path can be overridden from the CLI.
inline std::string resource_dir() { return TIPCOVER_RESOURCE_DIR; }
inline std::string default_stoplist_path() {
  return resource_dir() + "/stopwords_en.txt";
}
inline std::string default_positive_lexicon_path() {
  return resource_dir() + "/lexicon/positive.txt";
}
inline std::string default_negative_lexicon_path() {
  return resource_dir() + "/lexicon/negative.txt";
}

}  // namespace tipcover
