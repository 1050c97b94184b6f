#pragma once

#include <cstdint>
#include <string>

namespace tipcover {

// Knobs shared by tip selection, review selection and evaluation.
//
//   alpha            efficiency floor for a tip set / feasibility bound for
//                    evaluated review sets
//   beta             mix between inefficiency cost and uniform cost
//   tip_budget       maximum number of tips to select (T)
//   match_count      minimum number of selected tips a review must cover (t)
//   match_threshold  merged-similarity threshold for a binary match
//   review_budget    subset-size bound used by the exhaustive coverage oracle (K)
struct SelectionConfig {
  double alpha = 0.3;
  double beta = 0.5;
  int tip_budget = 5;
  int match_count = 1;
  double match_threshold = 0.5;
  int review_budget = 5;
  double w_syn = 1.0;
  double w_sem = 1.0;
  double w_sent = 1.0;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 = library default thread count

  // Throws ValidationError on any out-of-range field.
  void validate() const;
};

// Parses a `key=value` config file (one pair per line, '#' comments allowed)
// over `base` and returns the result. Unknown keys are errors.
SelectionConfig load_config_file(const std::string& path, SelectionConfig base);

}  // namespace tipcover
