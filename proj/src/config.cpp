#include "tipcover/config.hpp"

#include <fstream>
#include <sstream>

#include "tipcover/errors.hpp"

namespace tipcover {

void SelectionConfig::validate() const {
  if (alpha < 0.0 || alpha > 1.0) throw ValidationError("alpha must lie in [0,1]");
  if (beta < 0.0 || beta > 1.0) throw ValidationError("beta must lie in [0,1]");
  if (tip_budget < 1) throw ValidationError("tip budget must be at least 1");
  if (match_count < 1) throw ValidationError("match count threshold must be at least 1");
  if (match_threshold < 0.0 || match_threshold > 1.0) {
    throw ValidationError("match threshold must lie in [0,1]");
  }
  if (review_budget < 1) throw ValidationError("review budget must be at least 1");
  if (w_syn < 0.0 || w_sem < 0.0 || w_sent < 0.0) {
    throw ValidationError("merge weights must be nonnegative");
  }
  if (w_syn + w_sem + w_sent <= 0.0) {
    throw ValidationError("merge weights must not all be zero");
  }
  if (!(epsilon > 0.0)) throw ValidationError("smoothing epsilon must be positive");
  if (jobs < 0) throw ValidationError("jobs must be nonnegative");
}

SelectionConfig load_config_file(const std::string& path, SelectionConfig base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "alpha") base.alpha = std::stod(value);
      else if (key == "beta") base.beta = std::stod(value);
      else if (key == "budget") base.tip_budget = std::stoi(value);
      else if (key == "t") base.match_count = std::stoi(value);
      else if (key == "match_threshold") base.match_threshold = std::stod(value);
      else if (key == "review_budget") base.review_budget = std::stoi(value);
      else if (key == "w_syn") base.w_syn = std::stod(value);
      else if (key == "w_sem") base.w_sem = std::stod(value);
      else if (key == "w_sent") base.w_sent = std::stod(value);
      else if (key == "epsilon") base.epsilon = std::stod(value);
      else if (key == "seed") base.seed = std::stoull(value);
      else if (key == "jobs") base.jobs = std::stoi(value);
      else {
        throw ValidationError(path + ":" + std::to_string(lineno) +
                              ": unknown config key \"" + key + "\"");
      }
    } catch (const std::invalid_argument&) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": bad value for \"" + key + "\"");
    } catch (const std::out_of_range&) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": bad value for \"" + key + "\"");
    }
  }
  return base;
}

}  // namespace tipcover
