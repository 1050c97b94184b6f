// Command line front end: ingest -> select-tips -> select-reviews -> evaluate.
// Every command echoes its effective configuration into the report so runs
// are reproducible from the artifacts alone.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tipcover/config.hpp"
#include "tipcover/corpus.hpp"
#include "tipcover/coverage.hpp"
#include "tipcover/errors.hpp"
#include "tipcover/evaluation.hpp"
#include "tipcover/indexing.hpp"
#include "tipcover/kernels.hpp"
#include "tipcover/resources.hpp"
#include "tipcover/selection.hpp"
#include "tipcover/similarity.hpp"

namespace {

using nlohmann::json;
using namespace tipcover;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct CommandState {
  SelectionConfig cfg;
  std::string config_file;
  std::string stoplist = default_stoplist_path();
  std::string lexicon_dir = resource_dir() + "/lexicon";
  std::string categories_file;
};

// Tracks which config flags the user passed so that file values only fill
// the gaps: CLI flags > config file > built-in defaults.
struct ConfigFlags {
  CLI::Option* alpha = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* budget = nullptr;
  CLI::Option* t = nullptr;
  CLI::Option* match_threshold = nullptr;
  CLI::Option* review_budget = nullptr;
  CLI::Option* w_syn = nullptr;
  CLI::Option* w_sem = nullptr;
  CLI::Option* w_sent = nullptr;
  CLI::Option* epsilon = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* jobs = nullptr;
};

ConfigFlags add_config_flags(CLI::App* cmd, CommandState& state) {
  ConfigFlags flags;
  cmd->add_option("--config", state.config_file, "key=value config file");
  flags.alpha = cmd->add_option("--alpha", state.cfg.alpha, "efficiency floor");
  flags.beta = cmd->add_option("--beta", state.cfg.beta, "cost mix");
  flags.budget = cmd->add_option("--budget", state.cfg.tip_budget, "tip budget T");
  flags.t = cmd->add_option("--t", state.cfg.match_count, "match count threshold t");
  flags.match_threshold = cmd->add_option("--match-threshold", state.cfg.match_threshold,
                                          "merged similarity threshold");
  flags.review_budget =
      cmd->add_option("--review-budget", state.cfg.review_budget, "oracle budget K");
  flags.w_syn = cmd->add_option("--w-syn", state.cfg.w_syn, "syntactic merge weight");
  flags.w_sem = cmd->add_option("--w-sem", state.cfg.w_sem, "semantic merge weight");
  flags.w_sent = cmd->add_option("--w-sent", state.cfg.w_sent, "sentiment merge weight");
  flags.epsilon = cmd->add_option("--epsilon", state.cfg.epsilon, "smoothing epsilon");
  flags.seed = cmd->add_option("--seed", state.cfg.seed, "rng seed");
  flags.jobs = cmd->add_option("--jobs", state.cfg.jobs, "worker threads (0 = default)");
  return flags;
}

void finalize_config(CommandState& state, const ConfigFlags& flags) {
  if (!state.config_file.empty()) {
    SelectionConfig from_file = load_config_file(state.config_file, SelectionConfig{});
    auto keep = [](CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };
    if (!keep(flags.alpha)) state.cfg.alpha = from_file.alpha;
    if (!keep(flags.beta)) state.cfg.beta = from_file.beta;
    if (!keep(flags.budget)) state.cfg.tip_budget = from_file.tip_budget;
    if (!keep(flags.t)) state.cfg.match_count = from_file.match_count;
    if (!keep(flags.match_threshold)) state.cfg.match_threshold = from_file.match_threshold;
    if (!keep(flags.review_budget)) state.cfg.review_budget = from_file.review_budget;
    if (!keep(flags.w_syn)) state.cfg.w_syn = from_file.w_syn;
    if (!keep(flags.w_sem)) state.cfg.w_sem = from_file.w_sem;
    if (!keep(flags.w_sent)) state.cfg.w_sent = from_file.w_sent;
    if (!keep(flags.epsilon)) state.cfg.epsilon = from_file.epsilon;
    if (!keep(flags.seed)) state.cfg.seed = from_file.seed;
    if (!keep(flags.jobs)) state.cfg.jobs = from_file.jobs;
  }
  state.cfg.validate();
#ifdef _OPENMP
  if (state.cfg.jobs > 0) omp_set_num_threads(state.cfg.jobs);
#endif
}

// jobs is deliberately absent: it only picks the worker count, and reports
// must come out byte-identical for any value of it.
json config_echo(const SelectionConfig& cfg) {
  return json{{"alpha", cfg.alpha},
              {"beta", cfg.beta},
              {"budget", cfg.tip_budget},
              {"t", cfg.match_count},
              {"match_threshold", cfg.match_threshold},
              {"review_budget", cfg.review_budget},
              {"w_syn", cfg.w_syn},
              {"w_sem", cfg.w_sem},
              {"w_sent", cfg.w_sent},
              {"epsilon", cfg.epsilon},
              {"seed", cfg.seed}};
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write report: " + path);
  out << j.dump(2) << "\n";
}

PolarityLexicon load_lexicon(const CommandState& state) {
  return PolarityLexicon::from_files(state.lexicon_dir + "/positive.txt",
                                     state.lexicon_dir + "/negative.txt");
}

TipSelection read_tip_selection(const std::string& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open tip selection: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.contains("selected_tips")) {
    throw ValidationError(path + ": not a tip selection report");
  }
  TipSelection tips;
  for (const auto& id : j["selected_tips"]) {
    const std::string tip_id = id.get<std::string>();
    bool found = false;
    for (std::size_t i = 0; i < corpus.micro_reviews.size(); ++i) {
      if (corpus.micro_reviews[i].id == tip_id) {
        tips.tip_indices.push_back(i);
        tips.tip_ids.push_back(tip_id);
        found = true;
        break;
      }
    }
    if (!found) {
      throw ValidationError(path + ": tip \"" + tip_id + "\" not in corpus");
    }
  }
  return tips;
}

UserPreferences resolve_user_prefs(const CommandState& state, const Corpus& corpus,
                                   const Index& index, const std::string& prefs_file,
                                   const std::string& profile_user, int top_k,
                                   const PreprocessPipeline& pipeline) {
  if (!prefs_file.empty()) return load_preferences(prefs_file, pipeline);
  if (!profile_user.empty()) {
    CategorySeeds categories;
    if (!state.categories_file.empty()) {
      categories = load_categories(state.categories_file, pipeline);
    }
    UserProfile profile = build_profile(
        profile_user, reviews_of_user(corpus, profile_user), categories, index, top_k);
    return profile_to_preferences(profile);
  }
  return UserPreferences{};
}

json tip_selection_report(const CommandState& state, const TipSelection& selection,
                          const CoverageMatrix& matrix) {
  json steps = json::array();
  for (const TipSelectionStep& step : selection.trace) {
    steps.push_back(json{{"chosen_id", step.chosen_id},
                         {"gain", step.gain},
                         {"cost", step.cost},
                         {"cov_after", step.cov_after},
                         {"eff_avg_after", step.eff_avg_after}});
  }
  json report;
  report["config"] = config_echo(state.cfg);
  report["selected_tips"] = selection.tip_ids;
  report["steps"] = std::move(steps);
  report["coverage"] = cov_set(matrix, selection.tip_indices);
  if (!selection.empty()) {
    report["eff_avg"] = eff_avg(matrix, selection.tip_indices);
  }
  return report;
}

json review_selection_report(const CommandState& state, const ReviewSelection& sel) {
  json selected = json::array();
  for (const ReviewMatch& m : sel.selected) {
    selected.push_back(json{{"id", m.review_id},
                            {"match_count", m.match_count},
                            {"coverage", m.coverage},
                            {"efficiency", m.efficiency},
                            {"score", m.merged},
                            {"merged_scores_per_tip", m.merged_per_tip}});
  }
  json report;
  report["config"] = config_echo(state.cfg);
  report["selected"] = std::move(selected);
  report["rejected_count"] = sel.rejected_count;
  return report;
}

int cmd_ingest(const CommandState& state, const std::string& reviews_file,
               const std::string& tips_file, const std::string& out_file) {
  PreprocessPipeline pipeline = PreprocessPipeline::from_file(state.stoplist);
  Corpus corpus = load_corpus(reviews_file, tips_file, pipeline);
  save_corpus(corpus, out_file);
  json summary;
  summary["config"] = config_echo(state.cfg);
  summary["venue_id"] = corpus.venue_id;
  summary["reviews"] = corpus.reviews.size();
  summary["micro_reviews"] = corpus.micro_reviews.size();
  summary["vocabulary"] = corpus.vocabulary.size();
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_select_tips(const CommandState& state, const std::string& corpus_file,
                    const std::string& out_file) {
  Corpus corpus = load_corpus_cache(corpus_file);
  Index index = build_index(corpus, state.cfg.epsilon, load_lexicon(state));
  CoverageMatrix matrix = build_coverage_matrix(index, state.cfg);
  TipSelection selection =
      select_micro_reviews(matrix, state.cfg.tip_budget, state.cfg.alpha, state.cfg.beta);
  json report = tip_selection_report(state, selection, matrix);
  if (selection.empty()) {
    const char* warning = "no tip satisfies the efficiency constraint; selection is empty";
    report["warning"] = warning;
    std::cerr << "warning: " << warning << "\n";
  }
  write_json(report, out_file);
  std::cout << "selected " << selection.size() << " tips -> " << out_file << "\n";
  return kExitOk;
}

int cmd_select_reviews(const CommandState& state, const std::string& corpus_file,
                       const std::string& tips_file, const std::string& prefs_file,
                       const std::string& profile_user, int top_k,
                       const std::string& out_file) {
  PreprocessPipeline pipeline = PreprocessPipeline::from_file(state.stoplist);
  Corpus corpus = load_corpus_cache(corpus_file);
  Index index = build_index(corpus, state.cfg.epsilon, load_lexicon(state));
  TipSelection tips = read_tip_selection(tips_file, corpus);
  UserPreferences prefs =
      resolve_user_prefs(state, corpus, index, prefs_file, profile_user, top_k, pipeline);
  ReviewSelection sel = select_reviews(index, tips, prefs, state.cfg);
  write_json(review_selection_report(state, sel), out_file);
  std::cout << "selected " << sel.selected.size() << " of " << sel.all.size()
            << " reviews -> " << out_file << "\n";
  return kExitOk;
}

std::vector<double> parse_sweep(const std::string& arg) {
  std::vector<double> thresholds;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      thresholds.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("bad sweep threshold: \"" + item + "\"");
    }
  }
  return thresholds;
}

int cmd_evaluate(const CommandState& state, const std::string& corpus_file,
                 const std::string& tips_file, const std::string& prefs_file,
                 const std::string& profile_user, int top_k, const std::string& sweep_arg,
                 const std::string& out_file, const std::string& table_file) {
  PreprocessPipeline pipeline = PreprocessPipeline::from_file(state.stoplist);
  Corpus corpus = load_corpus_cache(corpus_file);
  Index index = build_index(corpus, state.cfg.epsilon, load_lexicon(state));

  CoverageMatrix matrix = build_coverage_matrix(index, state.cfg);
  TipSelection tips;
  if (!tips_file.empty()) {
    tips = read_tip_selection(tips_file, corpus);
  } else {
    tips = select_micro_reviews(matrix, state.cfg.tip_budget, state.cfg.alpha,
                                state.cfg.beta);
  }
  UserPreferences prefs =
      resolve_user_prefs(state, corpus, index, prefs_file, profile_user, top_k, pipeline);

  ReviewSelection sel = select_reviews(index, tips, prefs, state.cfg);

  EvaluationReport report;
  for (const ReviewMatch& m : sel.all) {
    report.rows.push_back({m.review_id, m.selected, m.merged});
  }
  report.accuracy =
      sel.all.empty() ? 0.0
                      : static_cast<double>(sel.selected.size()) / sel.all.size();

  auto candidates = prefix_candidate_sets(sel);
  MaxPerCoverageChoice choice = max_per_coverage_select(candidates, state.cfg.alpha);
  report.set_table = choice.table;
  report.chosen_set_id = choice.chosen_id;
  report.chosen_review_ids = candidates[choice.chosen_index].review_ids;

  if (!sweep_arg.empty()) {
    report.sweep = threshold_sweep(index, tips, prefs, state.cfg, parse_sweep(sweep_arg));
  }

  json j;
  j["config"] = config_echo(state.cfg);
  j["accuracy"] = report.accuracy;
  j["chosen_set"] = report.chosen_set_id;
  j["chosen_review_ids"] = report.chosen_review_ids;
  // greedy-vs-optimal coverage at the review budget, while the exhaustive
  // oracle is still tractable
  if (matrix.tip_count() <= 20 && !tips.empty()) {
    BruteForceResult opt = brute_force_max_coverage(matrix, state.cfg.review_budget);
    json approx;
    approx["budget"] = state.cfg.review_budget;
    approx["selected_coverage"] = cov_set(matrix, tips.tip_indices);
    approx["optimal_coverage"] = opt.coverage;
    approx["optimal_tips"] = opt.tip_ids;
    if (opt.coverage > 0.0) {
      approx["satisfied"] =
          approximation_check(cov_set(matrix, tips.tip_indices), opt.coverage);
    }
    j["approximation"] = std::move(approx);
  }
  json sets = json::array();
  for (const SetEvaluation& e : report.set_table) {
    sets.push_back(json{{"id", e.id},
                        {"size", e.size},
                        {"per_gain", e.gain},
                        {"per_cost", e.cost},
                        {"per_eff_min", e.eff_min},
                        {"feasible", e.feasible}});
  }
  j["sets"] = std::move(sets);
  json sweep = json::array();
  for (const SweepRow& row : report.sweep) {
    sweep.push_back(json{{"threshold", row.threshold},
                         {"selected", row.selected_count},
                         {"accuracy", row.accuracy}});
  }
  j["sweep"] = std::move(sweep);
  json rows = json::array();
  for (const ReviewScoreRow& row : report.rows) {
    rows.push_back(json{{"id", row.id}, {"selected", row.selected}, {"score", row.score}});
  }
  j["reviews"] = std::move(rows);
  write_json(j, out_file);

  const std::string table = render_score_table(report.rows, state.cfg.match_threshold);
  if (!table_file.empty()) {
    std::ofstream out(table_file, std::ios::binary);
    if (!out) throw ValidationError("cannot write table: " + table_file);
    out << table;
  } else {
    std::cout << table;
  }
  std::cout << "chosen set " << report.chosen_set_id << " -> " << out_file << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"personalized review selection driven by micro-reviews"};
  app.require_subcommand(1);

  CommandState state;

  auto* ingest = app.add_subcommand("ingest", "validate and cache a corpus");
  std::string reviews_file, tips_file, out_file;
  ingest->add_option("--reviews", reviews_file, "reviews JSONL")->required();
  ingest->add_option("--tips", tips_file, "tips JSONL")->required();
  ingest->add_option("--out", out_file, "corpus cache output")->required();
  ingest->add_option("--stoplist", state.stoplist, "stopword list");
  ConfigFlags ingest_flags = add_config_flags(ingest, state);

  auto* select_tips = app.add_subcommand("select-tips", "greedy tip subset selection");
  std::string corpus_file, tips_out;
  select_tips->add_option("--corpus", corpus_file, "corpus cache")->required();
  select_tips->add_option("--out", tips_out, "selection trace output")->required();
  select_tips->add_option("--lexicon", state.lexicon_dir, "lexicon directory");
  ConfigFlags tips_flags = add_config_flags(select_tips, state);

  auto* select_reviews =
      app.add_subcommand("select-reviews", "personalized review selection");
  std::string sr_corpus, sr_tips, sr_prefs, sr_user, sr_out;
  int top_k = 5;
  select_reviews->add_option("--corpus", sr_corpus, "corpus cache")->required();
  select_reviews->add_option("--tips", sr_tips, "prior tip selection")->required();
  select_reviews->add_option("--prefs", sr_prefs, "preferences JSON");
  select_reviews->add_option("--profile-user", sr_user,
                             "derive preferences from this user's reviews");
  select_reviews->add_option("--top-k", top_k, "profile keyword count");
  select_reviews->add_option("--categories", state.categories_file, "categories JSON");
  select_reviews->add_option("--stoplist", state.stoplist, "stopword list");
  select_reviews->add_option("--lexicon", state.lexicon_dir, "lexicon directory");
  select_reviews->add_option("--out", sr_out, "selection report output")->required();
  ConfigFlags reviews_flags = add_config_flags(select_reviews, state);

  auto* evaluate = app.add_subcommand("evaluate", "score candidate review sets");
  std::string ev_corpus, ev_tips, ev_prefs, ev_user, ev_sweep, ev_out, ev_table;
  int ev_top_k = 5;
  evaluate->add_option("--corpus", ev_corpus, "corpus cache")->required();
  evaluate->add_option("--tips", ev_tips, "prior tip selection (computed when absent)");
  evaluate->add_option("--prefs", ev_prefs, "preferences JSON");
  evaluate->add_option("--profile-user", ev_user,
                       "derive preferences from this user's reviews");
  evaluate->add_option("--top-k", ev_top_k, "profile keyword count");
  evaluate->add_option("--categories", state.categories_file, "categories JSON");
  evaluate->add_option("--stoplist", state.stoplist, "stopword list");
  evaluate->add_option("--lexicon", state.lexicon_dir, "lexicon directory");
  evaluate->add_option("--sweep", ev_sweep, "comma list of ascending thresholds");
  evaluate->add_option("--out", ev_out, "evaluation report output")->required();
  evaluate->add_option("--table", ev_table, "plain-text score table output");
  ConfigFlags eval_flags = add_config_flags(evaluate, state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      finalize_config(state, ingest_flags);
      return cmd_ingest(state, reviews_file, tips_file, out_file);
    }
    if (select_tips->parsed()) {
      finalize_config(state, tips_flags);
      return cmd_select_tips(state, corpus_file, tips_out);
    }
    if (select_reviews->parsed()) {
      finalize_config(state, reviews_flags);
      return cmd_select_reviews(state, sr_corpus, sr_tips, sr_prefs, sr_user, top_k,
                                sr_out);
    }
    if (evaluate->parsed()) {
      finalize_config(state, eval_flags);
      return cmd_evaluate(state, ev_corpus, ev_tips, ev_prefs, ev_user, ev_top_k,
                          ev_sweep, ev_out, ev_table);
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
