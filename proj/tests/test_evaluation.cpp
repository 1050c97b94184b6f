#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tipcover/corpus.hpp"
#include "tipcover/coverage.hpp"
#include "tipcover/errors.hpp"
#include "tipcover/evaluation.hpp"
#include "tipcover/resources.hpp"
#include "tipcover/selection.hpp"

using namespace tipcover;

namespace {

PreprocessPipeline pipeline() {
  return PreprocessPipeline::from_file(default_stoplist_path());
}

PolarityLexicon lexicon() {
  return PolarityLexicon::from_files(default_positive_lexicon_path(),
                                     default_negative_lexicon_path());
}

Corpus fixture_corpus() {
  return load_corpus(resource_dir() + "/fixtures/reviews.jsonl",
                     resource_dir() + "/fixtures/tips.jsonl", pipeline());
}

CoverageMatrix bench_instance() {
  return oracles::make_matrix(
      {
          {1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
          {0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
          {0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0},
          {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1},
          {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1},
          {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
          {1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0},
      },
      {2, 2, 4, 1, 3, 2, 1, 4}, {2, 1, 3, 1, 3, 1, 0, 2});
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("per-set scores on worked example values") {
  ScoredSet s{"S3", {"a", "b", "c"}, {0.909, 1.0, 0.909}};
  CHECK(per_eff_min(s) == doctest::Approx(0.909));
  CHECK(per_gain(s) == doctest::Approx((0.909 + 1.0 + 0.909) / 3.0).epsilon(1e-12));
  CHECK(per_gain(s) == doctest::Approx(0.9393).epsilon(1e-3));
  CHECK(per_cost(s) == doctest::Approx(1.0 - 0.909).epsilon(1e-12));
  CHECK(per_cost(s) == doctest::Approx(0.0909).epsilon(1e-2));

  ScoredSet single{"S1", {"a"}, {0.7}};
  CHECK(per_eff_min(single) == doctest::Approx(0.7));
  CHECK(per_gain(single) == doctest::Approx(0.7));

  ScoredSet ones{"S2", {"a", "b"}, {1.0, 1.0}};
  CHECK(per_cost(ones) == 0.0);
  ScoredSet zero_min{"S2", {"a", "b"}, {0.0, 1.0}};
  CHECK(per_cost(zero_min) == 1.0);
  CHECK(per_gain(zero_min) == doctest::Approx(0.5));

  ScoredSet empty{"S0", {}, {}};
  CHECK_THROWS_AS(per_eff_min(empty), ValidationError);
  CHECK_THROWS_AS(per_gain(empty), ValidationError);
  CHECK_THROWS_AS(per_cost(empty), ValidationError);
}

TEST_CASE("max_per_coverage_select picks the best feasible ratio") {
  ScoredSet only{"S1", {"a"}, {0.8}};
  MaxPerCoverageChoice single = max_per_coverage_select({only}, 0.5);
  CHECK(single.chosen_id == "S1");
  REQUIRE(single.table.size() == 1);
  CHECK(single.table[0].feasible);

  // ratio 0.9/0.1 = 9 beats 0.79/0.4 = 1.975, regardless of input order
  ScoredSet high{"A", {"x"}, {0.9}};
  ScoredSet low{"B", {"x", "y"}, {0.98, 0.6}};
  CHECK(max_per_coverage_select({low, high}, 0.5).chosen_id == "A");
  CHECK(max_per_coverage_select({high, low}, 0.5).chosen_id == "A");

  // an infeasible set is skipped even when its ratio is higher
  ScoredSet infeasible{"C",
                       {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"},
                       {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.899}};
  ScoredSet feasible{"D", {"x"}, {0.9}};  // ratio 9 < C's 9.8
  MaxPerCoverageChoice filtered = max_per_coverage_select({infeasible, feasible}, 0.9);
  CHECK(filtered.chosen_id == "D");
  CHECK_FALSE(filtered.table[0].feasible);
  CHECK(filtered.table[0].gain / filtered.table[0].cost >
        filtered.table[1].gain / filtered.table[1].cost);

  ScoredSet weak{"B", {"x"}, {0.6}};
  CHECK_THROWS_WITH_AS(max_per_coverage_select({weak}, 0.95), doctest::Contains("0.95"),
                       InfeasibleError);
  CHECK_THROWS_AS(max_per_coverage_select({}, 0.5), ValidationError);
}

TEST_CASE("zero-cost sets outrank every finite ratio") {
  ScoredSet perfect{"P", {"x"}, {1.0}};  // cost 0
  ScoredSet strong{"S", {"x", "y"}, {0.99, 0.99}};
  MaxPerCoverageChoice choice = max_per_coverage_select({strong, perfect}, 0.5);
  CHECK(choice.chosen_id == "P");

  // among zero-cost sets: larger gain, then smaller size, then id
  ScoredSet p1{"P1", {"x", "y"}, {1.0, 1.0}};  // gain 1.0, size 2
  ScoredSet p2{"P2", {"x"}, {1.0}};            // gain 1.0, size 1 -> wins
  CHECK(max_per_coverage_select({p1, p2}, 0.0).chosen_id == "P2");
  ScoredSet p3{"Q", {"x"}, {1.0}};
  CHECK(max_per_coverage_select({p3, p2}, 0.0).chosen_id == "P2");  // id tie-break
}

TEST_CASE("brute force coverage agrees with an independent enumeration") {
  CoverageMatrix m = bench_instance();
  for (int k : {1, 2, 3, 4}) {
    BruteForceResult got = brute_force_max_coverage(m, k);
    auto [coverage, ids] = oracles::exhaustive_best_coverage(m, k);
    CHECK(got.coverage == doctest::Approx(coverage));
    CHECK(got.tip_ids == ids);
  }
}

TEST_CASE("brute force edge cases") {
  CoverageMatrix m = oracles::make_matrix({
      {1, 0, 0},
      {1, 1, 0},
      {0, 0, 1},
  });
  // budget beyond the tip count covers everything coverable
  BruteForceResult all = brute_force_max_coverage(m, 10);
  CHECK(all.coverage == 1.0);

  // k = 1 reduces to the best single row
  BruteForceResult one = brute_force_max_coverage(m, 1);
  CHECK(one.coverage == doctest::Approx(2.0 / 3.0));
  CHECK(one.tip_ids == std::vector<std::string>{"t02"});

  CHECK_THROWS_AS(brute_force_max_coverage(m, 0), ValidationError);

  std::vector<std::vector<int>> big(21, std::vector<int>(2, 1));
  CoverageMatrix too_big = oracles::make_matrix(big);
  CHECK_THROWS_AS(brute_force_max_coverage(too_big, 2), ValidationError);
}

TEST_CASE("approximation check uses 1 - 1/e") {
  CHECK(approximation_check(0.8, 0.8));
  CHECK(approximation_check(0.64, 1.0));
  CHECK_FALSE(approximation_check(0.5, 1.0));
  CHECK(approximation_check(0.6322, 1.0));
  CHECK_FALSE(approximation_check(0.632, 1.0));
}

TEST_CASE("threshold sweep is monotone with the documented boundaries") {
  Corpus c = fixture_corpus();
  Index idx = build_index(c, 0.1, lexicon());
  SelectionConfig cfg;
  CoverageMatrix m = build_coverage_matrix(idx, cfg);
  TipSelection tips = select_micro_reviews(m, cfg.tip_budget, cfg.alpha, cfg.beta);
  REQUIRE_FALSE(tips.empty());

  auto rows = threshold_sweep(idx, tips, {}, cfg, {0.0, 1.0});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].selected_count == c.reviews.size());
  CHECK(rows[0].accuracy == 1.0);
  CHECK(rows[1].selected_count == 0);
  CHECK(rows[1].accuracy == 0.0);

  auto sweep = threshold_sweep(idx, tips, {}, cfg, {0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].selected_count <= sweep[i - 1].selected_count);
  }

  // counts recomputed through the independent recount at each threshold
  for (const SweepRow& row : sweep) {
    auto counts = oracles::recount_matches(idx, tips.tip_indices, {}, row.threshold);
    std::size_t expected = 0;
    for (const auto& [id, count] : counts) {
      if (count >= cfg.match_count) ++expected;
    }
    CHECK(row.selected_count == expected);
  }
}

TEST_CASE("sweep thresholds must be ascending and in range") {
  Corpus c = fixture_corpus();
  Index idx = build_index(c, 0.1, lexicon());
  SelectionConfig cfg;
  CoverageMatrix m = build_coverage_matrix(idx, cfg);
  TipSelection tips = select_micro_reviews(m, cfg.tip_budget, cfg.alpha, cfg.beta);
  CHECK_THROWS_AS(threshold_sweep(idx, tips, {}, cfg, {0.7, 0.5}), ValidationError);
  CHECK_THROWS_AS(threshold_sweep(idx, tips, {}, cfg, {-0.1, 0.5}), ValidationError);
  CHECK_THROWS_AS(threshold_sweep(idx, tips, {}, cfg, {0.5, 1.2}), ValidationError);
}

TEST_CASE("prefix candidate sets mirror the ranked selection") {
  Corpus c = fixture_corpus();
  Index idx = build_index(c, 0.1, lexicon());
  SelectionConfig cfg;
  CoverageMatrix m = build_coverage_matrix(idx, cfg);
  TipSelection tips = select_micro_reviews(m, cfg.tip_budget, cfg.alpha, cfg.beta);
  ReviewSelection sel = select_reviews(idx, tips, {}, cfg);
  REQUIRE_FALSE(sel.selected.empty());

  auto sets = prefix_candidate_sets(sel);
  REQUIRE(sets.size() == sel.selected.size());
  for (std::size_t n = 0; n < sets.size(); ++n) {
    CHECK(sets[n].id == "S" + std::to_string(n + 1));
    REQUIRE(sets[n].size() == n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      CHECK(sets[n].review_ids[i] == sel.selected[i].review_id);
      CHECK(sets[n].scores[i] == sel.selected[i].merged);
    }
  }

  MaxPerCoverageChoice choice = max_per_coverage_select(sets, 0.0);
  CHECK(choice.table.size() == sets.size());
  // the report never chooses an infeasible set
  CHECK(choice.table[choice.chosen_index].feasible);
}

TEST_CASE("score table renders one row per review plus the average") {
  std::vector<ReviewScoreRow> rows{{"1", true, 0.909},
                                   {"2", false, 0.5},
                                   {"3", true, 1.0}};
  std::string table = render_score_table(rows, 0.9);
  CHECK(table.find("ID\tReview Selection\tThreshold\tMaxPerCoverage") !=
        std::string::npos);
  CHECK(table.find("1\tSelected\t90%") != std::string::npos);
  CHECK(table.find("2\tNot selected") != std::string::npos);
  CHECK(table.find("Average MaxperCoverage Score") != std::string::npos);
  // average of 0.909, 0.5, 1.0 is 0.803, printed as a percentage
  CHECK(table.find("80.3") != std::string::npos);
}

}  // TEST_SUITE
