#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tipcover/resources.hpp"
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scratch workspace shared by the whole binary run.
fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("tipcover_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  fs::path out = work_dir() / "stdout.txt";
  fs::path err = work_dir() / "stderr.txt";
  std::string cmd = std::string(TIPCOVER_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string fixture(const char* name) {
  return tipcover::resource_dir() + std::string("/fixtures/") + name;
}

// Ingest once; most cases reuse this cache.
std::string corpus_cache() {
  static std::string path = [] {
    std::string p = (work_dir() / "corpus.json").string();
    RunResult r = run("ingest --reviews " + fixture("reviews.jsonl") + " --tips " +
                      fixture("tips.jsonl") + " --out " + p);
    REQUIRE(r.exit_code == 0);
    return p;
  }();
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("ingest validates and caches the fixture corpus") {
  std::string cache = corpus_cache();
  CHECK(fs::exists(cache));
  json summary = json::parse(slurp(work_dir() / "stdout.txt"), nullptr, false);
  // stdout may have been overwritten by later runs; re-run to inspect
  RunResult r = run("ingest --reviews " + fixture("reviews.jsonl") + " --tips " +
                    fixture("tips.jsonl") + " --out " + cache);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["reviews"] == 20);
  CHECK(j["micro_reviews"] == 10);
  CHECK(j.contains("config"));
}

TEST_CASE("ingest rejects malformed lines with their line number") {
  fs::path bad = work_dir() / "bad_reviews.jsonl";
  std::ofstream(bad) << R"({"id":"r1","venue_id":"v","text":"ok."})" << "\n"
                     << "{oops\n";
  RunResult r = run("ingest --reviews " + bad.string() + " --tips " +
                    fixture("tips.jsonl") + " --out " +
                    (work_dir() / "never.json").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find(":2:") != std::string::npos);
}

TEST_CASE("ingest rejects over-length tips by id") {
  fs::path bad = work_dir() / "bad_tips.jsonl";
  std::ofstream(bad) << R"({"id":"t99","venue_id":"v","text":")"
                     << std::string(150, 'x') << "\"}\n";
  RunResult r = run("ingest --reviews " + fixture("reviews.jsonl") + " --tips " +
                    bad.string() + " --out " + (work_dir() / "never.json").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("t99") != std::string::npos);
}

TEST_CASE("select-tips writes a bounded trace") {
  std::string tips_out = (work_dir() / "tips.json").string();
  RunResult r = run("select-tips --corpus " + corpus_cache() + " --out " + tips_out);
  CHECK(r.exit_code == 0);
  json j = json::parse(slurp(tips_out));
  CHECK(j.contains("config"));
  CHECK(j["steps"].size() <= 5);
  CHECK(j["steps"].size() == j["selected_tips"].size());
  for (const auto& step : j["steps"]) {
    CHECK(step.contains("chosen_id"));
    CHECK(step.contains("gain"));
    CHECK(step.contains("cost"));
    CHECK(step.contains("cov_after"));
    CHECK(step.contains("eff_avg_after"));
  }
}

TEST_CASE("select-tips rejects a zero budget") {
  RunResult r = run("select-tips --corpus " + corpus_cache() + " --budget 0 --out " +
                    (work_dir() / "never.json").string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("an unsatisfiable efficiency floor warns and selects nothing") {
  std::string out = (work_dir() / "tips_empty.json").string();
  RunResult r = run("select-tips --corpus " + corpus_cache() +
                    " --alpha 1.0 --match-threshold 0.9 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  json j = json::parse(slurp(out));
  CHECK(j["selected_tips"].empty());
  CHECK(j.contains("warning"));
}

TEST_CASE("select-reviews needs a prior tip selection") {
  RunResult missing_flag =
      run("select-reviews --corpus " + corpus_cache() + " --out " +
          (work_dir() / "never.json").string());
  CHECK(missing_flag.exit_code == 2);

  RunResult missing_file =
      run("select-reviews --corpus " + corpus_cache() + " --tips " +
          (work_dir() / "does_not_exist.json").string() + " --out " +
          (work_dir() / "never.json").string());
  CHECK(missing_file.exit_code == 2);
}

TEST_CASE("select-reviews with an empty prefs file equals omitting it") {
  std::string tips_out = (work_dir() / "tips.json").string();
  REQUIRE(run("select-tips --corpus " + corpus_cache() + " --out " + tips_out)
              .exit_code == 0);

  fs::path empty_prefs = work_dir() / "empty_prefs.json";
  std::ofstream(empty_prefs) << R"({"user_id":"u0","terms":[]})";

  std::string with = (work_dir() / "reviews_with.json").string();
  std::string without = (work_dir() / "reviews_without.json").string();
  REQUIRE(run("select-reviews --corpus " + corpus_cache() + " --tips " + tips_out +
              " --prefs " + empty_prefs.string() + " --out " + with)
              .exit_code == 0);
  REQUIRE(run("select-reviews --corpus " + corpus_cache() + " --tips " + tips_out +
              " --out " + without)
              .exit_code == 0);
  CHECK(slurp(with) == slurp(without));
}

TEST_CASE("select-reviews report carries the documented fields") {
  std::string tips_out = (work_dir() / "tips.json").string();
  REQUIRE(run("select-tips --corpus " + corpus_cache() + " --out " + tips_out)
              .exit_code == 0);
  std::string out = (work_dir() / "reviews.json").string();
  RunResult r = run("select-reviews --corpus " + corpus_cache() + " --tips " +
                    tips_out + " --prefs " + fixture("prefs_u1.json") +
                    " --match-threshold 0.4 --out " + out);
  CHECK(r.exit_code == 0);
  json j = json::parse(slurp(out));
  CHECK(j.contains("config"));
  CHECK(j.contains("rejected_count"));
  REQUIRE(j["selected"].is_array());
  json tips = json::parse(slurp(tips_out));
  for (const auto& row : j["selected"]) {
    CHECK(row.contains("id"));
    CHECK(row.contains("match_count"));
    CHECK(row.contains("coverage"));
    CHECK(row.contains("efficiency"));
    CHECK(row["merged_scores_per_tip"].size() == tips["selected_tips"].size());
  }
}

TEST_CASE("profile-derived preferences work end to end") {
  std::string tips_out = (work_dir() / "tips.json").string();
  REQUIRE(run("select-tips --corpus " + corpus_cache() + " --out " + tips_out)
              .exit_code == 0);
  std::string out = (work_dir() / "reviews_u1.json").string();
  RunResult r = run("select-reviews --corpus " + corpus_cache() + " --tips " +
                    tips_out + " --profile-user u1 --categories " +
                    fixture("categories.json") + " --out " + out);
  CHECK(r.exit_code == 0);
  json j = json::parse(slurp(out));
  CHECK(j.contains("selected"));

  RunResult unknown = run("select-reviews --corpus " + corpus_cache() + " --tips " +
                          tips_out + " --profile-user nobody --out " +
                          (work_dir() / "never.json").string());
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("evaluate rejects an unsorted sweep") {
  RunResult r = run("evaluate --corpus " + corpus_cache() +
                    " --sweep 0.7,0.5 --out " + (work_dir() / "never.json").string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("an unreachable efficiency bound exits with the infeasible code") {
  RunResult r = run("evaluate --corpus " + corpus_cache() + " --alpha 0.99 --out " +
                    (work_dir() / "never.json").string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("0.99") != std::string::npos);
}

TEST_CASE("evaluate sweep boundaries select everything and then nothing") {
  std::string out = (work_dir() / "eval_bounds.json").string();
  RunResult r = run("evaluate --corpus " + corpus_cache() + " --sweep 0,1 --out " + out);
  CHECK(r.exit_code == 0);
  json j = json::parse(slurp(out));
  REQUIRE(j["sweep"].size() == 2);
  CHECK(j["sweep"][0]["selected"] == 20);
  CHECK(j["sweep"][1]["selected"] == 0);
  // the oracle comparison is reported at this corpus size
  REQUIRE(j.contains("approximation"));
  CHECK(j["approximation"]["optimal_coverage"].get<double>() > 0.0);
  CHECK(j["approximation"].contains("satisfied"));
}

TEST_CASE("evaluate emits the score table and the set ranking") {
  std::string out = (work_dir() / "eval.json").string();
  std::string table = (work_dir() / "eval.txt").string();
  RunResult r = run("evaluate --corpus " + corpus_cache() +
                    " --sweep 0.5,0.6,0.7,0.8,0.9,1.0 --out " + out + " --table " +
                    table);
  CHECK(r.exit_code == 0);
  json j = json::parse(slurp(out));
  CHECK(j.contains("config"));
  CHECK(j.contains("accuracy"));
  CHECK(j.contains("chosen_set"));
  CHECK(j["reviews"].size() == 20);
  REQUIRE(j["sweep"].size() == 6);
  std::size_t prev = 21;
  for (const auto& row : j["sweep"]) {
    std::size_t count = row["selected"].get<std::size_t>();
    CHECK(count <= prev);
    prev = count;
  }
  std::string rendered = slurp(table);
  CHECK(rendered.find("Average MaxperCoverage Score") != std::string::npos);
  CHECK(rendered.find("MaxPerCoverage") != std::string::npos);
}

TEST_CASE("config file fills gaps and flags win") {
  fs::path cfg = work_dir() / "pipeline.conf";
  std::ofstream(cfg) << "# pipeline settings\n"
                     << "alpha = 0.1\n"
                     << "budget = 2\n";
  std::string out = (work_dir() / "tips_cfg.json").string();
  RunResult r = run("select-tips --corpus " + corpus_cache() + " --config " +
                    cfg.string() + " --alpha 0.4 --out " + out);
  CHECK(r.exit_code == 0);
  json j = json::parse(slurp(out));
  CHECK(j["config"]["alpha"] == 0.4);   // flag beats file
  CHECK(j["config"]["budget"] == 2);    // file beats default
  CHECK(j["config"]["t"] == 1);         // default preserved

  fs::path bad = work_dir() / "bad.conf";
  std::ofstream(bad) << "bogus_key = 1\n";
  RunResult rb = run("select-tips --corpus " + corpus_cache() + " --config " +
                     bad.string() + " --out " + (work_dir() / "never.json").string());
  CHECK(rb.exit_code == 2);
}

TEST_CASE("the full pipeline is byte-identical across jobs settings") {
  for (const char* jobs : {"1", "4"}) {
    std::string tag = std::string("_j") + jobs;
    std::string cache = (work_dir() / ("c" + tag + ".json")).string();
    std::string tips = (work_dir() / ("t" + tag + ".json")).string();
    std::string reviews = (work_dir() / ("r" + tag + ".json")).string();
    std::string eval = (work_dir() / ("e" + tag + ".json")).string();
    std::string table = (work_dir() / ("e" + tag + ".txt")).string();
    REQUIRE(run("ingest --reviews " + fixture("reviews.jsonl") + " --tips " +
                fixture("tips.jsonl") + " --jobs " + jobs + " --out " + cache)
                .exit_code == 0);
    REQUIRE(run("select-tips --corpus " + cache + " --jobs " + jobs + " --out " + tips)
                .exit_code == 0);
    REQUIRE(run("select-reviews --corpus " + cache + " --tips " + tips + " --prefs " +
                fixture("prefs_u1.json") + " --match-threshold 0.4 --jobs " + jobs +
                " --out " + reviews)
                .exit_code == 0);
    REQUIRE(run("evaluate --corpus " + cache + " --tips " + tips + " --prefs " +
                fixture("prefs_u1.json") + " --match-threshold 0.4 --sweep 0.5,0.7,0.9" +
                " --jobs " + jobs + " --out " + eval + " --table " + table)
                .exit_code == 0);
  }
  for (const char* name : {"c", "t", "r", "e"}) {
    CHECK(slurp(work_dir() / (name + std::string("_j1.json"))) ==
          slurp(work_dir() / (name + std::string("_j4.json"))));
  }
  CHECK(slurp(work_dir() / "e_j1.txt") == slurp(work_dir() / "e_j4.txt"));
}

}  // TEST_SUITE
