// Times the OpenMP match kernels against the serial reference on a synthetic
// corpus and verifies both produce identical tables.

#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "tipcover/config.hpp"
#include "tipcover/corpus.hpp"
#include "tipcover/indexing.hpp"
#include "tipcover/kernels.hpp"
#include "tipcover/resources.hpp"
#include "tipcover/similarity.hpp"

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

}  // namespace

int main(int argc, char** argv) {
  int n_reviews = 400;
  int n_tips = 60;
  int vocab = 3000;
  int reps = 3;
  if (argc > 1) n_reviews = std::atoi(argv[1]);
  if (argc > 2) n_tips = std::atoi(argv[2]);
  if (argc > 3) vocab = std::atoi(argv[3]);
  if (argc > 4) reps = std::atoi(argv[4]);

  using namespace tipcover;
  PreprocessPipeline pipeline = PreprocessPipeline::from_file(default_stoplist_path());
  Corpus corpus = generate_fixture(2024, n_reviews, n_tips, vocab, pipeline);
  PolarityLexicon lexicon = PolarityLexicon::from_files(
      default_positive_lexicon_path(), default_negative_lexicon_path());
  Index index = build_index(corpus, 0.1, lexicon);
  MergeWeights weights;

  std::printf("corpus: %d reviews, %d tips, vocab %zu\n", n_reviews, n_tips,
              corpus.vocabulary.size());
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: built without OpenMP\n");
#endif

  const double threshold = 0.5;

  double t_serial = 0.0, t_parallel = 0.0;
  MatchTables serial_tables, parallel_tables;
  for (int r = 0; r < reps; ++r) {
    double t0 = now();
    serial_tables = compute_match_tables_serial(index, threshold, weights);
    double t1 = now();
    parallel_tables = compute_match_tables(index, threshold, weights);
    double t2 = now();
    t_serial += t1 - t0;
    t_parallel += t2 - t1;
  }
  bool equal = serial_tables.covers == parallel_tables.covers &&
               serial_tables.relevant == parallel_tables.relevant;
  std::printf("match tables   serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n",
              1e3 * t_serial / reps, 1e3 * t_parallel / reps, t_serial / t_parallel,
              equal ? "outputs equal" : "OUTPUT MISMATCH");

  std::vector<std::size_t> tips;
  for (std::size_t i = 0; i < corpus.micro_reviews.size() && i < 8; ++i)
    tips.push_back(i);
  PrefVector prefs;

  double s_serial = 0.0, s_parallel = 0.0;
  std::vector<ReviewScore> ser, par;
  for (int r = 0; r < reps; ++r) {
    double t0 = now();
    ser = score_reviews_serial(index, tips, prefs, threshold, weights);
    double t1 = now();
    par = score_reviews(index, tips, prefs, threshold, weights);
    double t2 = now();
    s_serial += t1 - t0;
    s_parallel += t2 - t1;
  }
  bool sequal = ser.size() == par.size();
  for (std::size_t i = 0; sequal && i < ser.size(); ++i) {
    sequal = ser[i].match_count == par[i].match_count &&
             ser[i].tip_matched == par[i].tip_matched &&
             ser[i].sentence_relevant == par[i].sentence_relevant;
    for (std::size_t k = 0; sequal && k < ser[i].per_tip.size(); ++k) {
      sequal = ser[i].per_tip[k].merged == par[i].per_tip[k].merged;
    }
  }
  std::printf("review scoring serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n",
              1e3 * s_serial / reps, 1e3 * s_parallel / reps, s_serial / s_parallel,
              sequal ? "outputs equal" : "OUTPUT MISMATCH");

  return (equal && sequal) ? 0 : 1;
}
