#include <benchmark/benchmark.h>

#include "bench_data.hpp"
#include "factcheck/text/text_prep.hpp"
#include "factcheck/text/vocabulary.hpp"

using namespace factcheck;

static void BM_CleanText(benchmark::State& state) {
  const auto docs = bench::make_docs(1, 1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(text::clean_text(docs[0].text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * docs[0].text.size()));
}
BENCHMARK(BM_CleanText)->Arg(50)->Arg(500)->Arg(5000);

static void BM_BuildVocabulary(benchmark::State& state) {
  std::vector<text::TokenSeq> corpus;
  for (const auto& d : bench::make_docs(4, static_cast<std::size_t>(state.range(0)), 40)) {
    corpus.push_back(text::tokenize(text::clean_text(d.text)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(text::build_vocabulary(corpus, {}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_BuildVocabulary)->Arg(100)->Arg(1000);

static void BM_VectorizeTfidf(benchmark::State& state) {
  std::vector<text::TokenSeq> corpus;
  for (const auto& d : bench::make_docs(4, 200, static_cast<std::size_t>(state.range(0)))) {
    corpus.push_back(text::tokenize(text::clean_text(d.text)));
  }
  const auto vocab = text::build_vocabulary(corpus, {});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(text::vectorize_tfidf(corpus[i++ % corpus.size()], vocab));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_VectorizeTfidf)->Arg(40)->Arg(400);
