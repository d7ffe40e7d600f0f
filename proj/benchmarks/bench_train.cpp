#include <benchmark/benchmark.h>

#include "bench_data.hpp"
#include "factcheck/model/classifier.hpp"
#include "factcheck/model/train.hpp"
#include "factcheck/text/text_prep.hpp"
#include "factcheck/text/vocabulary.hpp"

using namespace factcheck;

namespace {

struct Dataset {
  std::vector<model::Example> examples;
  std::vector<std::string> classes;
  std::size_t dim = 0;
};

Dataset make_dataset(std::size_t classes, std::size_t per_class) {
  const auto docs = bench::make_docs(classes, per_class, 40);
  std::vector<text::TokenSeq> tokens;
  for (const auto& d : docs) tokens.push_back(text::tokenize(text::clean_text(d.text)));
  const auto vocab = text::build_vocabulary(tokens, {});
  Dataset out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out.examples.push_back({text::vectorize_tfidf(tokens[i], vocab), docs[i].label});
  }
  for (std::size_t k = 0; k < classes; ++k) out.classes.push_back("class" + std::to_string(k));
  out.dim = vocab.size();
  return out;
}

}  // namespace

// Fixed epoch count with early stopping effectively disabled.
static void BM_TrainEpochs(benchmark::State& state) {
  const auto data = make_dataset(static_cast<std::size_t>(state.range(0)), 200);
  model::TrainConfig cfg;
  cfg.epochs = 10;
  cfg.patience = cfg.epochs;
  cfg.learning_rate = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model::train_with_split(data.examples, {}, data.classes, data.dim, cfg));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.epochs * data.examples.size()));
}
BENCHMARK(BM_TrainEpochs)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Predict(benchmark::State& state) {
  const auto data = make_dataset(6, 50);
  model::TrainConfig cfg;
  cfg.epochs = 5;
  cfg.learning_rate = 0.1;
  const auto params = model::train_with_split(data.examples, {}, data.classes, data.dim, cfg).params;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(model::predict(params, data.examples[i++ % data.examples.size()].x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_Predict);
