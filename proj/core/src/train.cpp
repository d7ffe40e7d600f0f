#include "factcheck/model/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "factcheck/error.hpp"

namespace factcheck::model {
namespace {

double objective(const ModelParams& params, std::span<const Example> examples, double l2) {
  double loss = mean_cross_entropy(params, examples);
  if (l2 > 0.0) {
    double sq = 0.0;
    for (double w : params.weights) sq += w * w;
    loss += 0.5 * l2 * sq;
  }
  return loss;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw InvalidArgument("train config: epochs must be >= 1");
  if (batch_size < 1) throw InvalidArgument("train config: batch_size must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("train config: learning_rate must be > 0");
  }
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw InvalidArgument("train config: val_fraction must be in (0, 1)");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw InvalidArgument("train config: l2 must be >= 0");
}

std::string TrainingHistory::to_tsv() const {
  std::string out = "epoch\ttrain_loss\tval_loss\n";
  out += "0\t" + format_double(initial_train_loss) + "\t" + format_double(initial_val_loss) + "\n";
  for (const auto& e : epochs) {
    out += std::to_string(e.epoch) + "\t" + format_double(e.train_loss) + "\t" + format_double(e.val_loss) + "\n";
  }
  out += "# best_epoch " + std::to_string(best_epoch) + (stopped_early ? " early_stop" : "") + "\n";
  return out;
}

void sgd_step(ModelParams& params, std::span<const Example> batch, double learning_rate, double l2) {
  if (batch.empty()) return;
  const std::size_t K = params.num_classes;
  const double scale = learning_rate / static_cast<double>(batch.size());

  // Gradient at the current parameters, accumulated before any update.
  std::vector<double> grad_bias(K, 0.0);
  std::map<std::uint32_t, std::vector<double>> grad_cols;
  for (const auto& ex : batch) {
    if (ex.label >= K) throw InvalidArgument("sgd_step: label out of range");
    if (ex.x.dim != params.dim) throw InvalidArgument("sgd_step: feature dimension mismatch");
    auto delta = softmax(logits(params, ex.x));
    delta[ex.label] -= 1.0;
    for (std::size_t k = 0; k < K; ++k) grad_bias[k] += delta[k];
    for (const auto& [col, value] : ex.x.entries) {
      auto& g = grad_cols[col];
      if (g.empty()) g.assign(K, 0.0);
      for (std::size_t k = 0; k < K; ++k) g[k] += delta[k] * value;
    }
  }

  if (l2 > 0.0) {
    const double decay = 1.0 - learning_rate * l2;
    for (double& w : params.weights) w *= decay;
  }
  for (const auto& [col, g] : grad_cols) {
    for (std::size_t k = 0; k < K; ++k) params.w(k, col) -= scale * g[k];
  }
  for (std::size_t k = 0; k < K; ++k) params.bias[k] -= scale * grad_bias[k];
}

void stratified_split(const std::vector<Example>& data, double val_fraction, std::uint64_t seed,
                      std::vector<Example>& train, std::vector<Example>& val) {
  std::map<std::size_t, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data[i].label].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> train_idx, val_idx;
  for (auto& [label, idx] : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto want = static_cast<std::size_t>(std::llround(val_fraction * static_cast<double>(idx.size())));
    const std::size_t n_val = std::min(want, idx.size() - 1);
    val_idx.insert(val_idx.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_val));
    train_idx.insert(train_idx.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_val), idx.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
  train.clear();
  val.clear();
  for (auto i : train_idx) train.push_back(data[i]);
  for (auto i : val_idx) val.push_back(data[i]);
}

TrainResult train_with_split(std::vector<Example> train_set, const std::vector<Example>& val,
                             std::vector<std::string> class_names, std::size_t dim, const TrainConfig& config,
                             std::string feature_space) {
  config.validate();
  if (train_set.empty()) throw DataError("train: empty training set");

  TrainResult result;
  ModelParams params = ModelParams::zeros(std::move(class_names), dim, std::move(feature_space));
  for (const auto& ex : train_set) {
    if (ex.label >= params.num_classes) throw InvalidArgument("train: label out of range");
  }
  // Separate stream from the split so changing val_fraction does not
  // reorder epochs.
  std::mt19937_64 rng(config.seed ^ 0x9E3779B97F4A7C15ULL);

  auto monitored = [&](const ModelParams& p, double train_loss) {
    return val.empty() ? train_loss : mean_cross_entropy(p, val);
  };

  auto& history = result.history;
  history.initial_train_loss = objective(params, train_set, config.l2);
  history.initial_val_loss = monitored(params, history.initial_train_loss);

  double best = std::numeric_limits<double>::infinity();
  ModelParams best_params = params;
  std::size_t since_improvement = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(train_set.begin(), train_set.end(), rng);
    const std::span<const Example> all(train_set);
    for (std::size_t start = 0; start < all.size(); start += config.batch_size) {
      const std::size_t len = std::min(config.batch_size, all.size() - start);
      sgd_step(params, all.subspan(start, len), config.learning_rate, config.l2);
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = objective(params, train_set, config.l2);
    stats.val_loss = monitored(params, stats.train_loss);
    history.epochs.push_back(stats);

    if (!std::isfinite(stats.train_loss)) throw DataError("train: loss diverged (try a smaller learning_rate)");
    if (stats.val_loss < best) {
      best = stats.val_loss;
      best_params = params;
      history.best_epoch = epoch;
      since_improvement = 0;
    } else if (config.patience > 0 && ++since_improvement >= config.patience) {
      history.stopped_early = true;
      break;
    }
  }
  result.params = std::move(best_params);
  return result;
}

TrainResult train(const std::vector<Example>& dataset, std::vector<std::string> class_names, std::size_t dim,
                  const TrainConfig& config, std::string feature_space) {
  config.validate();
  if (dataset.empty()) throw DataError("train: empty dataset");
  std::set<std::size_t> labels;
  for (const auto& ex : dataset) labels.insert(ex.label);
  if (labels.size() < 2) throw DataError("train: dataset has a single class; need at least 2");

  std::vector<Example> train_set, val_set;
  stratified_split(dataset, config.val_fraction, config.seed, train_set, val_set);
  return train_with_split(std::move(train_set), val_set, std::move(class_names), dim, config,
                          std::move(feature_space));
}

}  // namespace factcheck::model
