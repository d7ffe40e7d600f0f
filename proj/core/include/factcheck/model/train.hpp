#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "factcheck/model/classifier.hpp"

namespace factcheck::model {

struct TrainConfig {
  std::size_t epochs = 200;
  std::size_t batch_size = 10;
  double learning_rate = 0.001;
  std::uint64_t seed = 42;
  double val_fraction = 0.1;
  std::size_t patience = 5;
  double l2 = 0.0;

  void validate() const;
};

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;

  friend bool operator==(const EpochStats&, const EpochStats&) = default;
};

struct TrainingHistory {
  double initial_train_loss = 0.0;
  double initial_val_loss = 0.0;
  std::vector<EpochStats> epochs;
  std::size_t best_epoch = 0;
  bool stopped_early = false;

  /// Tab-separated, one row per epoch.
  std::string to_tsv() const;

  friend bool operator==(const TrainingHistory&, const TrainingHistory&) = default;
};

struct TrainResult {
  ModelParams params;
  TrainingHistory history;
};

/// One plain SGD step on the objective of loss_and_grad.
void sgd_step(ModelParams& params, std::span<const Example> batch, double learning_rate, double l2);

/// Per-class seeded shuffle; round(val_fraction * n_c) examples of each class
/// go to validation, keeping at least one per class for training.
void stratified_split(const std::vector<Example>& data, double val_fraction, std::uint64_t seed,
                      std::vector<Example>& train, std::vector<Example>& val);

/// Trains from zero parameters with per-epoch seeded shuffling and early
/// stopping on validation loss (train loss when `val` is empty). Returns the
/// parameters of the best epoch.
TrainResult train_with_split(std::vector<Example> train, const std::vector<Example>& val,
                             std::vector<std::string> class_names, std::size_t dim,
                             const TrainConfig& config, std::string feature_space = {});

/// Stratified split, then train_with_split. Throws DataError for an empty or
/// single-class dataset.
TrainResult train(const std::vector<Example>& dataset, std::vector<std::string> class_names,
                  std::size_t dim, const TrainConfig& config, std::string feature_space = {});

}  // namespace factcheck::model
