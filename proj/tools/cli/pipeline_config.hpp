#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factcheck/ingest/fetch.hpp"
#include "factcheck/model/encoder_client.hpp"
#include "factcheck/model/train.hpp"
#include "factcheck/text/vocabulary.hpp"

namespace factcheck::cli {

enum class Task { kVeracity4, kDomain6 };
enum class Backend { kTfidf, kRemoteEncoder };

std::optional<Task> parse_task(std::string_view s);
std::optional<Backend> parse_backend(std::string_view s);
std::string_view task_name(Task t);

/// Class names in class-id order: 4 verdict classes or 6 domain classes.
std::vector<std::string> task_classes(Task t);

/// Environment variable that overrides encoder.endpoint.
inline constexpr const char* kEncoderEndpointEnv = "FACTCHECK_ENCODER_ENDPOINT";

/// Everything a command needs. Loaded from a JSON file whose relative paths
/// resolve against the file's directory:
///
///   {"sites_dir": "sites", "mapping_table_path": "data/mapping_table.json",
///    "corpus_path": "corpus.jsonl", "model_path": "model.bin",
///    "task": "veracity-4", "backend": "tfidf", "seed": 42,
///    "train": {"epochs": 200, "batch_size": 10, "learning_rate": 0.001,
///              "val_fraction": 0.1, "patience": 5, "l2": 0.0},
///    "textprep": {"min_df": 2, "max_terms": 50000},
///    "encoder": {"endpoint": "http://127.0.0.1:8500/embed", "dims": 768,
///                "timeout_ms": 30000, "batch_limit": 32, "max_in_flight": 1},
///    "crawl": {"user_agent": "factcheck-crawler/0.3", "timeout_ms": 10000,
///              "default_rate_limit_ms": 1000, "max_redirects": 5,
///              "respect_robots": true}}
///
/// Every key is optional; unknown keys are rejected.
struct PipelineConfig {
  std::filesystem::path sites_dir = "sites";
  std::filesystem::path mapping_table_path = "data/mapping_table.json";
  std::filesystem::path corpus_path = "corpus.jsonl";
  std::filesystem::path model_path = "model.bin";
  Task task = Task::kVeracity4;
  Backend backend = Backend::kTfidf;
  std::uint64_t seed = 42;
  model::TrainConfig train;
  text::VocabularySettings textprep;
  model::EncoderBackendRef encoder;
  ingest::FetchOptions fetch;
  std::chrono::milliseconds default_rate_limit{1000};

  static PipelineConfig parse(std::string_view json_text, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);

  /// Applies FACTCHECK_ENCODER_ENDPOINT when set.
  void apply_environment();
  void validate() const;
};

}  // namespace factcheck::cli
