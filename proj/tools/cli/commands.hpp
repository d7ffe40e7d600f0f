#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/pipeline_config.hpp"

namespace factcheck::cli {

/// A command failed for a reason that maps to a specific exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

struct CrawlOptions {
  std::vector<std::string> sites;  // empty = all
  std::optional<std::size_t> budget;
};

void cmd_crawl(const PipelineConfig& config, const CrawlOptions& options, std::ostream& out);

void cmd_normalize(const PipelineConfig& config, std::ostream& out);

void cmd_train(const PipelineConfig& config, std::ostream& out);

struct PredictOptions {
  std::string input = "-";   // "-" = stdin
  std::string output = "-";  // "-" = stdout
};

void cmd_predict(const PipelineConfig& config, const PredictOptions& options, std::istream& stdin_stream,
                 std::ostream& out);

struct EvaluateOptions {
  std::optional<std::filesystem::path> gold;  // default: corpus_path
  std::filesystem::path predictions;
  std::optional<std::filesystem::path> report_prefix;  // default: <predictions>.metrics
};

void cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& options, std::ostream& out);

}  // namespace factcheck::cli
