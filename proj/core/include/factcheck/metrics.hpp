#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace factcheck::metrics {

/// Rows are gold classes, columns predicted classes.
struct ConfusionMatrix {
  std::size_t num_classes = 0;
  std::vector<std::uint64_t> counts;  // row-major
  std::vector<std::string> class_names;

  std::uint64_t at(std::size_t gold, std::size_t pred) const { return counts[gold * num_classes + pred]; }
  std::uint64_t total() const;
  std::uint64_t trace() const;
};

/// Throws InvalidArgument on a length mismatch or a label >= num_classes.
/// Class names default to "0", "1", ...
ConfusionMatrix confusion(const std::vector<std::size_t>& golds,
                          const std::vector<std::size_t>& preds, std::size_t num_classes,
                          std::vector<std::string> class_names = {});

struct ClassScore {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct MetricsReport {
  std::vector<ClassScore> per_class;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;

  std::string to_json() const;
  std::string to_table() const;
};

/// Undefined precision/recall/F1 are 0; the macro mean covers every class
/// of the matrix. Throws InvalidArgument for an all-zero matrix.
MetricsReport score(const ConfusionMatrix& cm);

}  // namespace factcheck::metrics
