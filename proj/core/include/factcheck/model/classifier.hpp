#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "factcheck/text/vocabulary.hpp"

namespace factcheck::model {

using text::FeatureVector;

/// Multinomial logistic regression: logits = W x + b.
struct ModelParams {
  std::size_t num_classes = 0;
  std::size_t dim = 0;
  std::vector<double> weights;  // num_classes x dim, row-major
  std::vector<double> bias;     // num_classes
  std::vector<std::string> class_names;
  std::string feature_space;    // identifies the vocabulary or encoder

  static ModelParams zeros(std::vector<std::string> class_names, std::size_t dim,
                           std::string feature_space = {});

  double& w(std::size_t k, std::size_t j) { return weights[k * dim + j]; }
  double w(std::size_t k, std::size_t j) const { return weights[k * dim + j]; }

  /// Shape and finiteness checks; throws InvalidArgument.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct Example {
  FeatureVector x;
  std::size_t label = 0;
};

/// Max-shifted softmax. Throws InvalidArgument on non-finite input.
std::vector<double> softmax(std::span<const double> logits);

std::vector<double> logits(const ModelParams& params, const FeatureVector& x);

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad_weights;  // same layout as ModelParams::weights
  std::vector<double> grad_bias;
};

/// Mean cross-entropy over the batch plus (l2/2)·‖W‖², with its gradient.
/// Throws InvalidArgument for an empty batch, a label >= K or a feature
/// column >= dim.
LossAndGrad loss_and_grad(const ModelParams& params, std::span<const Example> batch, double l2);

/// Mean cross-entropy only (no penalty).
double mean_cross_entropy(const ModelParams& params, std::span<const Example> examples);

struct Prediction {
  std::size_t class_id = 0;
  std::vector<double> probs;
};

/// Argmax ties go to the lowest class index. Throws InvalidArgument when
/// x.dim != params.dim.
Prediction predict(const ModelParams& params, const FeatureVector& x);

}  // namespace factcheck::model
