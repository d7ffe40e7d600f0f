#include "factcheck/model/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "factcheck/error.hpp"

namespace factcheck::model {
namespace {

void check_example(const ModelParams& params, const FeatureVector& x) {
  if (x.dim != params.dim) {
    throw InvalidArgument("feature dimension " + std::to_string(x.dim) + " does not match model dimension " +
                          std::to_string(params.dim));
  }
  for (const auto& [col, value] : x.entries) {
    if (col >= params.dim) throw InvalidArgument("feature column " + std::to_string(col) + " >= dim");
  }
}

double log_sum_exp(std::span<const double> z) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  return m + std::log(s);
}

}  // namespace

ModelParams ModelParams::zeros(std::vector<std::string> class_names, std::size_t dim, std::string feature_space) {
  ModelParams p;
  p.num_classes = class_names.size();
  p.dim = dim;
  p.weights.assign(p.num_classes * dim, 0.0);
  p.bias.assign(p.num_classes, 0.0);
  p.class_names = std::move(class_names);
  p.feature_space = std::move(feature_space);
  return p;
}

void ModelParams::validate() const {
  if (num_classes == 0) throw InvalidArgument("model: no classes");
  if (class_names.size() != num_classes || bias.size() != num_classes) {
    throw InvalidArgument("model: class_names/bias length does not match number of classes");
  }
  if (weights.size() != num_classes * dim) throw InvalidArgument("model: weight matrix has wrong size");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(weights.begin(), weights.end(), finite) || !std::all_of(bias.begin(), bias.end(), finite)) {
    throw InvalidArgument("model: non-finite parameter");
  }
}

std::vector<double> softmax(std::span<const double> z) {
  if (z.empty()) throw InvalidArgument("softmax: empty input");
  for (double v : z) {
    if (!std::isfinite(v)) throw InvalidArgument("softmax: non-finite logit");
  }
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    p[k] = std::exp(z[k] - m);
    sum += p[k];
  }
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> logits(const ModelParams& params, const FeatureVector& x) {
  std::vector<double> z(params.bias);
  for (std::size_t k = 0; k < params.num_classes; ++k) {
    const double* row = params.weights.data() + k * params.dim;
    double acc = 0.0;
    for (const auto& [col, value] : x.entries) acc += row[col] * value;
    z[k] += acc;
  }
  return z;
}

LossAndGrad loss_and_grad(const ModelParams& params, std::span<const Example> batch, double l2) {
  if (batch.empty()) throw InvalidArgument("loss_and_grad: empty batch");
  const std::size_t K = params.num_classes;
  LossAndGrad out;
  out.grad_weights.assign(params.weights.size(), 0.0);
  out.grad_bias.assign(K, 0.0);

  for (const auto& ex : batch) {
    check_example(params, ex.x);
    if (ex.label >= K) {
      throw InvalidArgument("label " + std::to_string(ex.label) + " out of range for " + std::to_string(K) +
                            " classes");
    }
    const auto z = logits(params, ex.x);
    out.loss += log_sum_exp(z) - z[ex.label];
    auto delta = softmax(z);
    delta[ex.label] -= 1.0;
    for (std::size_t k = 0; k < K; ++k) {
      out.grad_bias[k] += delta[k];
      double* row = out.grad_weights.data() + k * params.dim;
      for (const auto& [col, value] : ex.x.entries) row[col] += delta[k] * value;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  out.loss *= inv_n;
  for (double& g : out.grad_bias) g *= inv_n;
  for (double& g : out.grad_weights) g *= inv_n;

  if (l2 > 0.0) {
    double sq = 0.0;
    for (std::size_t i = 0; i < params.weights.size(); ++i) {
      sq += params.weights[i] * params.weights[i];
      out.grad_weights[i] += l2 * params.weights[i];
    }
    out.loss += 0.5 * l2 * sq;
  }
  return out;
}

double mean_cross_entropy(const ModelParams& params, std::span<const Example> examples) {
  if (examples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : examples) {
    const auto z = logits(params, ex.x);
    total += log_sum_exp(z) - z[ex.label];
  }
  return total / static_cast<double>(examples.size());
}

Prediction predict(const ModelParams& params, const FeatureVector& x) {
  check_example(params, x);
  Prediction out;
  out.probs = softmax(logits(params, x));
  // max_element returns the first maximum: lowest index wins ties.
  out.class_id = static_cast<std::size_t>(std::max_element(out.probs.begin(), out.probs.end()) - out.probs.begin());
  return out;
}

}  // namespace factcheck::model
