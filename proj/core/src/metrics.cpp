#include "factcheck/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "factcheck/error.hpp"

namespace factcheck::metrics {

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < num_classes; ++k) n += at(k, k);
  return n;
}

ConfusionMatrix confusion(const std::vector<std::size_t>& golds, const std::vector<std::size_t>& preds,
                          std::size_t num_classes, std::vector<std::string> class_names) {
  if (golds.size() != preds.size()) {
    throw InvalidArgument("confusion: " + std::to_string(golds.size()) + " gold labels vs " +
                          std::to_string(preds.size()) + " predictions");
  }
  if (class_names.empty()) {
    for (std::size_t k = 0; k < num_classes; ++k) class_names.push_back(std::to_string(k));
  }
  if (class_names.size() != num_classes) throw InvalidArgument("confusion: class_names length != num_classes");
  ConfusionMatrix cm;
  cm.num_classes = num_classes;
  cm.counts.assign(num_classes * num_classes, 0);
  cm.class_names = std::move(class_names);
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (golds[i] >= num_classes || preds[i] >= num_classes) {
      throw InvalidArgument("confusion: label out of range at position " + std::to_string(i));
    }
    ++cm.counts[golds[i] * num_classes + preds[i]];
  }
  return cm;
}

MetricsReport score(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw InvalidArgument("score: confusion matrix is empty (nothing scored)");
  const std::size_t K = cm.num_classes;

  MetricsReport r;
  r.confusion = cm;
  double f1_sum = 0.0;
  double weighted_sum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t j = 0; j < K; ++j) {
      row += cm.at(k, j);
      col += cm.at(j, k);
    }
    const auto tp = static_cast<double>(cm.at(k, k));
    ClassScore s;
    s.name = k < cm.class_names.size() ? cm.class_names[k] : std::to_string(k);
    s.support = row;
    s.precision = col == 0 ? 0.0 : tp / static_cast<double>(col);
    s.recall = row == 0 ? 0.0 : tp / static_cast<double>(row);
    s.f1 = (s.precision + s.recall) == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / (s.precision + s.recall);
    f1_sum += s.f1;
    weighted_sum += static_cast<double>(row) * s.f1;
    r.per_class.push_back(std::move(s));
  }
  r.macro_f1 = f1_sum / static_cast<double>(K);
  r.weighted_f1 = weighted_sum / static_cast<double>(total);
  r.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
  return r;
}

std::string MetricsReport::to_json() const {
  nlohmann::ordered_json j;
  j["macro_f1"] = macro_f1;
  j["weighted_f1"] = weighted_f1;
  j["accuracy"] = accuracy;
  j["per_class"] = nlohmann::ordered_json::array();
  for (const auto& s : per_class) {
    nlohmann::ordered_json c;
    c["class"] = s.name;
    c["precision"] = s.precision;
    c["recall"] = s.recall;
    c["f1"] = s.f1;
    c["support"] = s.support;
    j["per_class"].push_back(std::move(c));
  }
  j["confusion"]["classes"] = confusion.class_names;
  j["confusion"]["counts"] = nlohmann::ordered_json::array();
  for (std::size_t g = 0; g < confusion.num_classes; ++g) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < confusion.num_classes; ++p) row.push_back(confusion.at(g, p));
    j["confusion"]["counts"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string MetricsReport::to_table() const {
  std::size_t width = 7;  // "class" / "overall"
  for (const auto& s : per_class) width = std::max(width, s.name.size());
  std::ostringstream out;
  char buf[128];
  auto name_col = [&](const std::string& s) { out << s << std::string(width - s.size() + 2, ' '); };

  name_col("class");
  out << "precision     recall         f1    support\n";
  for (const auto& s : per_class) {
    name_col(s.name);
    std::snprintf(buf, sizeof buf, "%9.4f  %9.4f  %9.4f  %9llu\n", s.precision, s.recall, s.f1,
                  static_cast<unsigned long long>(s.support));
    out << buf;
  }
  out << "\n";
  std::snprintf(buf, sizeof buf, "macro_f1     %.6f\nweighted_f1  %.6f\naccuracy     %.6f\n", macro_f1, weighted_f1,
                accuracy);
  out << buf << "\nconfusion (rows = gold, columns = predicted)\n";

  std::size_t cell = 6;
  for (const auto& n : confusion.class_names) cell = std::max(cell, n.size());
  for (auto c : confusion.counts) cell = std::max(cell, std::to_string(c).size());
  name_col("");
  for (const auto& n : confusion.class_names) out << std::string(cell - n.size() + 1, ' ') << n;
  out << "\n";
  for (std::size_t g = 0; g < confusion.num_classes; ++g) {
    name_col(confusion.class_names[g]);
    for (std::size_t p = 0; p < confusion.num_classes; ++p) {
      const auto v = std::to_string(confusion.at(g, p));
      out << std::string(cell - v.size() + 1, ' ') << v;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace factcheck::metrics
