#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "factcheck/text/text_prep.hpp"

namespace factcheck::text {

struct VocabularySettings {
  std::size_t min_df = 2;
  std::size_t max_terms = 50000;

  friend bool operator==(const VocabularySettings&, const VocabularySettings&) = default;
};

/// Sparse vector over vocabulary columns, entries sorted by column. TF-IDF
/// output is either all-zero or unit L2 norm; dense encoder embeddings use
/// the same type without normalization.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::size_t dim = 0;

  double l2_norm() const;
  static FeatureVector from_dense(const std::vector<double>& values);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Term index with document frequencies. Terms are ordered lexicographically
/// so column ids are stable.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
             std::size_t corpus_size, VocabularySettings settings);

  std::size_t size() const { return terms_.size(); }
  std::size_t corpus_size() const { return corpus_size_; }
  const VocabularySettings& settings() const { return settings_; }
  const std::vector<std::string>& terms() const { return terms_; }

  std::optional<std::uint32_t> index(std::string_view term) const;
  std::size_t doc_freq(std::uint32_t column) const { return doc_freq_[column]; }

  /// ln((1 + N) / (1 + df)) + 1
  double idf(std::uint32_t column) const;

  /// Header lines, then one "term<TAB>df" line per column. Round-trips exactly.
  std::string serialize() const;
  static Vocabulary parse(std::string_view text);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_ &&
           a.corpus_size_ == b.corpus_size_ && a.settings_ == b.settings_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t corpus_size_ = 0;
  VocabularySettings settings_;
};

/// Keeps terms with df >= min_df, then the max_terms highest-df ones (ties by
/// term ascending). Throws InvalidArgument if min_df or max_terms is 0.
Vocabulary build_vocabulary(const std::vector<TokenSeq>& corpus, VocabularySettings settings);

/// Raw tf times smoothed idf, L2-normalized; out-of-vocabulary tokens ignored.
FeatureVector vectorize_tfidf(const TokenSeq& doc, const Vocabulary& vocab);

}  // namespace factcheck::text
