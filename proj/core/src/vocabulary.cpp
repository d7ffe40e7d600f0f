#include "factcheck/text/vocabulary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_set>

#include "factcheck/error.hpp"

namespace factcheck::text {
namespace {

constexpr std::string_view kVocabMagic = "factcheck-vocab";
constexpr int kVocabVersion = 1;

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("vocabulary: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : rest_(text) {}
  std::string_view next(std::string_view what) {
    if (rest_.empty()) throw ParseError("vocabulary: truncated before " + std::string(what));
    const auto nl = rest_.find('\n');
    if (nl == std::string_view::npos) throw ParseError("vocabulary: missing newline after " + std::string(what));
    auto line = rest_.substr(0, nl);
    rest_.remove_prefix(nl + 1);
    return line;
  }
  // "key value" header line
  std::size_t field(std::string_view key) {
    const auto line = next(key);
    if (!line.starts_with(key) || line.size() <= key.size() || line[key.size()] != ' ') {
      throw ParseError("vocabulary: expected '" + std::string(key) + " <n>', got '" + std::string(line) + "'");
    }
    return parse_count(line.substr(key.size() + 1), key);
  }
  bool done() const { return rest_.empty(); }

 private:
  std::string_view rest_;
};

}  // namespace

double FeatureVector::l2_norm() const {
  double sum = 0.0;
  for (const auto& [col, w] : entries) sum += w * w;
  return std::sqrt(sum);
}

FeatureVector FeatureVector::from_dense(const std::vector<double>& values) {
  FeatureVector v;
  v.dim = values.size();
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] != 0.0) v.entries.emplace_back(static_cast<std::uint32_t>(j), values[j]);
  }
  return v;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                       std::size_t corpus_size, VocabularySettings settings)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), corpus_size_(corpus_size), settings_(settings) {
  if (terms_.size() != doc_freq_.size()) throw InvalidArgument("vocabulary: terms/doc_freq length mismatch");
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) throw InvalidArgument("vocabulary: terms not strictly sorted");
    if (doc_freq_[i] < 1 || doc_freq_[i] > corpus_size_) {
      throw InvalidArgument("vocabulary: doc_freq of '" + terms_[i] + "' out of [1, corpus_size]");
    }
    index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> Vocabulary::index(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::idf(std::uint32_t column) const {
  return std::log((1.0 + static_cast<double>(corpus_size_)) / (1.0 + static_cast<double>(doc_freq_[column]))) + 1.0;
}

std::string Vocabulary::serialize() const {
  std::string out;
  out += std::string(kVocabMagic) + " " + std::to_string(kVocabVersion) + "\n";
  out += "corpus_size " + std::to_string(corpus_size_) + "\n";
  out += "min_df " + std::to_string(settings_.min_df) + "\n";
  out += "max_terms " + std::to_string(settings_.max_terms) + "\n";
  out += "terms " + std::to_string(terms_.size()) + "\n";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out += terms_[i] + "\t" + std::to_string(doc_freq_[i]) + "\n";
  }
  return out;
}

Vocabulary Vocabulary::parse(std::string_view text) {
  LineReader in(text);
  const auto magic = in.next("header");
  if (magic != std::string(kVocabMagic) + " " + std::to_string(kVocabVersion)) {
    throw ParseError("vocabulary: unsupported header '" + std::string(magic) + "'");
  }
  const std::size_t corpus_size = in.field("corpus_size");
  VocabularySettings settings;
  settings.min_df = in.field("min_df");
  settings.max_terms = in.field("max_terms");
  const std::size_t count = in.field("terms");
  std::vector<std::string> terms;
  std::vector<std::size_t> dfs;
  terms.reserve(count);
  dfs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto line = in.next("term line");
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) throw ParseError("vocabulary: bad term line '" + std::string(line) + "'");
    terms.emplace_back(line.substr(0, tab));
    dfs.push_back(parse_count(line.substr(tab + 1), "doc_freq"));
  }
  if (!in.done()) throw ParseError("vocabulary: trailing data after term list");
  try {
    return Vocabulary(std::move(terms), std::move(dfs), corpus_size, settings);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Vocabulary build_vocabulary(const std::vector<TokenSeq>& corpus, VocabularySettings settings) {
  if (settings.min_df < 1) throw InvalidArgument("build_vocabulary: min_df must be >= 1");
  if (settings.max_terms < 1) throw InvalidArgument("build_vocabulary: max_terms must be >= 1");

  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::unordered_set<std::string_view> unique(doc.begin(), doc.end());
    for (auto term : unique) ++df[std::string(term)];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [term, count] : df) {
    if (count >= settings.min_df) kept.emplace_back(term, count);
  }
  if (kept.size() > settings.max_terms) {
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    kept.resize(settings.max_terms);
    std::sort(kept.begin(), kept.end());
  }
  std::vector<std::string> terms;
  std::vector<std::size_t> dfs;
  terms.reserve(kept.size());
  dfs.reserve(kept.size());
  for (auto& [term, count] : kept) {
    terms.push_back(std::move(term));
    dfs.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(dfs), corpus.size(), settings);
}

FeatureVector vectorize_tfidf(const TokenSeq& doc, const Vocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : doc) {
    if (auto col = vocab.index(token)) counts[*col] += 1.0;
  }
  FeatureVector v;
  v.dim = vocab.size();
  v.entries.reserve(counts.size());
  double sum_sq = 0.0;
  for (const auto& [col, tf] : counts) {
    const double w = tf * vocab.idf(col);
    v.entries.emplace_back(col, w);
    sum_sq += w * w;
  }
  if (sum_sq > 0.0) {
    const double norm = std::sqrt(sum_sq);
    for (auto& [col, w] : v.entries) w /= norm;
  }
  return v;
}

}  // namespace factcheck::text
