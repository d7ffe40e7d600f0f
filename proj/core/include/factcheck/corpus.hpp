#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factcheck/ingest/article.hpp"
#include "factcheck/labels/taxonomy.hpp"

namespace factcheck {

/// One line of the newline-delimited corpus file. Fields are written in the
/// fixed order record_id, canonical_url, site_id, title, published_at,
/// body_text, raw_verdict, raw_topic, verdict_class, domain_class; absent
/// values are JSON null.
struct CorpusLine {
  ingest::ArticleRecord record;
  std::optional<labels::VerdictClass> verdict_class;
  std::optional<labels::DomainClass> domain_class;

  friend bool operator==(const CorpusLine&, const CorpusLine&) = default;
};

std::string to_json_line(const CorpusLine& line);  // no trailing newline

/// Throws ParseError naming the missing or mistyped field.
CorpusLine parse_corpus_line(std::string_view json);

std::vector<CorpusLine> parse_corpus(std::string_view text);
std::string serialize_corpus(const std::vector<CorpusLine>& lines);

/// Missing file reads as an empty corpus.
std::vector<CorpusLine> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, const std::vector<CorpusLine>& lines);

}  // namespace factcheck
