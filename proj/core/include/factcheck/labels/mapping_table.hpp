#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factcheck/ingest/article.hpp"
#include "factcheck/labels/taxonomy.hpp"

namespace factcheck::labels {

/// Unicode lowercase, trim, drop punctuation and symbols (dash-like
/// connectors become a space), collapse whitespace. Idempotent.
std::string canonicalize_label(std::string_view raw);

/// Versioned dictionary from canonical label strings to classes.
///
/// File format (JSON):
///   {"version": 3,
///    "verdicts": {"pants on fire": "false", "mostly true": "partially_false"},
///    "domains":  {"covid 19": "health"}}
/// Keys must already be canonical; the loader rejects anything else.
struct MappingTable {
  std::int64_t version = 1;
  std::map<std::string, VerdictClass> verdict_entries;
  std::map<std::string, DomainClass> domain_entries;

  friend bool operator==(const MappingTable&, const MappingTable&) = default;
};

/// The built-in seed table covering common fact-checker vocabularies.
const MappingTable& seed_mapping_table();

MappingTable parse_mapping_table(std::string_view json_text);
MappingTable load_mapping_table(const std::filesystem::path& path);
std::string serialize_mapping_table(const MappingTable& table);

Outcome<VerdictClass> normalize_verdict(std::string_view raw, const MappingTable& table);
Outcome<DomainClass> normalize_domain(std::string_view raw_topic, const MappingTable& table);

/// Sentinel counted when a record has no raw verdict at all.
inline constexpr std::string_view kMissingLabel = "(missing)";

struct LabeledArticle {
  ingest::ArticleRecord record;
  VerdictClass verdict;
  std::optional<DomainClass> domain;  // from raw_topic when mappable
};

/// Distinct unmapped canonical labels with counts, count-descending then
/// label-ascending.
struct UnmappedReport {
  std::vector<std::pair<std::string, std::size_t>> entries;

  std::size_t total() const;
  std::string to_tsv() const;    // "label\tcount" with a header row
  std::string to_table() const;  // aligned, for terminals
};

struct MergeResult {
  std::vector<LabeledArticle> dataset;
  UnmappedReport unmapped;
};

/// Conservation: dataset.size() + unmapped.total() == records.size().
MergeResult merge_corpus(const std::vector<ingest::ArticleRecord>& records,
                         const MappingTable& table);

/// Tallies `labels` into a report (used for the domain side as well).
UnmappedReport tally_unmapped(const std::vector<std::string>& labels);

}  // namespace factcheck::labels
