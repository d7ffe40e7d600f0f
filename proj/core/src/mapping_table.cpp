#include "factcheck/labels/mapping_table.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "factcheck/error.hpp"
#include "factcheck/fs_util.hpp"
#include "factcheck/unicode.hpp"

namespace factcheck::labels {
namespace {

using nlohmann::json;

MappingTable build_seed_table() {
  MappingTable t;
  t.version = 1;
  using V = VerdictClass;
  const std::pair<const char*, V> verdicts[] = {
      // False: the main claim is untrue.
      {"false", V::kFalse}, {"pants on fire", V::kFalse}, {"fake", V::kFalse}, {"fake news", V::kFalse},
      {"fabricated", V::kFalse}, {"fabricated content", V::kFalse}, {"incorrect", V::kFalse},
      {"inaccurate", V::kFalse}, {"wrong", V::kFalse}, {"hoax", V::kFalse}, {"scam", V::kFalse},
      {"not true", V::kFalse}, {"baseless", V::kFalse}, {"debunked", V::kFalse},
      {"four pinocchios", V::kFalse}, {"totally false", V::kFalse}, {"completely false", V::kFalse},
      {"false claim", V::kFalse},
      // Partially false: a mixture of true and false information.
      {"partially false", V::kPartiallyFalse}, {"partially true", V::kPartiallyFalse},
      {"mostly true", V::kPartiallyFalse}, {"mostly false", V::kPartiallyFalse},
      {"miscaptioned", V::kPartiallyFalse}, {"misleading", V::kPartiallyFalse},
      {"half true", V::kPartiallyFalse}, {"half truth", V::kPartiallyFalse}, {"mixture", V::kPartiallyFalse},
      {"mixed", V::kPartiallyFalse}, {"partly false", V::kPartiallyFalse}, {"partly true", V::kPartiallyFalse},
      {"exaggerated", V::kPartiallyFalse}, {"exaggeration", V::kPartiallyFalse},
      {"out of context", V::kPartiallyFalse}, {"missing context", V::kPartiallyFalse},
      {"needs context", V::kPartiallyFalse}, {"distorted", V::kPartiallyFalse},
      {"misattributed", V::kPartiallyFalse}, {"manipulated", V::kPartiallyFalse},
      {"two pinocchios", V::kPartiallyFalse}, {"three pinocchios", V::kPartiallyFalse},
      // True: the primary elements of the claim are demonstrably true.
      {"true", V::kTrue}, {"correct", V::kTrue}, {"accurate", V::kTrue}, {"verified", V::kTrue},
      {"confirmed", V::kTrue}, {"correct attribution", V::kTrue}, {"geppetto checkmark", V::kTrue},
      {"legit", V::kTrue}, {"real", V::kTrue},
      // Other: cannot be categorised for lack of evidence; claims in dispute.
      {"other", V::kOther}, {"unproven", V::kOther}, {"unverified", V::kOther}, {"in dispute", V::kOther},
      {"disputed", V::kOther}, {"unsupported", V::kOther}, {"research in progress", V::kOther},
      {"outdated", V::kOther}, {"satire", V::kOther}, {"labeled satire", V::kOther}, {"legend", V::kOther},
      {"no evidence", V::kOther}, {"insufficient evidence", V::kOther}, {"unclear", V::kOther},
      {"undetermined", V::kOther}, {"lost legend", V::kOther},
  };
  for (const auto& [k, v] : verdicts) t.verdict_entries.emplace(k, v);

  using D = DomainClass;
  const std::pair<const char*, D> domains[] = {
      {"health", D::kHealth}, {"covid 19", D::kHealth}, {"covid19", D::kHealth}, {"coronavirus", D::kHealth},
      {"cancer", D::kHealth}, {"diet", D::kHealth}, {"nutrition", D::kHealth}, {"vaccine", D::kHealth},
      {"vaccines", D::kHealth}, {"medicine", D::kHealth}, {"medical", D::kHealth}, {"disease", D::kHealth},
      {"pandemic", D::kHealth},
      {"election", D::kElection}, {"elections", D::kElection}, {"voting", D::kElection},
      {"vote", D::kElection}, {"ballot", D::kElection}, {"campaign", D::kElection},
      {"crime", D::kCrime}, {"police", D::kCrime}, {"murder", D::kCrime}, {"fraud", D::kCrime},
      {"theft", D::kCrime}, {"shooting", D::kCrime}, {"justice", D::kCrime},
      {"climate", D::kClimate}, {"climate change", D::kClimate}, {"global warming", D::kClimate},
      {"environment", D::kClimate}, {"weather", D::kClimate}, {"energy", D::kClimate},
      {"economy", D::kEconomy}, {"economic", D::kEconomy}, {"finance", D::kEconomy}, {"jobs", D::kEconomy},
      {"taxes", D::kEconomy}, {"inflation", D::kEconomy}, {"business", D::kEconomy}, {"trade", D::kEconomy},
      {"education", D::kEducation}, {"school", D::kEducation}, {"schools", D::kEducation},
      {"university", D::kEducation}, {"students", D::kEducation}, {"teachers", D::kEducation},
  };
  for (const auto& [k, v] : domains) t.domain_entries.emplace(k, v);
  return t;
}

void require_canonical(const std::string& section, const std::string& key) {
  const std::string canonical = canonicalize_label(key);
  if (key.empty() || canonical != key) {
    throw ParseError("mapping table: " + section + " key \"" + key + "\" is not canonical (expected \"" +
                     canonical + "\")");
  }
}

template <typename Class>
Outcome<Class> lookup(std::string_view raw, const std::map<std::string, Class>& entries) {
  std::string canonical = canonicalize_label(raw);
  const auto it = entries.find(canonical);
  if (it == entries.end()) return Unmapped{std::move(canonical)};
  return it->second;
}

}  // namespace

const MappingTable& seed_mapping_table() {
  static const MappingTable table = build_seed_table();
  return table;
}

MappingTable parse_mapping_table(std::string_view json_text) {
  MappingTable t;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("mapping table: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("mapping table: top level must be an object");
  if (!j.contains("version") || !j["version"].is_number_integer()) {
    throw ParseError("mapping table: \"version\" must be an integer");
  }
  t.version = j["version"].get<std::int64_t>();
  if (t.version < 1) throw ParseError("mapping table: \"version\" must be >= 1");

  for (const char* section : {"verdicts", "domains"}) {
    if (!j.contains(section) || !j[section].is_object()) {
      throw ParseError(std::string("mapping table: missing object \"") + section + "\"");
    }
    for (const auto& [key, value] : j[section].items()) {
      require_canonical(section, key);
      if (!value.is_string()) throw ParseError("mapping table: value of \"" + key + "\" must be a string");
      const auto cls = value.get<std::string>();
      if (std::string_view(section) == "verdicts") {
        auto v = parse_verdict_class(cls);
        if (!v) throw ParseError("mapping table: \"" + key + "\" maps to unknown verdict class \"" + cls + "\"");
        t.verdict_entries.emplace(key, *v);
      } else {
        auto d = parse_domain_class(cls);
        if (!d) throw ParseError("mapping table: \"" + key + "\" maps to unknown domain class \"" + cls + "\"");
        t.domain_entries.emplace(key, *d);
      }
    }
  }
  return t;
}

MappingTable load_mapping_table(const std::filesystem::path& path) {
  try {
    return parse_mapping_table(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_mapping_table(const MappingTable& table) {
  nlohmann::ordered_json j;
  j["version"] = table.version;
  j["verdicts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.verdict_entries) j["verdicts"][k] = std::string(name(v));
  j["domains"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.domain_entries) j["domains"][k] = std::string(name(v));
  return j.dump(2) + "\n";
}

Outcome<VerdictClass> normalize_verdict(std::string_view raw, const MappingTable& table) {
  return lookup(raw, table.verdict_entries);
}

Outcome<DomainClass> normalize_domain(std::string_view raw_topic, const MappingTable& table) {
  return lookup(raw_topic, table.domain_entries);
}

std::size_t UnmappedReport::total() const {
  std::size_t n = 0;
  for (const auto& [label, count] : entries) n += count;
  return n;
}

std::string UnmappedReport::to_tsv() const {
  std::string out = "label\tcount\n";
  for (const auto& [label, count] : entries) out += label + "\t" + std::to_string(count) + "\n";
  return out;
}

std::string UnmappedReport::to_table() const {
  std::size_t width = 5;
  for (const auto& [label, count] : entries) {
    width = std::max(width, unicode::decode_utf8(label).size());
  }
  std::ostringstream out;
  auto pad = [&](const std::string& s) {
    out << s << std::string(width - unicode::decode_utf8(s).size() + 2, ' ');
  };
  pad("label");
  out << "count\n";
  for (const auto& [label, count] : entries) {
    pad(label);
    out << count << "\n";
  }
  return out.str();
}

UnmappedReport tally_unmapped(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& l : labels) ++counts[l];
  UnmappedReport report;
  report.entries.assign(counts.begin(), counts.end());
  std::sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return report;
}

MergeResult merge_corpus(const std::vector<ingest::ArticleRecord>& records, const MappingTable& table) {
  MergeResult result;
  std::vector<std::string> misses;
  for (const auto& record : records) {
    if (!record.raw_verdict) {
      misses.emplace_back(kMissingLabel);
      continue;
    }
    auto verdict = normalize_verdict(*record.raw_verdict, table);
    if (const auto* miss = std::get_if<Unmapped>(&verdict)) {
      misses.push_back(miss->canonical);
      continue;
    }
    LabeledArticle labeled{record, std::get<VerdictClass>(verdict), std::nullopt};
    if (record.raw_topic) {
      auto domain = normalize_domain(*record.raw_topic, table);
      if (const auto* d = std::get_if<DomainClass>(&domain)) labeled.domain = *d;
    }
    result.dataset.push_back(std::move(labeled));
  }
  result.unmapped = tally_unmapped(misses);
  return result;
}

}  // namespace factcheck::labels
