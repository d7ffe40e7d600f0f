#include <doctest.h>

#include <filesystem>
#include <random>

#include "factcheck/error.hpp"
#include "factcheck/fs_util.hpp"
#include "factcheck/labels/mapping_table.hpp"

using namespace factcheck;
using namespace factcheck::labels;

namespace {

ingest::ArticleRecord with_verdict(std::optional<std::string> v) {
  ingest::ArticleRecord r;
  r.canonical_url = "https://x.example/" + v.value_or("none");
  r.title = "t";
  r.body_text = "b";
  r.raw_verdict = std::move(v);
  return r;
}

std::string random_label(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"Mostly", "TRUE", "false", "  ", "!", "-", "half", "\xE2\x80\x94",
                                                  "Caf\xC3\xA9", "\t", "Pants", "on", "Fire", "?", "\xC3\x9C", "..."};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), len(0, 6);
  std::string s;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += pieces[pick(rng)] + (pick(rng) % 2 ? " " : "");
  return s;
}

}  // namespace

TEST_SUITE("labels") {
  TEST_CASE("canonicalize_label examples") {
    CHECK(canonicalize_label("  Mostly TRUE! ") == "mostly true");
    CHECK(canonicalize_label("FALSE.") == "false");
    CHECK(canonicalize_label("") == "");
    CHECK(canonicalize_label("Pants-on-Fire") == "pants on fire");
    CHECK(canonicalize_label("COVID-19") == "covid 19");
    CHECK(canonicalize_label("\xE2\x80\x9C" "Unproven" "\xE2\x80\x9D") == "unproven");
    CHECK(canonicalize_label("\xC3\x89LECTION") == "\xC3\xA9lection");
  }

  TEST_CASE("property: canonicalize_label is idempotent and lookups ignore formatting") {
    std::mt19937_64 rng(3);
    const auto& table = seed_mapping_table();
    for (int i = 0; i < 500; ++i) {
      const auto raw = random_label(rng);
      const auto once = canonicalize_label(raw);
      CHECK(canonicalize_label(once) == once);
      CHECK(normalize_verdict(raw, table) == normalize_verdict(once, table));
      CHECK(normalize_domain(raw, table) == normalize_domain(once, table));
      CHECK(once.find("  ") == std::string::npos);
      CHECK((once.empty() || (once.front() != ' ' && once.back() != ' ')));
    }
  }

  TEST_CASE("normalize_verdict examples") {
    const auto& t = seed_mapping_table();
    CHECK(normalize_verdict("Mostly True", t) == Outcome<VerdictClass>{VerdictClass::kPartiallyFalse});
    CHECK(normalize_verdict("miscaptioned", t) == Outcome<VerdictClass>{VerdictClass::kPartiallyFalse});
    CHECK(normalize_verdict("totally bogus claim xyz", t) == Outcome<VerdictClass>{Unmapped{"totally bogus claim xyz"}});
  }

  TEST_CASE("normalize_domain examples") {
    const auto& t = seed_mapping_table();
    CHECK(normalize_domain("COVID-19", t) == Outcome<DomainClass>{DomainClass::kHealth});
    CHECK(normalize_domain("election", t) == Outcome<DomainClass>{DomainClass::kElection});
    CHECK(normalize_domain("astrology", t) == Outcome<DomainClass>{Unmapped{"astrology"}});
  }

  TEST_CASE("seed table covers the enumerated partially-false synonyms") {
    const auto& t = seed_mapping_table();
    CHECK(t.verdict_entries.size() >= 40);
    for (const char* s : {"partially false", "partially true", "mostly true", "miscaptioned", "misleading"}) {
      CAPTURE(s);
      REQUIRE(t.verdict_entries.contains(s));
      CHECK(t.verdict_entries.at(s) == VerdictClass::kPartiallyFalse);
    }
    CHECK(t.verdict_entries.at("pants on fire") == VerdictClass::kFalse);
    CHECK(t.verdict_entries.at("unproven") == VerdictClass::kOther);
    CHECK(t.verdict_entries.at("half true") == VerdictClass::kPartiallyFalse);
    for (const auto& [k, v] : t.verdict_entries) CHECK(canonicalize_label(k) == k);
    for (const auto& [k, v] : t.domain_entries) CHECK(canonicalize_label(k) == k);
  }

  TEST_CASE("shipped mapping table equals the built-in seed") {
    const auto shipped = load_mapping_table(std::filesystem::path(FACTCHECK_DATA_DIR) / "mapping_table.json");
    CHECK(shipped == seed_mapping_table());
  }

  TEST_CASE("table round trip") {
    const auto& t = seed_mapping_table();
    CHECK(parse_mapping_table(serialize_mapping_table(t)) == t);
    MappingTable custom;
    custom.version = 7;
    custom.verdict_entries["four pinocchios"] = VerdictClass::kFalse;
    custom.domain_entries["school"] = DomainClass::kEducation;
    const auto back = parse_mapping_table(serialize_mapping_table(custom));
    CHECK(back == custom);
    CHECK(back.version == 7);
  }

  TEST_CASE("loader rejects bad tables precisely") {
    CHECK_THROWS_WITH_AS(parse_mapping_table(R"({"version":1,"verdicts":{"Mostly True":"partially_false"},"domains":{}})"),
                         doctest::Contains("Mostly True"), ParseError);
    CHECK_THROWS_AS(parse_mapping_table(R"({"version":1,"verdicts":{"x":"maybe"},"domains":{}})"), ParseError);
    CHECK_THROWS_AS(parse_mapping_table(R"({"version":1,"verdicts":{},"domains":{"x":"sports"}})"), ParseError);
    CHECK_THROWS_AS(parse_mapping_table(R"({"verdicts":{},"domains":{}})"), ParseError);
    CHECK_THROWS_AS(parse_mapping_table("[]"), ParseError);
  }

  TEST_CASE("merge_corpus example") {
    const auto result = merge_corpus({with_verdict("false"), with_verdict("mostly true"), with_verdict("gibberish")},
                                     seed_mapping_table());
    REQUIRE(result.dataset.size() == 2);
    CHECK(result.dataset[0].verdict == VerdictClass::kFalse);
    CHECK(result.dataset[1].verdict == VerdictClass::kPartiallyFalse);
    REQUIRE(result.unmapped.entries.size() == 1);
    CHECK(result.unmapped.entries[0] == std::pair<std::string, std::size_t>{"gibberish", 1});
  }

  TEST_CASE("merge_corpus edge cases") {
    const auto empty = merge_corpus({}, seed_mapping_table());
    CHECK(empty.dataset.empty());
    CHECK(empty.unmapped.entries.empty());

    const auto all = merge_corpus({with_verdict("True"), with_verdict("Hoax")}, seed_mapping_table());
    CHECK(all.dataset.size() == 2);
    CHECK(all.unmapped.entries.empty());

    const auto missing = merge_corpus({with_verdict(std::nullopt), with_verdict(std::nullopt)}, seed_mapping_table());
    REQUIRE(missing.unmapped.entries.size() == 1);
    CHECK(missing.unmapped.entries[0].first == kMissingLabel);
    CHECK(missing.unmapped.entries[0].second == 2);
  }

  TEST_CASE("property: merge conservation and report order") {
    std::mt19937_64 rng(17);
    const std::vector<std::optional<std::string>> pool = {"false", "True", "zzz", "qqq", "Mostly true", std::nullopt,
                                                          "qqq", "yyy", "satire"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(0, 40);
    for (int i = 0; i < 200; ++i) {
      std::vector<ingest::ArticleRecord> records;
      const auto n = len(rng);
      for (std::size_t j = 0; j < n; ++j) records.push_back(with_verdict(pool[pick(rng)]));
      const auto r = merge_corpus(records, seed_mapping_table());
      CHECK(r.dataset.size() + r.unmapped.total() == records.size());
      for (std::size_t j = 1; j < r.unmapped.entries.size(); ++j) {
        const auto& a = r.unmapped.entries[j - 1];
        const auto& b = r.unmapped.entries[j];
        CHECK((a.second > b.second || (a.second == b.second && a.first < b.first)));
      }
    }
  }

  TEST_CASE("unmapped report forms") {
    const auto report = tally_unmapped({"b", "a", "b", "c"});
    CHECK(report.to_tsv() == "label\tcount\nb\t2\na\t1\nc\t1\n");
    CHECK(report.to_table().find("b") != std::string::npos);
    CHECK(tally_unmapped({}).to_tsv() == "label\tcount\n");
  }

  TEST_CASE("taxonomy names") {
    CHECK(kAllVerdicts.size() == 4);
    CHECK(kAllDomains.size() == 6);
    for (auto v : kAllVerdicts) CHECK(parse_verdict_class(name(v)) == v);
    for (auto d : kAllDomains) CHECK(parse_domain_class(name(d)) == d);
    CHECK_FALSE(parse_verdict_class("maybe").has_value());
  }
}
