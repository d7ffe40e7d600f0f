#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli_runner.hpp"
#include "factcheck/corpus.hpp"
#include "factcheck/fs_util.hpp"
#include "factcheck/hashing.hpp"
#include "factcheck/model/model_io.hpp"
#include "fixture_server.hpp"
#include "cli/pipeline_config.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace factcheck;
using factcheck::testing::run_cli;
using factcheck::testing::TempDir;

namespace {

const std::filesystem::path kFixtures = FACTCHECK_FIXTURE_DIR;

std::string config_path(const TempDir& dir, const std::string& extra = "") {
  const auto path = dir / "factcheck.json";
  write_file_atomic(path, R"({"sites_dir": "sites", "mapping_table_path": ")" +
                              (std::filesystem::path(FACTCHECK_DATA_DIR) / "mapping_table.json").string() +
                              R"(", "corpus_path": "corpus.jsonl", "model_path": "model.bin",
                                  "crawl": {"default_rate_limit_ms": 0})" +
                              extra + "}");
  return path.string();
}

CorpusLine labeled(const std::string& id, std::string text, std::optional<labels::VerdictClass> v,
                   std::optional<labels::DomainClass> d = std::nullopt) {
  CorpusLine line;
  line.record.canonical_url = "https://synthetic.example/" + id;
  line.record.record_id = id;
  line.record.site_id = "synthetic";
  line.record.title = "doc " + id;
  line.record.body_text = std::move(text);
  line.verdict_class = v;
  line.domain_class = d;
  return line;
}

std::vector<CorpusLine> synthetic_lines(std::size_t classes, std::size_t per_class) {
  std::vector<CorpusLine> out;
  const auto docs = factcheck::testing::synthetic_corpus(classes, per_class, 77);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out.push_back(labeled("s" + std::to_string(i), docs[i].text, labels::kAllVerdicts[docs[i].label],
                          labels::kAllDomains[docs[i].label]));
  }
  return out;
}

std::vector<nlohmann::json> jsonl(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("help and usage errors") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"train", "--no-such-flag"}).code == 2);
    CHECK(run_cli({"train", "--task", "sports"}).code == 2);
    CHECK(run_cli({"--config", "/nonexistent/factcheck.json", "train"}).code == 2);
  }

  TEST_CASE("config parsing rejects unknown keys") {
    TempDir dir;
    const auto cfg = config_path(dir, R"(, "colour": "blue")");
    const auto r = run_cli({"--config", cfg, "normalize"});
    CHECK(r.code == 2);
    CHECK(r.err.find("colour") != std::string::npos);
  }

  TEST_CASE("example config parses with documented defaults") {
    const auto cfg = cli::PipelineConfig::load(std::filesystem::path(FACTCHECK_SOURCE_DIR) / "factcheck.example.json");
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.train.batch_size == 10);
    CHECK(cfg.sites_dir == std::filesystem::path(FACTCHECK_SOURCE_DIR) / "sites");
  }

  TEST_CASE("crawl: empty sites dir") {
    TempDir dir;
    std::filesystem::create_directories(dir / "sites");
    const auto r = run_cli({"--config", config_path(dir), "crawl"});
    CHECK(r.code == 2);
    CHECK(r.err.find("no site profiles found") != std::string::npos);
  }

  TEST_CASE("crawl: fixture site, rerun adds no duplicates") {
    factcheck::testing::FixtureServer server(kFixtures / "sites" / "mockcheck");
    TempDir dir;
    std::filesystem::create_directories(dir / "sites");
    write_file_atomic(dir / "sites" / "mockcheck.json",
                      R"({"site_id": "mockcheck", "seed_urls": [")" + server.url("/") +
                          R"("], "rate_limit_ms": 0, "article_url_pattern": "^/articles/",
                          "extraction_rules": {"title": "h1.headline", "body": "div.article-body p",
                          "published_at": "time@datetime", "raw_verdict": ".rating", "raw_topic": ".tag"}})");
    const auto cfg = config_path(dir);
    auto r = run_cli({"--config", cfg, "crawl", "--budget", "10"});
    REQUIRE(r.code == 0);
    const auto first = read_file(dir / "corpus.jsonl");
    CHECK(read_corpus(dir / "corpus.jsonl").size() == 3);
    CHECK(r.out.find("mockcheck") != std::string::npos);

    r = run_cli({"--config", cfg, "crawl", "--budget", "10"});
    REQUIRE(r.code == 0);
    CHECK(read_file(dir / "corpus.jsonl") == first);

    CHECK(run_cli({"--config", cfg, "crawl", "--site", "nosuchsite"}).code == 2);
  }

  TEST_CASE("normalize: hand-enumerated example, idempotent") {
    TempDir dir;
    const auto cfg = config_path(dir);
    CHECK(run_cli({"--config", cfg, "normalize"}).code == 2);  // no corpus yet

    std::vector<CorpusLine> lines;
    for (const auto& [id, verdict] : std::vector<std::pair<std::string, std::string>>{
             {"a", "false"}, {"b", "mostly true"}, {"c", "gibberish"}}) {
      auto l = labeled(id, "text", std::nullopt);
      l.record.raw_verdict = verdict;
      l.record.raw_topic = "COVID-19";
      lines.push_back(l);
    }
    write_corpus(dir / "corpus.jsonl", lines);
    auto r = run_cli({"--config", cfg, "normalize"});
    REQUIRE(r.code == 0);
    const auto out = read_corpus(dir / "corpus.jsonl");
    CHECK(out[0].verdict_class == labels::VerdictClass::kFalse);
    CHECK(out[1].verdict_class == labels::VerdictClass::kPartiallyFalse);
    CHECK_FALSE(out[2].verdict_class.has_value());
    for (const auto& l : out) CHECK(l.domain_class == labels::DomainClass::kHealth);
    CHECK(read_file(dir / "corpus.jsonl.unmapped.tsv") == "label\tcount\ngibberish\t1\n");
    CHECK(read_file(dir / "corpus.jsonl.unmapped_domains.tsv") == "label\tcount\n");

    const auto corpus1 = read_file(dir / "corpus.jsonl");
    const auto report1 = read_file(dir / "corpus.jsonl.unmapped.tsv");
    const auto r2 = run_cli({"--config", cfg, "normalize"});
    CHECK(r2.code == 0);
    CHECK(r2.out == r.out);
    CHECK(read_file(dir / "corpus.jsonl") == corpus1);
    CHECK(read_file(dir / "corpus.jsonl.unmapped.tsv") == report1);

    const auto r3 = run_cli({"--config", cfg, "--mapping-table", "/nonexistent.json", "normalize"});
    CHECK(r3.code == 2);
  }

  TEST_CASE("normalize: all labels mappable gives an empty report") {
    TempDir dir;
    auto l = labeled("a", "text", std::nullopt);
    l.record.raw_verdict = "True";
    l.record.raw_topic = "Economy";
    write_corpus(dir / "corpus.jsonl", {l});
    REQUIRE(run_cli({"--config", config_path(dir), "normalize"}).code == 0);
    CHECK(read_file(dir / "corpus.jsonl.unmapped.tsv") == "label\tcount\n");
  }

  TEST_CASE("train: single class is a data error") {
    TempDir dir;
    write_corpus(dir / "corpus.jsonl", {labeled("a", "x y", labels::VerdictClass::kTrue),
                                        labeled("b", "x z", labels::VerdictClass::kTrue)});
    const auto r = run_cli({"--config", config_path(dir), "train"});
    CHECK(r.code == 3);
    CHECK(r.err.find("2 classes") != std::string::npos);
    CHECK(run_cli({"--config", config_path(dir), "--corpus", (dir / "none.jsonl").string(), "train"}).code == 2);
  }

  TEST_CASE("train, predict, evaluate end to end") {
    TempDir dir;
    const auto cfg = config_path(dir, R"(, "train": {"epochs": 40, "learning_rate": 0.1})");
    write_corpus(dir / "corpus.jsonl", synthetic_lines(4, 25));
    auto r = run_cli({"--config", cfg, "train"});
    REQUIRE(r.code == 0);
    const auto model1 = read_file(dir / "model.bin");
    CHECK(std::filesystem::exists(dir / "model.bin.vocab"));
    CHECK(read_file(dir / "model.bin.history.tsv").find("train_loss") != std::string::npos);

    REQUIRE(run_cli({"--config", cfg, "train"}).code == 0);
    CHECK(read_file(dir / "model.bin") == model1);
    CHECK(sha256_hex(read_file(dir / "model.bin")) == sha256_hex(model1));

    // training records go in, their gold labels come out
    r = run_cli({"--config", cfg, "predict", "--input", (dir / "corpus.jsonl").string()});
    REQUIRE(r.code == 0);
    const auto preds = jsonl(r.out);
    const auto gold = read_corpus(dir / "corpus.jsonl");
    REQUIRE(preds.size() == gold.size());
    std::size_t right = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      CHECK(preds[i]["record_id"] == gold[i].record.record_id);
      CHECK(preds[i]["probs"].size() == 4);
      right += preds[i]["label"] == labels::name(*gold[i].verdict_class);
    }
    CHECK(right == preds.size());

    write_file_atomic(dir / "preds.jsonl", r.out);
    r = run_cli({"--config", cfg, "evaluate", "--predictions", (dir / "preds.jsonl").string()});
    REQUIRE(r.code == 0);
    const auto report = nlohmann::json::parse(read_file(dir / "preds.jsonl.metrics.json"));
    CHECK(report["macro_f1"].get<double>() == 1.0);
    CHECK(std::filesystem::exists(dir / "preds.jsonl.metrics.txt"));

    // raw text lines work too
    r = run_cli({"--config", cfg, "predict"}, "c0t1 c0t2 c0t3 noise1\n\n" + gold[30].record.body_text + "\n");
    REQUIRE(r.code == 0);
    const auto raw = jsonl(r.out);
    REQUIRE(raw.size() == 2);
    CHECK(raw[0]["record_id"] == "line-1");
    CHECK(raw[0]["label"] == "true");
    CHECK(raw[1]["record_id"] == "line-3");
    CHECK(raw[1]["label"] == "false");

    r = run_cli({"--config", cfg, "predict"}, "");
    CHECK(r.code == 0);
    CHECK(r.out.empty());

    r = run_cli({"--config", cfg, "--task", "domain-6", "predict"}, "text\n");
    CHECK(r.code == 2);
  }

  TEST_CASE("evaluate: [[2,0],[1,1]] as files, disjoint ids") {
    TempDir dir;
    const auto cfg = config_path(dir);
    write_corpus(dir / "corpus.jsonl", {labeled("r1", "x", labels::VerdictClass::kTrue),
                                        labeled("r2", "x", labels::VerdictClass::kTrue),
                                        labeled("r3", "x", labels::VerdictClass::kFalse),
                                        labeled("r4", "x", labels::VerdictClass::kFalse)});
    write_file_atomic(dir / "preds.jsonl",
                      "{\"record_id\":\"r1\",\"label\":\"true\"}\n{\"record_id\":\"r2\",\"label\":\"true\"}\n"
                      "{\"record_id\":\"r3\",\"label\":\"true\"}\n{\"record_id\":\"r4\",\"label\":\"false\"}\n");
    auto r = run_cli({"--config", cfg, "evaluate", "--predictions", (dir / "preds.jsonl").string(), "--report",
                      (dir / "rep").string()});
    REQUIRE(r.code == 0);
    const auto report = nlohmann::json::parse(read_file(dir / "rep.json"));
    CHECK(std::abs(report["macro_f1"].get<double>() - 11.0 / 15) < 1e-12);
    CHECK(read_file(dir / "rep.txt") == r.out);

    write_file_atomic(dir / "other.jsonl", "{\"record_id\":\"zz\",\"label\":\"true\"}\n");
    r = run_cli({"--config", cfg, "evaluate", "--predictions", (dir / "other.jsonl").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("r1") != std::string::npos);

    write_file_atomic(dir / "bad.jsonl", "{\"record_id\":\"r1\",\"label\":\"health\"}\n");
    CHECK(run_cli({"--config", cfg, "evaluate", "--predictions", (dir / "bad.jsonl").string()}).code == 2);
  }

  TEST_CASE("domain task trains on domain labels") {
    TempDir dir;
    const auto cfg = config_path(dir, R"(, "task": "domain-6", "train": {"epochs": 30, "learning_rate": 0.1})");
    write_corpus(dir / "corpus.jsonl", synthetic_lines(6, 15));
    REQUIRE(run_cli({"--config", cfg, "train"}).code == 0);
    const auto model = model::load_model(dir / "model.bin");
    CHECK(model.num_classes == 6);
    CHECK(model.class_names.front() == "health");
    CHECK(run_cli({"--config", cfg, "--task", "veracity-4", "predict"}, "x\n").code == 2);
  }
}
