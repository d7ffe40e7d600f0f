// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_runner.hpp"
#include "factcheck/corpus.hpp"
#include "factcheck/fs_util.hpp"
#include "factcheck/ingest/crawl.hpp"
#include "factcheck/ingest/extract.hpp"
#include "factcheck/labels/mapping_table.hpp"
#include "factcheck/metrics.hpp"
#include "factcheck/model/encoder_client.hpp"
#include "factcheck/model/train.hpp"
#include "factcheck/text/text_prep.hpp"
#include "factcheck/text/vocabulary.hpp"
#include "fixture_server.hpp"
#include "gradcheck.hpp"
#include "mock_encoder.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

namespace fs = std::filesystem;
using namespace factcheck;
using namespace std::chrono_literals;

namespace {

const fs::path kFixtures = FACTCHECK_FIXTURE_DIR;
const fs::path kData = FACTCHECK_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << v;
  return s.str();
}

// ---- 1: label mapping oracle ------------------------------------------------

Outcome label_oracle() {
  const auto table = labels::load_mapping_table(kData / "mapping_table.json");
  std::ifstream in(kFixtures / "label_oracle.tsv");
  std::string line;
  int total = 0, agree = 0;
  std::vector<std::string> misses;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t'), t2 = line.rfind('\t');
    const std::string kind = line.substr(0, t1), raw = line.substr(t1 + 1, t2 - t1 - 1), want = line.substr(t2 + 1);
    std::string got;
    if (kind == "verdict") {
      const auto o = labels::normalize_verdict(raw, table);
      got = std::holds_alternative<labels::Unmapped>(o) ? "unmapped" : std::string(labels::name(std::get<0>(o)));
    } else {
      const auto o = labels::normalize_domain(raw, table);
      got = std::holds_alternative<labels::Unmapped>(o) ? "unmapped" : std::string(labels::name(std::get<0>(o)));
    }
    ++total;
    if (got == want) {
      ++agree;
    } else {
      misses.push_back("'" + raw + "' -> " + got + " (want " + want + ")");
    }
  }
  bool synonyms = true;
  for (const char* s : {"partially false", "partially true", "mostly true", "miscaptioned", "misleading"}) {
    synonyms = synonyms && table.verdict_entries.contains(s) &&
               table.verdict_entries.at(s) == labels::VerdictClass::kPartiallyFalse;
  }
  Outcome o;
  o.pass = total >= 40 && agree == total && synonyms;
  o.detail = std::to_string(agree) + "/" + std::to_string(total) + " fixture labels agree";
  if (!misses.empty()) o.detail += "; first miss " + misses.front();
  if (!synonyms) o.detail += "; enumerated partially-false synonyms missing";
  return o;
}

// ---- 2: gradient check --------------------------------------------------------

Outcome gradient() {
  const auto r = factcheck::testing::gradient_check(100, 20240601);
  return {r.instances == 100 && r.max_relative_error <= 1e-4,
          std::to_string(r.instances) + " instances, max relative error " + std::to_string(r.max_relative_error) +
              " (limit 1e-4)"};
}

// ---- 3: metrics oracle ---------------------------------------------------------

Outcome metrics_oracle() {
  struct Case {
    std::vector<std::vector<std::uint64_t>> rows;
    double macro, weighted, accuracy;
  };
  // values worked out by hand as exact fractions
  const std::vector<Case> cases = {
      {{{2, 0}, {1, 1}}, 11.0 / 15, 11.0 / 15, 3.0 / 4},
      {{{2, 0}, {2, 1}}, 7.0 / 12, 17.0 / 30, 3.0 / 5},
      {{{3, 0, 0}, {0, 2, 0}, {0, 0, 5}}, 1.0, 1.0, 1.0},
      {{{0, 1}, {1, 0}}, 0.0, 0.0, 0.0},
      {{{5, 1, 0}, {2, 3, 1}, {0, 0, 4}},
       (10.0 / 13 + 3.0 / 5 + 8.0 / 9) / 3,
       (6 * 10.0 / 13 + 6 * 3.0 / 5 + 4 * 8.0 / 9) / 16,
       12.0 / 16},
      {{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, 2.0 / 3, 1.0, 1.0},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    metrics::ConfusionMatrix cm;
    cm.num_classes = c.rows.size();
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      cm.class_names.push_back(std::to_string(i));
      cm.counts.insert(cm.counts.end(), c.rows[i].begin(), c.rows[i].end());
    }
    const auto r = metrics::score(cm);
    worst = std::max({worst, std::abs(r.macro_f1 - c.macro), std::abs(r.weighted_f1 - c.weighted),
                      std::abs(r.accuracy - c.accuracy)});
  }
  return {worst <= 1e-12,
          std::to_string(cases.size()) + " matrices, max abs deviation " + std::to_string(worst) + " (limit 1e-12)"};
}

// ---- 4, 5: synthetic corpora ----------------------------------------------------

Outcome synthetic_task(std::size_t classes) {
  const auto docs = factcheck::testing::synthetic_corpus(classes, 100, 1000 + classes);
  std::vector<text::TokenSeq> train_tokens, test_tokens;
  std::vector<std::size_t> train_labels, test_labels;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto tokens = text::tokenize(text::clean_text(docs[i].text));
    const bool held_out = i % 100 >= 80;  // 80/20 within every class
    (held_out ? test_tokens : train_tokens).push_back(std::move(tokens));
    (held_out ? test_labels : train_labels).push_back(docs[i].label);
  }
  const auto vocab = text::build_vocabulary(train_tokens, text::VocabularySettings{});
  std::vector<model::Example> train;
  for (std::size_t i = 0; i < train_tokens.size(); ++i) {
    train.push_back({text::vectorize_tfidf(train_tokens[i], vocab), train_labels[i]});
  }
  std::vector<std::string> names;
  for (std::size_t k = 0; k < classes; ++k) names.push_back("class" + std::to_string(k));
  const auto result = model::train(train, names, vocab.size(), model::TrainConfig{});

  std::vector<std::size_t> preds;
  for (const auto& t : test_tokens) preds.push_back(model::predict(result.params, text::vectorize_tfidf(t, vocab)).class_id);
  const auto report = metrics::score(metrics::confusion(test_labels, preds, classes, names));
  return {report.macro_f1 >= 0.95,
          std::to_string(docs.size()) + " docs, " + std::to_string(test_labels.size()) + " held out, macro F1 " +
              fmt(report.macro_f1, 4) + " (threshold 0.95), epochs " + std::to_string(result.history.epochs.size())};
}

// ---- 6: extraction golden tests --------------------------------------------------

Outcome golden_extraction() {
  const auto dir = kFixtures / "golden";
  const auto profile = ingest::load_site_profile(dir / "profile.json");
  const auto cases = nlohmann::json::parse(read_file(dir / "cases.json"));
  std::istringstream expected(read_file(dir / "expected.jsonl"));
  std::size_t exact = 0;
  std::string first_diff;
  for (const auto& c : cases) {
    std::string want;
    std::getline(expected, want);
    ingest::FetchResult page;
    page.url = c["url"];
    page.status = 200;
    page.content_type = c["content_type"];
    page.body_bytes = read_file(dir / c["file"].get<std::string>());
    const auto got = to_json_line(CorpusLine{ingest::extract_article(page, profile), std::nullopt, std::nullopt});
    if (got == want) {
      ++exact;
    } else if (first_diff.empty()) {
      first_diff = c["file"].get<std::string>();
    }
  }

  ingest::FetchResult bare;
  bare.url = "https://gold.example/bare";
  bare.status = 200;
  bare.content_type = "text/html";
  bare.body_bytes = "<h1 class=headline>T</h1><div class=article-body>B</div>";
  const auto rec = ingest::extract_article(bare, profile);
  const bool optional_ok = !rec.raw_verdict && !rec.raw_topic && !rec.published_at;

  bool pdf_rejected = false;
  bare.content_type = "application/pdf";
  try {
    ingest::extract_article(bare, profile);
  } catch (const ingest::UnsupportedContentError&) {
    pdf_rejected = true;
  }

  Outcome o;
  o.pass = cases.size() >= 5 && exact == cases.size() && optional_ok && pdf_rejected;
  o.detail = std::to_string(exact) + "/" + std::to_string(cases.size()) + " pages byte-exact";
  if (!first_diff.empty()) o.detail += " (first mismatch " + first_diff + ")";
  o.detail += std::string(", optional fields ") + (optional_ok ? "absent" : "WRONG") + ", pdf " +
              (pdf_rejected ? "rejected" : "ACCEPTED");
  return o;
}

// ---- 7: determinism --------------------------------------------------------------

ingest::SiteProfile mockcheck_profile(const factcheck::testing::FixtureServer& server, std::chrono::milliseconds rate) {
  ingest::SiteProfile p;
  p.site_id = "mockcheck";
  p.seed_urls = {server.url("/")};
  p.rate_limit = rate;
  p.article_url_pattern = "^/articles/";
  p.extraction_rules = {{"title", "h1.headline"}, {"body", "div.article-body p"}, {"published_at", "time@datetime"},
                        {"raw_verdict", ".rating"}, {"raw_topic", ".tag"}};
  return p;
}

std::vector<ingest::ArticleRecord> crawl_records(const ingest::SiteProfile& profile) {
  ingest::Politeness politeness(0ms);
  std::vector<ingest::ArticleRecord> out;
  ingest::crawl_site(profile, 10, politeness, [&](ingest::ArticleRecord r) { out.push_back(std::move(r)); });
  return ingest::dedupe(std::move(out));
}

Outcome determinism() {
  factcheck::testing::TempDir dir;
  const auto docs = factcheck::testing::synthetic_corpus(4, 100, 7);
  std::vector<CorpusLine> lines;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CorpusLine l;
    l.record.canonical_url = "https://synthetic.example/" + std::to_string(i);
    l.record.record_id = ingest::record_id_for(l.record.canonical_url);
    l.record.site_id = "synthetic";
    l.record.title = "doc";
    l.record.body_text = docs[i].text;
    l.verdict_class = labels::kAllVerdicts[docs[i].label];
    lines.push_back(std::move(l));
  }
  write_corpus(dir / "corpus.jsonl", lines);
  write_file_atomic(dir / "factcheck.json", R"({"corpus_path": "corpus.jsonl", "model_path": "model.bin", "seed": 11})");
  const auto cfg = (dir / "factcheck.json").string();

  const auto r1 = factcheck::testing::run_cli({"--config", cfg, "train"});
  const auto m1 = read_file(dir / "model.bin");
  const auto h1 = read_file(dir / "model.bin.history.tsv");
  const auto r2 = factcheck::testing::run_cli({"--config", cfg, "train"});
  const auto m2 = read_file(dir / "model.bin");
  const auto h2 = read_file(dir / "model.bin.history.tsv");
  const bool models_same = r1.code == 0 && r2.code == 0 && m1 == m2 && h1 == h2;

  factcheck::testing::FixtureServer server(kFixtures / "sites" / "mockcheck");
  const auto c1 = crawl_records(mockcheck_profile(server, 0ms));
  const auto c2 = crawl_records(mockcheck_profile(server, 0ms));
  std::vector<CorpusLine> l1, l2;
  for (const auto& r : c1) l1.push_back({r, std::nullopt, std::nullopt});
  for (const auto& r : c2) l2.push_back({r, std::nullopt, std::nullopt});
  const bool crawls_same = !c1.empty() && serialize_corpus(l1) == serialize_corpus(l2);

  return {models_same && crawls_same, std::string("model files ") + (models_same ? "identical" : "DIFFER") + " (" +
                                          std::to_string(m1.size()) + " bytes), crawl corpora " +
                                          (crawls_same ? "identical" : "DIFFER") + " (" + std::to_string(c1.size()) +
                                          " records)"};
}

// ---- 8: encoder protocol ----------------------------------------------------------

Outcome encoder_protocol() {
  // "t<n>" -> [n, -n]; "pos..." / "neg..." separable on the first axis
  auto embed = [](const std::string& t) -> std::vector<double> {
    if (t.starts_with("t")) {
      const double n = std::stod(t.substr(1));
      return {n, -n};
    }
    const double sign = t.starts_with("pos") ? 1.0 : -1.0;
    const double jitter = static_cast<double>(std::hash<std::string>{}(t) % 1000) / 1000.0;
    return {sign * (1.0 + jitter), jitter - 0.5};
  };
  factcheck::testing::MockEncoder mock(2, embed);
  model::EncoderBackendRef backend;
  backend.endpoint = mock.endpoint();
  backend.dims = 2;
  backend.batch_limit = 10;

  std::vector<std::string> numbered;
  for (int i = 0; i < 25; ++i) numbered.push_back("t" + std::to_string(i));
  const auto out = model::embed_remote(numbered, backend);
  bool ordered = out.size() == 25;
  for (int i = 0; ordered && i < 25; ++i) ordered = out[i] == embed(numbered[i]);
  const bool batched = mock.batch_sizes() == std::vector<std::size_t>{10, 10, 5};

  bool mismatch_rejected = false;
  mock.set_reported_dims(3);
  try {
    model::embed_remote({"t1"}, backend);
  } catch (const model::EncoderProtocolError& e) {
    mismatch_rejected = std::string(e.what()).find("expected 2, got 3") != std::string::npos;
  }
  mock.set_reported_dims(2);

  std::vector<std::string> train_texts, test_texts;
  std::vector<std::size_t> train_labels, test_labels;
  for (int i = 0; i < 50; ++i) {
    const bool pos = i % 2 == 0;
    const std::string text = (pos ? "pos " : "neg ") + std::to_string(i);
    (i < 40 ? train_texts : test_texts).push_back(text);
    (i < 40 ? train_labels : test_labels).push_back(pos ? 0 : 1);
  }
  const auto train_vecs = model::embed_remote(train_texts, backend);
  const auto test_vecs = model::embed_remote(test_texts, backend);
  std::vector<model::Example> train;
  for (std::size_t i = 0; i < train_vecs.size(); ++i) {
    train.push_back({text::FeatureVector::from_dense(train_vecs[i]), train_labels[i]});
  }
  const auto result = model::train(train, {"pos", "neg"}, 2, model::TrainConfig{}, "encoder:dims=2");
  std::size_t right = 0;
  for (std::size_t i = 0; i < test_vecs.size(); ++i) {
    right += model::predict(result.params, text::FeatureVector::from_dense(test_vecs[i])).class_id == test_labels[i];
  }
  const bool separable = right == test_vecs.size();

  return {ordered && batched && mismatch_rejected && separable,
          std::string("order ") + (ordered ? "kept" : "BROKEN") + ", batches " + (batched ? "10,10,5" : "WRONG") +
              ", dims mismatch " + (mismatch_rejected ? "rejected" : "ACCEPTED") + ", held-out accuracy " +
              std::to_string(right) + "/" + std::to_string(test_vecs.size())};
}

// ---- 9: politeness ------------------------------------------------------------------

Outcome politeness() {
  constexpr auto kRate = 300ms;
  constexpr auto kSlack = 50ms;
  factcheck::testing::FixtureServer server(kFixtures / "sites" / "mockcheck");
  {
    ingest::Politeness state(0ms);
    ingest::crawl_site(mockcheck_profile(server, kRate), 10, state, [](ingest::ArticleRecord) {});
  }
  const auto log = server.requests();
  auto min_gap = std::chrono::steady_clock::duration::max();
  for (std::size_t i = 1; i < log.size(); ++i) min_gap = std::min(min_gap, log[i].arrived - log[i - 1].arrived);
  const bool gaps_ok = log.size() >= 5 && min_gap >= kRate - kSlack;

  factcheck::testing::FixtureServer robots(kFixtures / "sites" / "robotsite");
  auto profile = mockcheck_profile(robots, 100ms);
  profile.site_id = "robotsite";
  {
    ingest::Politeness state(0ms);
    ingest::crawl_site(profile, 10, state, [](ingest::ArticleRecord) {});
  }
  std::size_t private_hits = 0, total = 0;
  for (const auto& p : robots.request_paths()) {
    ++total;
    private_hits += p.starts_with("/private/");
  }
  const auto gap_ms = std::chrono::duration_cast<std::chrono::milliseconds>(min_gap).count();
  return {gaps_ok && private_hits == 0 && total > 0,
          std::to_string(log.size()) + " requests, min gap " + std::to_string(gap_ms) + "ms (need >= " +
              std::to_string((kRate - kSlack).count()) + "ms), disallowed requests " + std::to_string(private_hits)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "label-mapping oracle", 1, label_oracle},
      {2, "gradient check", 10, gradient},
      {3, "metrics oracle", 1, metrics_oracle},
      {4, "synthetic 4-class veracity analog", 10, [] { return synthetic_task(4); }},
      {5, "synthetic 6-class domain analog", 15, [] { return synthetic_task(6); }},
      {6, "extraction golden tests", 1, golden_extraction},
      {7, "determinism", 20, determinism},
      {8, "encoder protocol conformance", 5, encoder_protocol},
      {9, "politeness", 10, politeness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail
              << " [" << fmt(secs, 3) << "s / limit " << c.limit_s << "s" << (in_time ? "" : ", TOO SLOW") << "]\n";
    std::cout.flush();
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failures ? 1 : 0;
}
