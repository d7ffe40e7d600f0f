#include "cli/commands.hpp"

#include "cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "factcheck/corpus.hpp"
#include "factcheck/error.hpp"
#include "factcheck/fs_util.hpp"
#include "factcheck/hashing.hpp"
#include "factcheck/ingest/crawl.hpp"
#include "factcheck/labels/mapping_table.hpp"
#include "factcheck/metrics.hpp"
#include "factcheck/model/encoder_client.hpp"
#include "factcheck/model/model_io.hpp"
#include "factcheck/model/train.hpp"
#include "factcheck/text/text_prep.hpp"
#include "factcheck/text/vocabulary.hpp"

namespace factcheck::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out += suffix;
  return out;
}

fs::path vocab_path(const PipelineConfig& c) { return with_suffix(c.model_path, ".vocab"); }
fs::path history_path(const PipelineConfig& c) { return with_suffix(c.model_path, ".history.tsv"); }

std::optional<std::size_t> gold_label(const CorpusLine& line, Task task) {
  if (task == Task::kVeracity4) {
    if (!line.verdict_class) return std::nullopt;
    return static_cast<std::size_t>(*line.verdict_class);
  }
  if (!line.domain_class) return std::nullopt;
  return static_cast<std::size_t>(*line.domain_class);
}

std::string model_text(const ingest::ArticleRecord& r) { return r.title + "\n" + r.body_text; }

std::string encoder_feature_space(std::size_t dims) { return "encoder:dims=" + std::to_string(dims); }

std::vector<CorpusLine> require_corpus(const fs::path& path) {
  if (!fs::exists(path)) throw CommandError(kExitInput, "corpus not found: " + path.string());
  return read_corpus(path);
}

std::vector<text::FeatureVector> embed(const std::vector<std::string>& texts, const PipelineConfig& config) {
  const auto dense = model::embed_remote(texts, config.encoder);
  std::vector<text::FeatureVector> out;
  out.reserve(dense.size());
  for (const auto& v : dense) out.push_back(text::FeatureVector::from_dense(v));
  return out;
}

std::string join_first(const std::vector<std::string>& items, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < std::min(n, items.size()); ++i) out += "\n  " + items[i];
  if (items.size() > n) out += "\n  ... (" + std::to_string(items.size() - n) + " more)";
  return out;
}

}  // namespace

void cmd_crawl(const PipelineConfig& config, const CrawlOptions& options, std::ostream& out) {
  auto profiles = ingest::load_site_profiles(config.sites_dir);
  if (!options.sites.empty()) {
    std::set<std::string> wanted(options.sites.begin(), options.sites.end());
    std::erase_if(profiles, [&](const auto& p) { return !wanted.contains(p.site_id); });
    for (const auto& p : profiles) wanted.erase(p.site_id);
    if (!wanted.empty()) throw CommandError(kExitInput, "unknown site: " + *wanted.begin());
  }
  if (profiles.empty()) throw CommandError(kExitInput, "no site profiles found in " + config.sites_dir.string());

  ingest::Politeness politeness(config.default_rate_limit);
  const std::size_t budget = options.budget.value_or(static_cast<std::size_t>(-1));

  struct SiteResult {
    std::vector<ingest::ArticleRecord> records;
    ingest::CrawlReport report;
  };
  std::vector<std::future<SiteResult>> running;
  for (const auto& profile : profiles) {
    running.push_back(std::async(std::launch::async, [&config, &politeness, &profile, budget] {
      SiteResult r;
      r.report = ingest::crawl_site(
          profile, budget, politeness, [&r](ingest::ArticleRecord rec) { r.records.push_back(std::move(rec)); },
          config.fetch);
      return r;
    }));
  }

  std::vector<CorpusLine> corpus = read_corpus(config.corpus_path);
  std::unordered_set<std::string> known;
  for (const auto& line : corpus) known.insert(line.record.canonical_url);

  std::size_t added = 0;
  out << std::left << std::setw(20) << "site" << "fetched  extracted  failed  skipped\n";
  std::vector<std::string> errors;
  for (auto& f : running) {
    SiteResult r = f.get();
    for (auto& rec : ingest::dedupe(std::move(r.records))) {
      if (!known.insert(rec.canonical_url).second) continue;
      corpus.push_back(CorpusLine{std::move(rec), std::nullopt, std::nullopt});
      ++added;
    }
    const auto& rep = r.report;
    out << std::left << std::setw(20) << rep.site_id << std::right << std::setw(7) << rep.fetched << std::setw(11)
        << rep.extracted << std::setw(8) << rep.failed << std::setw(9) << rep.skipped
        << (rep.seed_unreachable ? "  (seed unreachable)" : "") << std::left << "\n";
    for (const auto& e : rep.errors) errors.push_back(rep.site_id + ": " + e);
  }
  for (const auto& e : errors) out << "  ! " << e << "\n";
  write_corpus(config.corpus_path, corpus);
  out << "added " << added << " new records; corpus has " << corpus.size() << " records\n";
}

void cmd_normalize(const PipelineConfig& config, std::ostream& out) {
  auto corpus = require_corpus(config.corpus_path);
  if (!fs::exists(config.mapping_table_path)) {
    throw CommandError(kExitInput, "mapping table not found: " + config.mapping_table_path.string());
  }
  const auto table = labels::load_mapping_table(config.mapping_table_path);

  std::vector<ingest::ArticleRecord> records;
  records.reserve(corpus.size());
  for (const auto& line : corpus) records.push_back(line.record);
  const auto merged = labels::merge_corpus(records, table);

  std::vector<std::string> domain_misses;
  for (auto& line : corpus) {
    line.verdict_class.reset();
    line.domain_class.reset();
    if (line.record.raw_verdict) {
      const auto v = labels::normalize_verdict(*line.record.raw_verdict, table);
      if (const auto* cls = std::get_if<labels::VerdictClass>(&v)) line.verdict_class = *cls;
    }
    if (line.record.raw_topic) {
      const auto d = labels::normalize_domain(*line.record.raw_topic, table);
      if (const auto* cls = std::get_if<labels::DomainClass>(&d)) {
        line.domain_class = *cls;
      } else {
        domain_misses.push_back(std::get<labels::Unmapped>(d).canonical);
      }
    } else {
      domain_misses.emplace_back(labels::kMissingLabel);
    }
  }
  const auto domain_report = labels::tally_unmapped(domain_misses);

  write_corpus(config.corpus_path, corpus);
  write_file_atomic(with_suffix(config.corpus_path, ".unmapped.tsv"), merged.unmapped.to_tsv());
  write_file_atomic(with_suffix(config.corpus_path, ".unmapped_domains.tsv"), domain_report.to_tsv());

  out << "mapping table version " << table.version << "\n";
  out << "verdicts: " << merged.dataset.size() << " of " << corpus.size() << " records labeled\n";
  if (!merged.unmapped.entries.empty()) out << "\nunmapped verdicts\n" << merged.unmapped.to_table();
  out << "domains: " << corpus.size() - domain_report.total() << " of " << corpus.size() << " records labeled\n";
}

void cmd_train(const PipelineConfig& config, std::ostream& out) {
  const auto corpus = require_corpus(config.corpus_path);
  const auto classes = task_classes(config.task);

  std::vector<const CorpusLine*> usable;
  std::set<std::size_t> present;
  for (const auto& line : corpus) {
    if (auto label = gold_label(line, config.task)) {
      usable.push_back(&line);
      present.insert(*label);
    }
  }
  if (present.size() < 2) {
    throw CommandError(kExitData, "task " + std::string(task_name(config.task)) + " needs labeled examples of at least 2 classes; corpus has " +
                                      std::to_string(usable.size()) + " labeled records in " +
                                      std::to_string(present.size()) + " class(es) (run `normalize` first?)");
  }

  std::vector<model::Example> examples;
  examples.reserve(usable.size());
  std::size_t dim = 0;
  std::string feature_space;
  std::optional<text::Vocabulary> vocab;

  if (config.backend == Backend::kTfidf) {
    std::vector<text::TokenSeq> docs;
    docs.reserve(usable.size());
    for (const auto* line : usable) {
      docs.push_back(text::tokenize(text::clean_text(line->record.title, line->record.body_text)));
    }
    vocab = text::build_vocabulary(docs, config.textprep);
    if (vocab->size() == 0) {
      throw CommandError(kExitData, "vocabulary is empty (min_df=" + std::to_string(config.textprep.min_df) + ")");
    }
    dim = vocab->size();
    feature_space = "tfidf:" + sha256_hex(vocab->serialize());
    for (std::size_t i = 0; i < usable.size(); ++i) {
      examples.push_back({text::vectorize_tfidf(docs[i], *vocab), *gold_label(*usable[i], config.task)});
    }
  } else {
    std::vector<std::string> texts;
    for (const auto* line : usable) texts.push_back(model_text(line->record));
    auto vectors = embed(texts, config);
    dim = config.encoder.dims;
    feature_space = encoder_feature_space(dim);
    for (std::size_t i = 0; i < usable.size(); ++i) {
      examples.push_back({std::move(vectors[i]), *gold_label(*usable[i], config.task)});
    }
  }

  const auto result = model::train(examples, classes, dim, config.train, feature_space);
  model::save_model(result.params, config.model_path);
  if (vocab) write_file_atomic(vocab_path(config), vocab->serialize());
  write_file_atomic(history_path(config), result.history.to_tsv());

  const auto& h = result.history;
  out << "trained " << task_name(config.task) << " on " << examples.size() << " examples, dim " << dim << "\n";
  out << "epochs run " << h.epochs.size() << ", best epoch " << h.best_epoch
      << (h.stopped_early ? " (early stop)" : "") << "\n";
  if (!h.epochs.empty()) {
    const auto& best = h.epochs[h.best_epoch - 1];
    out << "train loss " << h.initial_train_loss << " -> " << best.train_loss << ", val loss "
        << h.initial_val_loss << " -> " << best.val_loss << "\n";
  }
  out << "model written to " << config.model_path.string() << "\n";
}

void cmd_predict(const PipelineConfig& config, const PredictOptions& options, std::istream& stdin_stream,
                 std::ostream& out) {
  if (!fs::exists(config.model_path)) throw CommandError(kExitInput, "model not found: " + config.model_path.string());
  const auto params = model::load_model(config.model_path);
  const auto classes = task_classes(config.task);
  if (params.class_names != classes) {
    throw CommandError(kExitInput, "model has " + std::to_string(params.num_classes) + " classes but task " +
                                       std::string(task_name(config.task)) + " needs " +
                                       std::to_string(classes.size()));
  }

  std::vector<std::string> ids, texts;
  auto consume = [&](std::istream& in) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (line.front() == '{') {
        const auto rec = parse_corpus_line(line).record;
        ids.push_back(rec.record_id);
        texts.push_back(model_text(rec));
      } else {
        ids.push_back("line-" + std::to_string(n));
        texts.push_back(line);
      }
    }
  };
  if (options.input == "-") {
    consume(stdin_stream);
  } else {
    std::ifstream in(options.input);
    if (!in) throw CommandError(kExitInput, "cannot open input " + options.input);
    consume(in);
  }

  std::vector<text::FeatureVector> features;
  if (params.feature_space.starts_with("tfidf:")) {
    if (!fs::exists(vocab_path(config))) throw CommandError(kExitInput, "vocabulary not found: " + vocab_path(config).string());
    const auto vocab = text::Vocabulary::parse(read_file(vocab_path(config)));
    if ("tfidf:" + sha256_hex(vocab.serialize()) != params.feature_space) {
      throw CommandError(kExitInput, "vocabulary " + vocab_path(config).string() + " does not belong to this model");
    }
    for (const auto& t : texts) {
      // model_text joins with '\n'; cleaning turns it into the same single space
      features.push_back(text::vectorize_tfidf(text::tokenize(text::clean_text(t)), vocab));
    }
  } else if (params.feature_space.starts_with("encoder:")) {
    if (params.feature_space != encoder_feature_space(config.encoder.dims)) {
      throw CommandError(kExitInput, "model feature space " + params.feature_space + " does not match encoder dims " +
                                         std::to_string(config.encoder.dims));
    }
    if (!texts.empty()) features = embed(texts, config);
  } else {
    throw CommandError(kExitInput, "model has unknown feature space '" + params.feature_space + "'");
  }

  std::string result;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto p = model::predict(params, features[i]);
    ojson j;
    j["record_id"] = ids[i];
    j["label"] = params.class_names[p.class_id];
    j["probs"] = p.probs;
    result += j.dump() + "\n";
  }
  if (options.output == "-") {
    out << result;
  } else {
    write_file_atomic(options.output, result);
  }
}

void cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& options, std::ostream& out) {
  const fs::path gold_path = options.gold.value_or(config.corpus_path);
  const auto gold = require_corpus(gold_path);
  if (!fs::exists(options.predictions)) {
    throw CommandError(kExitInput, "predictions not found: " + options.predictions.string());
  }
  const auto classes = task_classes(config.task);

  std::unordered_map<std::string, std::size_t> predicted;
  std::vector<std::string> pred_order;
  {
    std::istringstream in(read_file(options.predictions));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw CommandError(kExitInput, "predictions line " + std::to_string(n) + ": " + e.what());
      }
      if (!j.is_object() || !j.contains("record_id") || !j.contains("label") || !j["record_id"].is_string() ||
          !j["label"].is_string()) {
        throw CommandError(kExitInput, "predictions line " + std::to_string(n) + ": needs string record_id and label");
      }
      const auto label = j["label"].get<std::string>();
      const auto it = std::find(classes.begin(), classes.end(), label);
      if (it == classes.end()) {
        throw CommandError(kExitInput, "predictions line " + std::to_string(n) + ": label '" + label +
                                           "' is not a " + std::string(task_name(config.task)) + " class");
      }
      const auto id = j["record_id"].get<std::string>();
      if (!predicted.emplace(id, static_cast<std::size_t>(it - classes.begin())).second) {
        throw CommandError(kExitInput, "predictions line " + std::to_string(n) + ": duplicate record_id " + id);
      }
      pred_order.push_back(id);
    }
  }

  std::vector<std::size_t> golds, preds;
  std::vector<std::string> unmatched;
  std::unordered_set<std::string> gold_ids;
  for (const auto& line : gold) {
    const auto label = gold_label(line, config.task);
    if (!label) continue;
    gold_ids.insert(line.record.record_id);
    const auto it = predicted.find(line.record.record_id);
    if (it == predicted.end()) {
      unmatched.push_back(line.record.record_id + " (gold, no prediction)");
      continue;
    }
    golds.push_back(*label);
    preds.push_back(it->second);
  }
  for (const auto& id : pred_order) {
    if (!gold_ids.contains(id)) unmatched.push_back(id + " (prediction, no labeled gold record)");
  }
  if (!unmatched.empty()) {
    throw CommandError(kExitInput, std::to_string(unmatched.size()) + " unmatched record_ids:" + join_first(unmatched, 10));
  }
  if (golds.empty()) throw CommandError(kExitData, "nothing to score: no labeled gold records");

  // Score over the task classes that occur in gold or predictions.
  std::set<std::size_t> used(golds.begin(), golds.end());
  used.insert(preds.begin(), preds.end());
  std::map<std::size_t, std::size_t> remap;
  std::vector<std::string> names;
  for (auto k : used) {
    remap.emplace(k, names.size());
    names.push_back(classes[k]);
  }
  for (auto& g : golds) g = remap.at(g);
  for (auto& p : preds) p = remap.at(p);

  const auto report = metrics::score(metrics::confusion(golds, preds, names.size(), names));
  const fs::path prefix = options.report_prefix.value_or(with_suffix(options.predictions, ".metrics"));
  write_file_atomic(with_suffix(prefix, ".json"), report.to_json());
  write_file_atomic(with_suffix(prefix, ".txt"), report.to_table());
  out << report.to_table();
}

}  // namespace factcheck::cli
