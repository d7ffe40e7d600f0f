#include "cli/pipeline_config.hpp"

#include <cstdlib>
#include <set>

#include <json.hpp>

#include "factcheck/error.hpp"
#include "factcheck/fs_util.hpp"
#include "factcheck/labels/taxonomy.hpp"

namespace factcheck::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::string_view section, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || k == key;
    if (!ok) throw ParseError("config: unknown key \"" + std::string(section) + key + "\"");
  }
}

template <typename T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key) && !j.at(key).is_null()) into = j.at(key).get<T>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

std::optional<Task> parse_task(std::string_view s) {
  if (s == "veracity-4") return Task::kVeracity4;
  if (s == "domain-6") return Task::kDomain6;
  return std::nullopt;
}

std::optional<Backend> parse_backend(std::string_view s) {
  if (s == "tfidf") return Backend::kTfidf;
  if (s == "remote-encoder") return Backend::kRemoteEncoder;
  return std::nullopt;
}

std::string_view task_name(Task t) { return t == Task::kVeracity4 ? "veracity-4" : "domain-6"; }

std::vector<std::string> task_classes(Task t) {
  std::vector<std::string> names;
  if (t == Task::kVeracity4) {
    for (auto c : labels::kAllVerdicts) names.emplace_back(labels::name(c));
  } else {
    for (auto c : labels::kAllDomains) names.emplace_back(labels::name(c));
  }
  return names;
}

PipelineConfig PipelineConfig::parse(std::string_view json_text, const std::filesystem::path& base_dir) {
  PipelineConfig c;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ParseError("config: top level must be an object");
    reject_unknown(j, "", {"sites_dir", "mapping_table_path", "corpus_path", "model_path", "task", "backend",
                           "seed", "train", "textprep", "encoder", "crawl"});
    std::string s;
    if (j.contains("sites_dir")) c.sites_dir = j["sites_dir"].get<std::string>();
    if (j.contains("mapping_table_path")) c.mapping_table_path = j["mapping_table_path"].get<std::string>();
    if (j.contains("corpus_path")) c.corpus_path = j["corpus_path"].get<std::string>();
    if (j.contains("model_path")) c.model_path = j["model_path"].get<std::string>();
    if (j.contains("task")) {
      auto t = parse_task(j["task"].get<std::string>());
      if (!t) throw ParseError("config: task must be veracity-4 or domain-6");
      c.task = *t;
    }
    if (j.contains("backend")) {
      auto b = parse_backend(j["backend"].get<std::string>());
      if (!b) throw ParseError("config: backend must be tfidf or remote-encoder");
      c.backend = *b;
    }
    read(j, "seed", c.seed);

    if (j.contains("train")) {
      const auto& t = j["train"];
      reject_unknown(t, "train.", {"epochs", "batch_size", "learning_rate", "val_fraction", "patience", "l2"});
      read(t, "epochs", c.train.epochs);
      read(t, "batch_size", c.train.batch_size);
      read(t, "learning_rate", c.train.learning_rate);
      read(t, "val_fraction", c.train.val_fraction);
      read(t, "patience", c.train.patience);
      read(t, "l2", c.train.l2);
    }
    if (j.contains("textprep")) {
      const auto& t = j["textprep"];
      reject_unknown(t, "textprep.", {"min_df", "max_terms"});
      read(t, "min_df", c.textprep.min_df);
      read(t, "max_terms", c.textprep.max_terms);
    }
    if (j.contains("encoder")) {
      const auto& e = j["encoder"];
      reject_unknown(e, "encoder.", {"endpoint", "dims", "timeout_ms", "batch_limit", "max_in_flight"});
      read(e, "endpoint", c.encoder.endpoint);
      read(e, "dims", c.encoder.dims);
      if (e.contains("timeout_ms")) c.encoder.timeout = std::chrono::milliseconds(e["timeout_ms"].get<std::int64_t>());
      read(e, "batch_limit", c.encoder.batch_limit);
      read(e, "max_in_flight", c.encoder.max_in_flight);
    }
    if (j.contains("crawl")) {
      const auto& k = j["crawl"];
      reject_unknown(k, "crawl.", {"user_agent", "timeout_ms", "default_rate_limit_ms", "max_redirects", "respect_robots"});
      read(k, "user_agent", c.fetch.user_agent);
      if (k.contains("timeout_ms")) c.fetch.timeout = std::chrono::milliseconds(k["timeout_ms"].get<std::int64_t>());
      if (k.contains("default_rate_limit_ms")) {
        c.default_rate_limit = std::chrono::milliseconds(k["default_rate_limit_ms"].get<std::int64_t>());
      }
      read(k, "max_redirects", c.fetch.max_redirects);
      read(k, "respect_robots", c.fetch.respect_robots);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  c.sites_dir = resolve(base_dir, c.sites_dir);
  c.mapping_table_path = resolve(base_dir, c.mapping_table_path);
  c.corpus_path = resolve(base_dir, c.corpus_path);
  c.model_path = resolve(base_dir, c.model_path);
  c.train.seed = c.seed;
  return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  try {
    return parse(read_file(path), path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void PipelineConfig::apply_environment() {
  if (const char* endpoint = std::getenv(kEncoderEndpointEnv); endpoint && *endpoint) {
    encoder.endpoint = endpoint;
  }
}

void PipelineConfig::validate() const {
  for (const auto* p : {&sites_dir, &mapping_table_path, &corpus_path, &model_path}) {
    if (p->empty()) throw InvalidArgument("config: paths must be nonempty");
  }
  train.validate();
  if (textprep.min_df < 1 || textprep.max_terms < 1) {
    throw InvalidArgument("config: textprep.min_df and textprep.max_terms must be >= 1");
  }
  if (default_rate_limit.count() < 0) throw InvalidArgument("config: crawl.default_rate_limit_ms < 0");
}

}  // namespace factcheck::cli
