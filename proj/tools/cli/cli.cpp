#include "cli/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/pipeline_config.hpp"
#include "factcheck/error.hpp"

namespace factcheck::cli {
namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string task;
  std::string backend;
  std::string corpus;
  std::string model;
  std::string sites_dir;
  std::string mapping_table;
};

PipelineConfig resolve_config(const Overrides& o) {
  PipelineConfig config;
  if (!o.config_path.empty()) {
    if (!fs::exists(o.config_path)) throw CommandError(kExitInput, "config not found: " + o.config_path);
    config = PipelineConfig::load(o.config_path);
  } else if (fs::exists("factcheck.json")) {
    config = PipelineConfig::load("factcheck.json");
  }
  config.apply_environment();
  if (o.seed) {
    config.seed = *o.seed;
    config.train.seed = *o.seed;
  }
  if (!o.task.empty()) {
    const auto t = parse_task(o.task);
    if (!t) throw CommandError(kExitInput, "--task must be veracity-4 or domain-6");
    config.task = *t;
  }
  if (!o.backend.empty()) {
    const auto b = parse_backend(o.backend);
    if (!b) throw CommandError(kExitInput, "--backend must be tfidf or remote-encoder");
    config.backend = *b;
  }
  if (!o.corpus.empty()) config.corpus_path = o.corpus;
  if (!o.model.empty()) config.model_path = o.model;
  if (!o.sites_dir.empty()) config.sites_dir = o.sites_dir;
  if (!o.mapping_table.empty()) config.mapping_table_path = o.mapping_table;
  config.validate();
  return config;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fact-check corpus builder and claim classifier", "factcheck"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "pipeline config JSON (default: ./factcheck.json if present)");
  app.add_option("--seed", o.seed, "random seed for splits and shuffling");
  app.add_option("--task", o.task, "veracity-4 or domain-6");
  app.add_option("--backend", o.backend, "tfidf or remote-encoder");
  app.add_option("--corpus", o.corpus, "corpus JSONL path");

  CrawlOptions crawl_opts;
  auto* crawl = app.add_subcommand("crawl", "fetch and extract articles from configured sites");
  crawl->add_option("--sites-dir", o.sites_dir, "directory of site profile JSON files");
  crawl->add_option("--site", crawl_opts.sites, "only crawl these site ids")->take_all();
  crawl->add_option("--budget", crawl_opts.budget, "max pages per site");

  auto* normalize = app.add_subcommand("normalize", "map raw verdicts and topics onto the label taxonomy");
  normalize->add_option("--mapping-table", o.mapping_table, "mapping table JSON");

  auto* train = app.add_subcommand("train", "train a classifier on the labeled corpus");
  train->add_option("--model", o.model, "output model path");

  PredictOptions predict_opts;
  auto* predict = app.add_subcommand("predict", "classify JSONL records or raw text lines");
  predict->add_option("--model", o.model, "model path");
  predict->add_option("--input", predict_opts.input, "input file, - for stdin");
  predict->add_option("--output", predict_opts.output, "output file, - for stdout");

  EvaluateOptions eval_opts;
  std::string gold, predictions, report;
  auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold labels");
  evaluate->add_option("--gold", gold, "gold corpus (default: the corpus)");
  evaluate->add_option("--predictions", predictions, "predictions JSONL")->required();
  evaluate->add_option("--report", report, "report path prefix (default: <predictions>.metrics)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitInput;
  }

  try {
    const PipelineConfig config = resolve_config(o);
    if (*crawl) {
      cmd_crawl(config, crawl_opts, out);
    } else if (*normalize) {
      cmd_normalize(config, out);
    } else if (*train) {
      cmd_train(config, out);
    } else if (*predict) {
      cmd_predict(config, predict_opts, in, out);
    } else if (*evaluate) {
      if (!gold.empty()) eval_opts.gold = gold;
      eval_opts.predictions = predictions;
      if (!report.empty()) eval_opts.report_prefix = report;
      cmd_evaluate(config, eval_opts, out);
    }
    return kExitOk;
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(argc, argv, std::cin, out, err);
}

}  // namespace factcheck::cli
