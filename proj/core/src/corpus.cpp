#include "factcheck/corpus.hpp"

#include <json.hpp>

#include "factcheck/error.hpp"
#include "factcheck/fs_util.hpp"

namespace factcheck {
namespace {

using ojson = nlohmann::ordered_json;

ojson optional_string(const std::optional<std::string>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::string required_string(const ojson& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(std::string("corpus line: field \"") + key + "\" must be a string");
  }
  return j[key].get<std::string>();
}

std::optional<std::string> nullable_string(const ojson& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) throw ParseError(std::string("corpus line: field \"") + key + "\" must be a string or null");
  return j[key].get<std::string>();
}

}  // namespace

std::string to_json_line(const CorpusLine& line) {
  const auto& r = line.record;
  ojson j;
  j["record_id"] = r.record_id;
  j["canonical_url"] = r.canonical_url;
  j["site_id"] = r.site_id;
  j["title"] = r.title;
  j["published_at"] = optional_string(r.published_at);
  j["body_text"] = r.body_text;
  j["raw_verdict"] = optional_string(r.raw_verdict);
  j["raw_topic"] = optional_string(r.raw_topic);
  j["verdict_class"] = line.verdict_class ? ojson(std::string(labels::name(*line.verdict_class))) : ojson(nullptr);
  j["domain_class"] = line.domain_class ? ojson(std::string(labels::name(*line.domain_class))) : ojson(nullptr);
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

CorpusLine parse_corpus_line(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corpus line: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("corpus line: not an object");
  CorpusLine line;
  auto& r = line.record;
  r.record_id = required_string(j, "record_id");
  r.canonical_url = required_string(j, "canonical_url");
  r.site_id = required_string(j, "site_id");
  r.title = required_string(j, "title");
  r.published_at = nullable_string(j, "published_at");
  r.body_text = required_string(j, "body_text");
  r.raw_verdict = nullable_string(j, "raw_verdict");
  r.raw_topic = nullable_string(j, "raw_topic");
  if (auto v = nullable_string(j, "verdict_class")) {
    line.verdict_class = labels::parse_verdict_class(*v);
    if (!line.verdict_class) throw ParseError("corpus line: unknown verdict_class \"" + *v + "\"");
  }
  if (auto d = nullable_string(j, "domain_class")) {
    line.domain_class = labels::parse_domain_class(*d);
    if (!line.domain_class) throw ParseError("corpus line: unknown domain_class \"" + *d + "\"");
  }
  return line;
}

std::vector<CorpusLine> parse_corpus(std::string_view text) {
  std::vector<CorpusLine> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(parse_corpus_line(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string serialize_corpus(const std::vector<CorpusLine>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += to_json_line(l);
    out.push_back('\n');
  }
  return out;
}

std::vector<CorpusLine> read_corpus(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  try {
    return parse_corpus(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_corpus(const std::filesystem::path& path, const std::vector<CorpusLine>& lines) {
  write_file_atomic(path, serialize_corpus(lines));
}

}  // namespace factcheck
