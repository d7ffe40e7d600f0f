#include "factcheck/model/model_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>

#include "factcheck/error.hpp"
#include "factcheck/fs_util.hpp"

namespace factcheck::model {
namespace {

constexpr std::string_view kMagic = "factcheck-model";

void put_double(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>(bits & 0xFF));
    bits >>= 8;
  }
}

double get_double(std::string_view bytes, std::size_t offset) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) {
    bits = (bits << 8) | static_cast<unsigned char>(bytes[offset + static_cast<std::size_t>(i)]);
  }
  return std::bit_cast<double>(bits);
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("model: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string_view take_line(std::string_view bytes, std::size_t& pos, std::string_view what) {
  const auto nl = bytes.find('\n', pos);
  if (nl == std::string_view::npos) throw ParseError("model: truncated header at " + std::string(what));
  auto line = bytes.substr(pos, nl - pos);
  pos = nl + 1;
  return line;
}

std::string_view expect_key(std::string_view line, std::string_view key) {
  if (!line.starts_with(key) || line.size() < key.size() + 1 || line[key.size()] != ' ') {
    throw ParseError("model: expected '" + std::string(key) + "' line, got '" + std::string(line) + "'");
  }
  return line.substr(key.size() + 1);
}

}  // namespace

std::string serialize_model(const ModelParams& params) {
  params.validate();
  std::string out;
  out += std::string(kMagic) + " " + std::to_string(kModelFormatVersion) + "\n";
  out += "classes " + std::to_string(params.num_classes) + "\n";
  out += "dim " + std::to_string(params.dim) + "\n";
  out += "class_names ";
  for (std::size_t k = 0; k < params.class_names.size(); ++k) {
    const auto& name = params.class_names[k];
    if (name.empty() || name.find_first_of("\t\n") != std::string::npos) {
      throw InvalidArgument("model: class name must be nonempty without tabs or newlines");
    }
    if (k) out.push_back('\t');
    out += name;
  }
  out += "\n";
  if (params.feature_space.find('\n') != std::string::npos) throw InvalidArgument("model: newline in feature_space");
  out += "feature_space " + params.feature_space + "\n";
  out += "end\n";
  out.reserve(out.size() + 8 * (params.bias.size() + params.weights.size()));
  for (double b : params.bias) put_double(out, b);
  for (double w : params.weights) put_double(out, w);
  return out;
}

ModelParams parse_model(std::string_view bytes) {
  std::size_t pos = 0;
  const auto magic = take_line(bytes, pos, "magic");
  if (magic != std::string(kMagic) + " " + std::to_string(kModelFormatVersion)) {
    throw ParseError("model: unsupported header '" + std::string(magic.substr(0, 40)) + "'");
  }
  ModelParams p;
  p.num_classes = parse_size(expect_key(take_line(bytes, pos, "classes"), "classes"), "classes");
  p.dim = parse_size(expect_key(take_line(bytes, pos, "dim"), "dim"), "dim");
  std::string_view names = expect_key(take_line(bytes, pos, "class_names"), "class_names");
  while (true) {
    const auto tab = names.find('\t');
    p.class_names.emplace_back(names.substr(0, tab));
    if (tab == std::string_view::npos) break;
    names.remove_prefix(tab + 1);
  }
  const auto fs_line = take_line(bytes, pos, "feature_space");
  if (fs_line == "feature_space") {
    p.feature_space.clear();
  } else {
    p.feature_space = std::string(expect_key(fs_line, "feature_space"));
  }
  if (take_line(bytes, pos, "end") != "end") throw ParseError("model: missing 'end' line");
  if (p.class_names.size() != p.num_classes) throw ParseError("model: class_names count does not match classes");

  const std::size_t count = p.num_classes + p.num_classes * p.dim;
  if (bytes.size() - pos != count * 8) {
    throw ParseError("model: payload has " + std::to_string(bytes.size() - pos) + " bytes, expected " +
                     std::to_string(count * 8));
  }
  p.bias.resize(p.num_classes);
  p.weights.resize(p.num_classes * p.dim);
  for (auto& b : p.bias) {
    b = get_double(bytes, pos);
    pos += 8;
  }
  for (auto& w : p.weights) {
    w = get_double(bytes, pos);
    pos += 8;
  }
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return p;
}

void save_model(const ModelParams& params, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(params));
}

ModelParams load_model(const std::filesystem::path& path) {
  try {
    return parse_model(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace factcheck::model
