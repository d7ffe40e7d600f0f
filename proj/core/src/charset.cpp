#include "factcheck/ingest/charset.hpp"

#include <iconv.h>

#include <cctype>
#include <cerrno>

#include "factcheck/unicode.hpp"

namespace factcheck::ingest {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<std::string> value_after_charset(std::string_view text) {
  const auto pos = text.find("charset");
  if (pos == std::string_view::npos) return std::nullopt;
  std::size_t i = pos + 7;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size() || text[i] != '=') return std::nullopt;
  ++i;
  while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '"' || text[i] == '\'')) ++i;
  const std::size_t start = i;
  while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '-' || text[i] == '_' ||
                             text[i] == ':' || text[i] == '.')) {
    ++i;
  }
  if (i == start) return std::nullopt;
  return std::string(text.substr(start, i - start));
}

class Iconv {
 public:
  explicit Iconv(const std::string& from) : cd_(iconv_open("UTF-8", from.c_str())) {}
  ~Iconv() {
    if (ok()) iconv_close(cd_);
  }
  Iconv(const Iconv&) = delete;
  Iconv& operator=(const Iconv&) = delete;
  bool ok() const { return cd_ != reinterpret_cast<iconv_t>(-1); }
  iconv_t get() const { return cd_; }

 private:
  iconv_t cd_;
};

}  // namespace

std::optional<std::string> charset_from_content_type(std::string_view content_type) {
  return value_after_charset(lower(content_type));
}

std::optional<std::string> sniff_meta_charset(std::string_view html) {
  const std::string head = lower(html.substr(0, 1024));
  std::size_t pos = 0;
  while ((pos = head.find("<meta", pos)) != std::string::npos) {
    const auto end = head.find('>', pos);
    const std::string_view tag = std::string_view(head).substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (auto cs = value_after_charset(tag)) return cs;
    if (end == std::string::npos) break;
    pos = end;
  }
  return std::nullopt;
}

std::string to_utf8(std::string_view bytes, std::string_view charset) {
  const std::string cs = lower(charset);
  if (cs.empty() || cs == "utf-8" || cs == "utf8" || cs == "us-ascii" || cs == "ascii") {
    return unicode::sanitize_utf8(bytes);
  }
  Iconv conv(cs);
  if (!conv.ok()) return unicode::sanitize_utf8(bytes);

  std::string out;
  out.reserve(bytes.size() * 2);
  std::string input(bytes);
  char* in = input.data();
  std::size_t in_left = input.size();
  char buffer[4096];
  while (in_left > 0) {
    char* dst = buffer;
    std::size_t dst_left = sizeof(buffer);
    const std::size_t rc = iconv(conv.get(), &in, &in_left, &dst, &dst_left);
    out.append(buffer, static_cast<std::size_t>(dst - buffer));
    if (rc == static_cast<std::size_t>(-1)) {
      if (errno == E2BIG) continue;
      // EILSEQ or truncated input: replace one byte and carry on.
      unicode::append_utf8(out, unicode::kReplacement);
      ++in;
      --in_left;
      iconv(conv.get(), nullptr, nullptr, nullptr, nullptr);
    }
  }
  return unicode::sanitize_utf8(out);
}

}  // namespace factcheck::ingest
