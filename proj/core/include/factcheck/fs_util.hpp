#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace factcheck {

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Throws ParseError if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace factcheck
