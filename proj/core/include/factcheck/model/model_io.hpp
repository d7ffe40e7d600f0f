#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "factcheck/model/classifier.hpp"

namespace factcheck::model {

inline constexpr int kModelFormatVersion = 1;

/// Text header ("factcheck-model 1", classes, dim, class_names,
/// feature_space, "end"), then b and W as little-endian IEEE-754 doubles,
/// W row-major. Round-trips bit-exactly.
std::string serialize_model(const ModelParams& params);
ModelParams parse_model(std::string_view bytes);

void save_model(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_model(const std::filesystem::path& path);

}  // namespace factcheck::model
