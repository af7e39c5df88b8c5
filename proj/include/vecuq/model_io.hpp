#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vecuq/rank.hpp"

namespace vecuq {

inline constexpr int kModelFormatVersion = 1;

// JSON model file. Doubles are written with round-trip precision so a
// reloaded model scores bit-identically.
std::string serialize_model(const RankModel& model);
RankModel deserialize_model(std::string_view json_text);

void save_model(const RankModel& model, const std::filesystem::path& path);
RankModel load_model(const std::filesystem::path& path);

}  // namespace vecuq
