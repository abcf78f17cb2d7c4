#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

namespace varimin::cli {

// Pretty JSON with every floating-point value printed to 17 significant
// digits (non-finite values become null).
std::string dump_json(const nlohmann::json& j);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace varimin::cli
