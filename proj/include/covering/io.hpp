#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "covering/space.hpp"

namespace covering {

inline constexpr const char* kSchemaTag = "greedy-cover/1";

nlohmann::json space_to_json(const SpaceDescriptor& space);
SpaceDescriptor space_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(const SpaceDescriptor& space, const Point& p);
Point point_from_json(const SpaceDescriptor& space, const nlohmann::json& j);

// Square CSV distance matrix (one row per line, comma separated).
std::vector<std::vector<double>> load_distance_csv(const std::filesystem::path& path);
std::vector<double> load_vector_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace covering
