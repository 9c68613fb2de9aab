#pragma once

#include "sortclust/model.hpp"

#include "json.hpp"

#include <filesystem>

namespace sortclust {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const ClusterModel& model);

/// Throws InputError for documents that are not a valid model.
ClusterModel model_from_json(const nlohmann::json& doc);

void save_model(const ClusterModel& model, const std::filesystem::path& path);
ClusterModel load_model(const std::filesystem::path& path);

}  // namespace sortclust
