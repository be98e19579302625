#pragma once

#include "tpcscan/extraction/identify.hpp"
#include "tpcscan/extraction/types.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace tpcscan::extraction {

struct UnpackConfig {
    /// Containers nested deeper than this are recorded but not opened.
    int max_depth = 3;
    std::size_t output_limit = std::size_t{256} << 20;
    IdentifyConfig identify;
};

struct UnpackResult {
    std::vector<CarvedRegion> regions;
    std::vector<ExtractedObject> objects;
    std::vector<std::string> warnings;
    FirmwareInfo info;
};

/// Carves, decompresses and extracts recursively, then classifies the image.
/// Object paths look like "<offset-hex>-<kind>/<member path>", nesting one
/// prefix per container level.
UnpackResult unpack(const FirmwareImage& image, const UnpackConfig& config = {});

/// Manifest: image id, FirmwareInfo, regions, object paths with sha256.
nlohmann::json manifest_json(const FirmwareImage& image, const UnpackResult& result);

nlohmann::json to_json(const FirmwareInfo& info);
FirmwareInfo firmware_info_from_json(const nlohmann::json& j);

/// Writes every object under `root`, mirroring object paths.
void write_objects(const UnpackResult& result, const std::filesystem::path& root);

} // namespace tpcscan::extraction
