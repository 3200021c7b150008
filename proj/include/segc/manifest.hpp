#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "segc/errors.hpp"

namespace segc {

/// Ordered list of image/mask file pairs forming one dataset.
struct DatasetManifest {
    struct Item {
        std::filesystem::path image;
        std::filesystem::path mask;
    };

    std::string name;
    std::vector<Item> items;
};

inline DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValueError("manifest " + path.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("name") || !j.contains("items"))
        throw ValueError("manifest " + path.string() + ": expected {\"name\", \"items\"}");

    DatasetManifest m;
    m.name = j.at("name").get<std::string>();
    if (!j.at("items").is_array() || j.at("items").empty())
        throw ValueError("manifest " + path.string() + ": items must be a non-empty array");

    const std::filesystem::path base = path.parent_path();
    for (const auto& item : j.at("items")) {
        if (!item.contains("image") || !item.contains("mask"))
            throw ValueError("manifest " + path.string() + ": item missing image or mask path");
        DatasetManifest::Item it;
        it.image = base / item.at("image").get<std::string>();
        it.mask = base / item.at("mask").get<std::string>();
        if (it.image == it.mask)
            throw ValueError("manifest " + path.string() + ": image and mask paths must differ");
        m.items.push_back(std::move(it));
    }
    return m;
}

}  // namespace segc
