// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "fdedit/render.hpp"

namespace fdedit {

struct DatasetOptions {
    double depth_tolerance = 0.02;
    /// Background pixels are matched by rotation against background in the
    /// other view, so empty regions take part in the comparison.
    bool background_at_infinity = true;
};

struct DatasetPair {
    std::string kind;  ///< "short" or "long"
    int src = 0;
    int dst = 0;
    std::string flow;  ///< file name of the 3-channel (u, v, valid) PFM
    double valid_fraction = 0.0;
};

struct DatasetView {
    int index = 0;
    std::string color;
    std::string depth;
    std::string feature;
    Camera camera;
};

struct DatasetManifest {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t feature_dim = 0;
    std::vector<DatasetView> views;
    std::vector<DatasetPair> pairs;
    nlohmann::json raw;  ///< the manifest as written
};

/// Adjacent (short) and first-to-last (long) pair indices for a path of n views.
std::vector<DatasetPair> dataset_pairs(int views);

std::string view_name(int index, const char* suffix);
std::string flow_name(int src, int dst);

/// 64-bit FNV-1a of a file's bytes.
std::uint64_t file_hash(const std::filesystem::path& path);

/// Renders every camera, writes view_%03d.png / .depth.pfm / .feat.pfm,
/// flow_%03d_%03d.pfm for each pair (flow from src pixels into dst) and
/// manifest.json with per-file hashes. Throws ConfigError for fewer than two
/// cameras or cameras of different sizes, IoError when the directory cannot
/// be written.
DatasetManifest make_pair_dataset(const FieldScene& scene, const std::vector<Camera>& cams, const RenderConfig& cfg,
                                  const std::filesystem::path& out_dir, const DatasetOptions& opts = {});

DatasetManifest load_manifest(const std::filesystem::path& dir);

/// Splits a 3-channel flow PFM into its (u, v, valid) planes.
GtFlow read_flow(const std::filesystem::path& path);
void write_flow(const GtFlow& flow, const std::filesystem::path& path);

}  // namespace fdedit
