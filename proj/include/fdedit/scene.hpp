// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "json.hpp"

#include "fdedit/image.hpp"
#include "fdedit/style.hpp"

namespace fdedit {

/// Isotropic Gaussian density lump with constant colour and feature.
struct Blob {
    Vec3 center{0.0, 0.0, 0.0};
    double radius = 0.5;
    double peak_density = 10.0;
    Vec3 color{0.5, 0.5, 0.5};
    std::vector<double> feature;
};

/// Analytic radiance + feature field. Density is the sum of the blob
/// densities; colour and feature at a point are the density-weighted mixture
/// of the blob attributes. Nothing depends on the viewing direction.
struct FieldScene {
    std::vector<Blob> blobs;
    Vec3 background{0.0, 0.0, 0.0};
    std::size_t feature_dim = 8;

    void validate() const;

    /// Density at x; writes the mixed colour and feature (feature_dim entries)
    /// when density > 0, zeros otherwise.
    double sample(const Vec3& x, Vec3& color, double* feature) const;
    double density(const Vec3& x) const;
};

/// Pinhole camera. `rotation` maps camera axes to world axes (columns: right,
/// down, forward). Pixel (i, j) has its centre at camera-plane coordinates
/// ((j + 0.5 - W/2) / f, (i + 0.5 - H/2) / f, 1); rays are parameterised by
/// camera-space depth z in [near, far].
struct Camera {
    Vec3 position{0.0, 0.0, 0.0};
    Mat3 rotation = identity3();
    double focal = 64.0;
    std::size_t width = 64;
    std::size_t height = 64;
    double near = 1.0;
    double far = 10.0;

    void validate() const;

    /// World-space direction whose camera-space z component is 1.
    Vec3 ray_direction(double px, double py) const;
    /// Pixel-index coordinates and camera depth of a world point.
    struct Projection {
        double px, py, z;
    };
    Projection project(const Vec3& world) const;
    /// Projection of a direction (a point at infinity); z is the camera-space
    /// component along the optical axis.
    Projection project_direction(const Vec3& dir) const;

    static Camera look_at(const Vec3& position, const Vec3& target, const Vec3& up, double focal,
                          std::size_t width, std::size_t height, double near, double far);
};

struct RenderConfig {
    int samples_per_ray = 128;
    bool stratified_jitter = false;
    std::uint64_t seed = 0;
    /// Accumulated opacity below which depth is reported as undefined (0).
    double depth_min_weight = 1e-3;

    void validate() const;
};

/// Per-pixel k-vectors, row-major, interleaved.
struct FeatureMap {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t dim = 0;
    std::vector<double> data;

    FeatureMap() = default;
    FeatureMap(std::size_t h, std::size_t w, std::size_t k) : height(h), width(w), dim(k), data(h * w * k, 0.0) {}

    double& at(std::size_t y, std::size_t x, std::size_t k) { return data[(y * width + x) * dim + k]; }
    double at(std::size_t y, std::size_t x, std::size_t k) const { return data[(y * width + x) * dim + k]; }

    /// Planes stacked vertically: a single-channel (dim * height) x width image.
    Image planar() const;
    static FeatureMap from_planar(const Image& planes, std::size_t dim);

    friend bool operator==(const FeatureMap&, const FeatureMap&) = default;
};

/// Orbit of `count` cameras on a horizontal circle around `target`, spanning
/// `arc_degrees` starting at the -z side.
struct OrbitConfig {
    int count = 8;
    double radius = 4.0;
    double arc_degrees = 30.0;
    double elevation = 0.0;
    Vec3 target{0.0, 0.0, 0.0};
    double focal = 64.0;
    std::size_t width = 64;
    std::size_t height = 64;
    double near = 1.5;
    double far = 6.5;
};

std::vector<Camera> orbit_cameras(const OrbitConfig& cfg);

struct RandomSceneConfig {
    int count = 40;
    std::uint64_t seed = 1;
    std::size_t feature_dim = 8;
    Vec3 extent{1.0, 1.0, 0.6};  ///< centres uniform in [-extent, extent]
    double min_radius = 0.08;
    double max_radius = 0.3;
    double peak_density = 40.0;
    Vec3 background{0.2, 0.25, 0.3};
};

FieldScene make_random_scene(const RandomSceneConfig& cfg);

/// Scene description file: scene, camera path and render settings.
struct SceneFile {
    FieldScene scene;
    std::vector<Camera> cameras;
    RenderConfig render;
};

nlohmann::json to_json(const Camera& cam);
Camera camera_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FieldScene& scene);
nlohmann::json to_json(const SceneFile& file);

/// Accepts explicit "blobs", a seeded "random_blobs" block, explicit
/// "cameras" and/or an "orbit" block, plus an optional "render" block.
SceneFile scene_file_from_json(const nlohmann::json& j);
SceneFile load_scene_file(const std::filesystem::path& path);

}  // namespace fdedit
