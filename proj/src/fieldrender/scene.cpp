// SPDX-License-Identifier: Apache-2.0
#include "fdedit/scene.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "fdedit/error.hpp"
#include "fdedit/random.hpp"

namespace fdedit {

namespace {

using nlohmann::json;

bool finite3(const Vec3& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 normalized(const Vec3& v) {
    const double n = std::sqrt(dot(v, v));
    if (!(n > 0.0)) throw ConfigError("camera: degenerate look-at vectors");
    return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 vec3_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string("scene: '") + what + "' must be a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json to_json3(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

void FieldScene::validate() const {
    if (!finite3(background)) throw ConfigError("scene: background colour must be finite");
    for (std::size_t i = 0; i < blobs.size(); ++i) {
        const Blob& b = blobs[i];
        const std::string tag = "scene: blob " + std::to_string(i);
        if (!finite3(b.center) || !finite3(b.color)) throw ConfigError(tag + " has non-finite centre or colour");
        if (!(b.radius > 0.0) || !std::isfinite(b.radius)) throw ConfigError(tag + " radius must be positive");
        if (!(b.peak_density >= 0.0) || !std::isfinite(b.peak_density))
            throw ConfigError(tag + " peak density must be >= 0");
        if (b.feature.size() != feature_dim)
            throw ConfigError(tag + " feature length " + std::to_string(b.feature.size()) + " != feature_dim " +
                              std::to_string(feature_dim));
        for (double v : b.feature)
            if (!std::isfinite(v)) throw ConfigError(tag + " feature is not finite");
    }
}

double FieldScene::density(const Vec3& x) const {
    double sigma = 0.0;
    for (const Blob& b : blobs) {
        const Vec3 d = sub(x, b.center);
        sigma += b.peak_density * std::exp(-dot(d, d) / (2.0 * b.radius * b.radius));
    }
    return sigma;
}

double FieldScene::sample(const Vec3& x, Vec3& color, double* feature) const {
    double sigma = 0.0;
    color = {0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < feature_dim; ++k) feature[k] = 0.0;
    for (const Blob& b : blobs) {
        const Vec3 d = sub(x, b.center);
        const double s = b.peak_density * std::exp(-dot(d, d) / (2.0 * b.radius * b.radius));
        if (s == 0.0) continue;
        sigma += s;
        for (int c = 0; c < 3; ++c) color[c] += s * b.color[c];
        for (std::size_t k = 0; k < feature_dim; ++k) feature[k] += s * b.feature[k];
    }
    if (sigma > 0.0) {
        for (int c = 0; c < 3; ++c) color[c] /= sigma;
        for (std::size_t k = 0; k < feature_dim; ++k) feature[k] /= sigma;
    }
    return sigma;
}

void Camera::validate() const {
    if (!finite3(position)) throw ConfigError("camera: position must be finite");
    if (!(focal > 0.0) || !std::isfinite(focal)) throw ConfigError("camera: focal must be positive");
    if (width == 0 || height == 0) throw ConfigError("camera: width and height must be >= 1");
    if (!(near > 0.0) || !(near < far) || !std::isfinite(far))
        throw ConfigError("camera: need 0 < near < far");
    // R^T R = I
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += rotation[k][a] * rotation[k][b];
            if (std::abs(s - (a == b ? 1.0 : 0.0)) > 1e-9) throw ConfigError("camera: rotation is not orthonormal");
        }
}

Vec3 Camera::ray_direction(double px, double py) const {
    const double xc = (px + 0.5 - 0.5 * static_cast<double>(width)) / focal;
    const double yc = (py + 0.5 - 0.5 * static_cast<double>(height)) / focal;
    Vec3 d{};
    for (int r = 0; r < 3; ++r) d[r] = rotation[r][0] * xc + rotation[r][1] * yc + rotation[r][2];
    return d;
}

Camera::Projection Camera::project_direction(const Vec3& dir) const {
    Vec3 c{};
    for (int k = 0; k < 3; ++k) c[k] = rotation[0][k] * dir[0] + rotation[1][k] * dir[1] + rotation[2][k] * dir[2];
    const double z = c[2];
    return {focal * c[0] / z + 0.5 * static_cast<double>(width) - 0.5,
            focal * c[1] / z + 0.5 * static_cast<double>(height) - 0.5, z};
}

Camera::Projection Camera::project(const Vec3& world) const { return project_direction(sub(world, position)); }

Camera Camera::look_at(const Vec3& position, const Vec3& target, const Vec3& up, double focal, std::size_t width,
                       std::size_t height, double near, double far) {
    const Vec3 fwd = normalized(sub(target, position));
    // image y grows downwards, so the camera "down" axis is -up projected.
    const Vec3 right = normalized(cross(fwd, up));
    const Vec3 down = cross(fwd, right);
    Camera cam;
    cam.position = position;
    for (int r = 0; r < 3; ++r) {
        cam.rotation[r][0] = right[r];
        cam.rotation[r][1] = down[r];
        cam.rotation[r][2] = fwd[r];
    }
    cam.focal = focal;
    cam.width = width;
    cam.height = height;
    cam.near = near;
    cam.far = far;
    cam.validate();
    return cam;
}

void RenderConfig::validate() const {
    if (samples_per_ray < 2) throw ConfigError("render: samples_per_ray must be >= 2");
    if (!(depth_min_weight >= 0.0)) throw ConfigError("render: depth_min_weight must be >= 0");
}

Image FeatureMap::planar() const {
    Image out(dim * height, width, 1);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t y = 0; y < height; ++y)
            for (std::size_t x = 0; x < width; ++x) out.at(k * height + y, x) = at(y, x, k);
    return out;
}

FeatureMap FeatureMap::from_planar(const Image& planes, std::size_t dim) {
    if (dim == 0 || planes.channels() != 1 || planes.height() % dim != 0)
        throw ShapeError("feature map: planar image height is not a multiple of dim");
    const std::size_t h = planes.height() / dim;
    FeatureMap fm(h, planes.width(), dim);
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < fm.width; ++x) fm.at(y, x, k) = planes.at(k * h + y, x);
    return fm;
}

std::vector<Camera> orbit_cameras(const OrbitConfig& cfg) {
    if (cfg.count < 1) throw ConfigError("orbit: count must be >= 1");
    if (!(cfg.radius > 0.0)) throw ConfigError("orbit: radius must be positive");
    std::vector<Camera> cams;
    cams.reserve(static_cast<std::size_t>(cfg.count));
    const double arc = cfg.arc_degrees * std::numbers::pi / 180.0;
    for (int i = 0; i < cfg.count; ++i) {
        const double a = cfg.count == 1 ? 0.0 : arc * i / (cfg.count - 1);
        const Vec3 pos{cfg.target[0] + cfg.radius * std::sin(a), cfg.target[1] + cfg.elevation,
                       cfg.target[2] - cfg.radius * std::cos(a)};
        cams.push_back(Camera::look_at(pos, cfg.target, {0.0, 1.0, 0.0}, cfg.focal, cfg.width, cfg.height,
                                       cfg.near, cfg.far));
    }
    return cams;
}

FieldScene make_random_scene(const RandomSceneConfig& cfg) {
    if (cfg.count < 0) throw ConfigError("random scene: count must be >= 0");
    if (!(cfg.min_radius > 0.0) || cfg.max_radius < cfg.min_radius)
        throw ConfigError("random scene: need 0 < min_radius <= max_radius");
    FieldScene scene;
    scene.feature_dim = cfg.feature_dim;
    scene.background = cfg.background;
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.count; ++i) {
        Blob b;
        for (int k = 0; k < 3; ++k) b.center[k] = rng.uniform(-cfg.extent[k], cfg.extent[k]);
        b.radius = rng.uniform(cfg.min_radius, cfg.max_radius);
        b.peak_density = cfg.peak_density;
        for (int k = 0; k < 3; ++k) b.color[k] = rng.uniform(0.05, 0.95);
        b.feature.resize(cfg.feature_dim);
        for (double& f : b.feature) f = rng.normal();
        scene.blobs.push_back(std::move(b));
    }
    return scene;
}

json to_json(const Camera& cam) {
    json rot = json::array();
    for (const auto& row : cam.rotation) rot.push_back(json::array({row[0], row[1], row[2]}));
    return {{"position", to_json3(cam.position)}, {"rotation", rot},       {"focal", cam.focal},
            {"width", cam.width},                 {"height", cam.height},  {"near", cam.near},
            {"far", cam.far}};
}

Camera camera_from_json(const json& j) {
    try {
        const double focal = j.value("focal", 64.0);
        const auto width = j.value("width", std::size_t{64});
        const auto height = j.value("height", std::size_t{64});
        const double near = j.value("near", 1.0);
        const double far = j.value("far", 10.0);
        const Vec3 pos = vec3_from(j.at("position"), "position");
        if (j.contains("look_at")) {
            const Vec3 up = j.contains("up") ? vec3_from(j["up"], "up") : Vec3{0.0, 1.0, 0.0};
            return Camera::look_at(pos, vec3_from(j["look_at"], "look_at"), up, focal, width, height, near, far);
        }
        Camera cam;
        cam.position = pos;
        if (j.contains("rotation")) {
            const json& r = j["rotation"];
            if (!r.is_array() || r.size() != 3) throw ConfigError("camera: rotation must be 3x3");
            for (int a = 0; a < 3; ++a) cam.rotation[a] = vec3_from(r[a], "rotation row");
        }
        cam.focal = focal;
        cam.width = width;
        cam.height = height;
        cam.near = near;
        cam.far = far;
        cam.validate();
        return cam;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("camera: ") + e.what());
    }
}

json to_json(const FieldScene& scene) {
    json blobs = json::array();
    for (const Blob& b : scene.blobs)
        blobs.push_back({{"center", to_json3(b.center)},
                         {"radius", b.radius},
                         {"peak_density", b.peak_density},
                         {"color", to_json3(b.color)},
                         {"feature", b.feature}});
    return {{"background_color", to_json3(scene.background)}, {"feature_dim", scene.feature_dim}, {"blobs", blobs}};
}

json to_json(const SceneFile& file) {
    json j = to_json(file.scene);
    json cams = json::array();
    for (const Camera& c : file.cameras) cams.push_back(to_json(c));
    j["cameras"] = cams;
    j["render"] = {{"samples_per_ray", file.render.samples_per_ray},
                   {"stratified_jitter", file.render.stratified_jitter},
                   {"seed", file.render.seed},
                   {"depth_min_weight", file.render.depth_min_weight}};
    return j;
}

SceneFile scene_file_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("scene: top level must be an object");
    SceneFile out;
    try {
        out.scene.feature_dim = j.value("feature_dim", std::size_t{8});
        if (j.contains("background_color")) out.scene.background = vec3_from(j["background_color"], "background_color");
        if (j.contains("random_blobs")) {
            const json& r = j["random_blobs"];
            RandomSceneConfig rc;
            rc.count = r.value("count", rc.count);
            rc.seed = r.value("seed", rc.seed);
            rc.min_radius = r.value("min_radius", rc.min_radius);
            rc.max_radius = r.value("max_radius", rc.max_radius);
            rc.peak_density = r.value("peak_density", rc.peak_density);
            if (r.contains("extent")) rc.extent = vec3_from(r["extent"], "extent");
            rc.feature_dim = out.scene.feature_dim;
            rc.background = out.scene.background;
            out.scene.blobs = make_random_scene(rc).blobs;
        }
        if (j.contains("blobs")) {
            for (const json& b : j["blobs"]) {
                Blob blob;
                blob.center = vec3_from(b.at("center"), "center");
                blob.radius = b.value("radius", blob.radius);
                blob.peak_density = b.value("peak_density", blob.peak_density);
                if (b.contains("color")) blob.color = vec3_from(b["color"], "color");
                if (b.contains("feature"))
                    blob.feature = b["feature"].get<std::vector<double>>();
                else
                    blob.feature.assign(out.scene.feature_dim, 0.0);
                out.scene.blobs.push_back(std::move(blob));
            }
        }
        if (j.contains("cameras"))
            for (const json& c : j["cameras"]) out.cameras.push_back(camera_from_json(c));
        if (j.contains("orbit")) {
            const json& o = j["orbit"];
            OrbitConfig oc;
            oc.count = o.value("count", oc.count);
            oc.radius = o.value("radius", oc.radius);
            oc.arc_degrees = o.value("arc_degrees", oc.arc_degrees);
            oc.elevation = o.value("elevation", oc.elevation);
            if (o.contains("target")) oc.target = vec3_from(o["target"], "target");
            oc.focal = o.value("focal", oc.focal);
            oc.width = o.value("width", oc.width);
            oc.height = o.value("height", oc.height);
            oc.near = o.value("near", oc.near);
            oc.far = o.value("far", oc.far);
            for (Camera& c : orbit_cameras(oc)) out.cameras.push_back(c);
        }
        if (j.contains("render")) {
            const json& r = j["render"];
            out.render.samples_per_ray = r.value("samples_per_ray", out.render.samples_per_ray);
            out.render.stratified_jitter = r.value("stratified_jitter", out.render.stratified_jitter);
            out.render.seed = r.value("seed", out.render.seed);
            out.render.depth_min_weight = r.value("depth_min_weight", out.render.depth_min_weight);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scene: ") + e.what());
    }
    out.scene.validate();
    out.render.validate();
    return out;
}

SceneFile load_scene_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open scene file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path.string(), std::string("malformed JSON: ") + e.what());
    }
    return scene_file_from_json(j);
}

}  // namespace fdedit
