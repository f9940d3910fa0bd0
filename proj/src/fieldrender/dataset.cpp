// SPDX-License-Identifier: Apache-2.0
#include "fdedit/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>

#include "fdedit/error.hpp"
#include "fdedit/io.hpp"

namespace fdedit {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<DatasetPair> dataset_pairs(int views) {
    if (views < 2) throw ConfigError("dataset: need at least 2 cameras");
    std::vector<DatasetPair> pairs;
    for (int i = 0; i + 1 < views; ++i) pairs.push_back({"short", i, i + 1, flow_name(i, i + 1), 0.0});
    pairs.push_back({"long", 0, views - 1, flow_name(0, views - 1), 0.0});
    return pairs;
}

std::string view_name(int index, const char* suffix) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "view_%03d%s", index, suffix);
    return buf;
}

std::string flow_name(int src, int dst) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "flow_%03d_%03d.pfm", src, dst);
    return buf;
}

std::uint64_t file_hash(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open for hashing");
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 14];
    while (in) {
        in.read(buf, sizeof buf);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

namespace {

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void write_flow(const GtFlow& flow, const fs::path& path) {
    require_same_shape(flow.u, flow.v, "write_flow");
    require_same_shape(flow.u, flow.valid, "write_flow");
    Image packed(flow.u.height(), flow.u.width(), 3);
    for (std::size_t y = 0; y < packed.height(); ++y)
        for (std::size_t x = 0; x < packed.width(); ++x) {
            packed.at(y, x, 0) = flow.u.at(y, x);
            packed.at(y, x, 1) = flow.v.at(y, x);
            packed.at(y, x, 2) = flow.valid.at(y, x);
        }
    write_pfm(packed, path);
}

GtFlow read_flow(const fs::path& path) {
    const Image packed = read_pfm(path);
    if (packed.channels() != 3) throw IoError(path.string(), "flow file must have 3 channels");
    return {packed.channel(0), packed.channel(1), packed.channel(2)};
}

DatasetManifest make_pair_dataset(const FieldScene& scene, const std::vector<Camera>& cams, const RenderConfig& cfg,
                                  const fs::path& out_dir, const DatasetOptions& opts) {
    const int n = static_cast<int>(cams.size());
    auto pairs = dataset_pairs(n);
    for (const Camera& c : cams)
        if (c.width != cams.front().width || c.height != cams.front().height)
            throw ConfigError("dataset: all cameras must share one image size");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw IoError(out_dir.string(), "cannot create output directory");

    DatasetManifest m;
    m.width = cams.front().width;
    m.height = cams.front().height;
    m.feature_dim = scene.feature_dim;

    json files = json::object();
    std::vector<Image> depths;
    for (int i = 0; i < n; ++i) {
        const RenderResult r = render(scene, cams[static_cast<std::size_t>(i)], cfg);
        DatasetView v{i, view_name(i, ".png"), view_name(i, ".depth.pfm"), view_name(i, ".feat.pfm"),
                      cams[static_cast<std::size_t>(i)]};
        write_png(r.color, out_dir / v.color);
        write_pfm(r.depth, out_dir / v.depth);
        write_pfm(r.feature.planar(), out_dir / v.feature);
        for (const std::string* f : {&v.color, &v.depth, &v.feature}) files[*f] = hex(file_hash(out_dir / *f));
        depths.push_back(r.depth);
        m.views.push_back(std::move(v));
    }

    GtFlowOptions fo;
    fo.depth_tolerance = opts.depth_tolerance;
    fo.background_at_infinity = opts.background_at_infinity;
    for (DatasetPair& p : pairs) {
        fo.depth2 = &depths[static_cast<std::size_t>(p.dst)];
        const GtFlow flow = gt_flow(depths[static_cast<std::size_t>(p.src)], cams[static_cast<std::size_t>(p.src)],
                                    cams[static_cast<std::size_t>(p.dst)], fo);
        p.valid_fraction = flow.valid.mean();
        if (!files.contains(p.flow)) {
            write_flow(flow, out_dir / p.flow);
            files[p.flow] = hex(file_hash(out_dir / p.flow));
        }
    }
    m.pairs = pairs;

    json views = json::array();
    for (const DatasetView& v : m.views)
        views.push_back({{"index", v.index},
                         {"color", v.color},
                         {"depth", v.depth},
                         {"feature", v.feature},
                         {"camera", to_json(v.camera)}});
    json jp = json::array();
    for (const DatasetPair& p : m.pairs)
        jp.push_back({{"kind", p.kind},
                      {"src", p.src},
                      {"dst", p.dst},
                      {"flow", p.flow},
                      {"valid_fraction", p.valid_fraction}});
    m.raw = {{"width", m.width},
             {"height", m.height},
             {"feature_dim", m.feature_dim},
             {"feature_layout", "planar"},
             {"flow_channels", json::array({"u", "v", "valid"})},
             {"depth_tolerance", opts.depth_tolerance},
             {"background_at_infinity", opts.background_at_infinity},
             {"render",
              {{"samples_per_ray", cfg.samples_per_ray},
               {"stratified_jitter", cfg.stratified_jitter},
               {"seed", cfg.seed},
               {"depth_min_weight", cfg.depth_min_weight}}},
             {"views", views},
             {"pairs", jp},
             {"files", files}};

    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    if (!out) throw IoError((out_dir / "manifest.json").string(), "cannot write manifest");
    out << m.raw.dump(2) << '\n';
    if (!out) throw IoError((out_dir / "manifest.json").string(), "write failed");
    return m;
}

DatasetManifest load_manifest(const fs::path& dir) {
    const fs::path path = dir / "manifest.json";
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open manifest");
    DatasetManifest m;
    try {
        in >> m.raw;
        m.width = m.raw.at("width").get<std::size_t>();
        m.height = m.raw.at("height").get<std::size_t>();
        m.feature_dim = m.raw.at("feature_dim").get<std::size_t>();
        for (const json& v : m.raw.at("views"))
            m.views.push_back({v.at("index").get<int>(), v.at("color").get<std::string>(),
                               v.at("depth").get<std::string>(), v.at("feature").get<std::string>(),
                               camera_from_json(v.at("camera"))});
        for (const json& p : m.raw.at("pairs"))
            m.pairs.push_back({p.at("kind").get<std::string>(), p.at("src").get<int>(), p.at("dst").get<int>(),
                               p.at("flow").get<std::string>(), p.at("valid_fraction").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string(), std::string("malformed manifest: ") + e.what());
    } catch (const ConfigError& e) {
        throw IoError(path.string(), e.what());
    }
    return m;
}

}  // namespace fdedit
