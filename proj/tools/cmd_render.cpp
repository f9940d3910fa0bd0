// SPDX-License-Identifier: Apache-2.0
// render, dataset, metrics
#include <filesystem>

#include "cli_common.hpp"
#include "fdedit/dataset.hpp"
#include "fdedit/editing.hpp"
#include "fdedit/error.hpp"
#include "fdedit/io.hpp"

namespace fdedit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RenderFlags {
    int samples = 0;  ///< 0 keeps the scene file's value
    bool jitter = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_render_flags(CLI::App* sub, RenderFlags& f) {
    sub->add_option("--samples", f.samples, "samples per ray (overrides the scene file)");
    sub->add_flag("--jitter", f.jitter, "stratified jitter inside each sample bin");
    sub->add_option("--seed", f.seed, "jitter seed (overrides the scene file)")->each([&f](const std::string&) {
        f.seed_given = true;
    });
}

SceneFile load_with_overrides(const std::string& path, const RenderFlags& f) {
    SceneFile sf = load_scene_file(path);
    if (f.samples != 0) sf.render.samples_per_ray = f.samples;
    if (f.jitter) sf.render.stratified_jitter = true;
    if (f.seed_given) sf.render.seed = f.seed;
    sf.render.validate();
    if (sf.cameras.empty()) throw ConfigError("scene: no cameras");
    return sf;
}

json score_json(const PairScore& s) {
    return {{"rmse", s.rmse}, {"valid_fraction", s.valid_fraction}, {"n_pixels", s.n_pixels}};
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw IoError(dir.string(), "cannot create directory");
}

}  // namespace

void add_render_commands(CLI::App& app, std::vector<Command>& out) {
    {
        struct Opts {
            CommonOptions common;
            RenderFlags rf;
            std::string scene, out_dir, report;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("render", "render every camera of a scene file");
        sub->add_option("scene", o->scene, "scene JSON")->required();
        sub->add_option("--out-dir", o->out_dir, "output directory")->required();
        sub->add_option("--report", o->report, "JSON report path (default stdout)");
        add_render_flags(sub, o->rf);
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           const SceneFile sf = load_with_overrides(o->scene, o->rf);
                           const fs::path dir(o->out_dir);
                           make_dir(dir);
                           json views = json::array();
                           for (std::size_t i = 0; i < sf.cameras.size(); ++i) {
                               const int idx = static_cast<int>(i);
                               const RenderResult r = render(sf.scene, sf.cameras[i], sf.render);
                               write_png(r.color, dir / view_name(idx, ".png"));
                               write_pfm(r.depth, dir / view_name(idx, ".depth.pfm"));
                               write_pfm(r.feature.planar(), dir / view_name(idx, ".feat.pfm"));
                               double covered = 0.0;
                               for (double d : r.depth.data()) covered += d > 0.0 ? 1.0 : 0.0;
                               views.push_back({{"index", idx},
                                                {"color", view_name(idx, ".png")},
                                                {"mean_transmittance", r.trans.mean()},
                                                {"depth_coverage", covered / static_cast<double>(r.depth.size())}});
                           }
                           emit_json({{"command", "render"},
                                      {"samples_per_ray", sf.render.samples_per_ray},
                                      {"blobs", sf.scene.blobs.size()},
                                      {"views", views}},
                                     o->report);
                           return int(kOk);
                       }});
    }
    {
        struct Opts {
            CommonOptions common;
            RenderFlags rf;
            std::string scene, out_dir, report;
            double depth_tolerance = 0.02;
            bool no_background = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("dataset", "render a camera path with ground-truth pair flows");
        sub->add_option("scene", o->scene, "scene JSON")->required();
        sub->add_option("--out-dir", o->out_dir, "output directory")->required();
        sub->add_option("--depth-tolerance", o->depth_tolerance, "relative occlusion tolerance")
            ->capture_default_str();
        sub->add_flag("--no-background", o->no_background, "mask out pixels with undefined depth");
        sub->add_option("--report", o->report, "JSON report path (default stdout)");
        add_render_flags(sub, o->rf);
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           const SceneFile sf = load_with_overrides(o->scene, o->rf);
                           DatasetOptions opts;
                           opts.depth_tolerance = o->depth_tolerance;
                           opts.background_at_infinity = !o->no_background;
                           const DatasetManifest m = make_pair_dataset(sf.scene, sf.cameras, sf.render, o->out_dir, opts);
                           emit_json({{"command", "dataset"},
                                      {"views", m.views.size()},
                                      {"pairs", m.pairs.size()},
                                      {"manifest_hash", file_hash(fs::path(o->out_dir) / "manifest.json")}},
                                     o->report);
                           return int(kOk);
                       }});
    }
    {
        struct Opts {
            CommonOptions common;
            LowpassFlags lp;
            StyleFlags style;
            std::string dir, report;
            double artifact_std = 0.05;
            std::uint64_t edit_seed = 0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("metrics", "warped RMSE and sharpness over a dataset");
        sub->add_option("dataset", o->dir, "dataset directory")->required();
        sub->add_option("--out", o->report, "JSON path (default <dataset>/metrics.json)");
        add_style(sub, o->style);
        sub->add_option("--artifact-std", o->artifact_std, "per-view editor noise for the edit comparison")
            ->capture_default_str();
        sub->add_option("--edit-seed", o->edit_seed, "seed of the editor noise")->capture_default_str();
        add_lowpass(sub, o->lp);
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           const fs::path dir(o->dir);
                           const DatasetManifest m = load_manifest(dir);
                           std::vector<Image> views;
                           json sharp = json::array();
                           for (const DatasetView& v : m.views) {
                               views.push_back(read_png(dir / v.color));
                               sharp.push_back(sharpness(views.back()));
                           }
                           std::vector<GtFlow> flows;
                           for (const DatasetPair& p : m.pairs) flows.push_back(read_flow(dir / p.flow));

                           json short_term = json::array(), long_term = json::array();
                           std::vector<PairFlow> pf;
                           for (std::size_t i = 0; i < m.pairs.size(); ++i) {
                               const DatasetPair& p = m.pairs[i];
                               if (p.src < 0 || p.dst < 0 || static_cast<std::size_t>(p.src) >= views.size() ||
                                   static_cast<std::size_t>(p.dst) >= views.size())
                                   throw IoError((dir / "manifest.json").string(), "pair index out of range");
                               json e;
                               try {
                                   e = score_json(warped_rmse(views[static_cast<std::size_t>(p.dst)],
                                                              views[static_cast<std::size_t>(p.src)], flows[i].u,
                                                              flows[i].v, flows[i].valid));
                               } catch (const DegenerateError& err) {
                                   e = {{"rmse", nullptr}, {"valid_fraction", 0.0}, {"n_pixels", 0},
                                        {"error", "no overlap"}};
                               }
                               e["src"] = p.src;
                               e["dst"] = p.dst;
                               (p.kind == "long" ? long_term : short_term).push_back(e);
                               if (e["rmse"].is_number())
                                   pf.push_back({p.src, p.dst, &flows[i].u, &flows[i].v, &flows[i].valid});
                           }
                           auto mean_rmse = [](const json& a) {
                               double s = 0.0;
                               std::size_t n = 0;
                               for (const json& e : a)
                                   if (e["rmse"].is_number()) {
                                       s += e["rmse"].get<double>();
                                       ++n;
                                   }
                               return n == 0 ? json(nullptr) : json(s / static_cast<double>(n));
                           };
                           json rep{{"command", "metrics"},
                                    {"short_term", short_term},
                                    {"long_term", long_term},
                                    {"short_term_mean_rmse", mean_rmse(short_term)},
                                    {"long_term_mean_rmse", mean_rmse(long_term)},
                                    {"sharpness", sharp},
                                    {"brisque", nullptr},
                                    {"lpips", nullptr}};
                           if (o->style.given()) {
                               EditorModel ed{o->style.load(), o->artifact_std, o->edit_seed};
                               const EditComparison c = compare_edits(views, pf, ed, o->lp.config());
                               auto scores = [](const std::vector<PairScore>& v) {
                                   json a = json::array();
                                   for (const PairScore& s : v) a.push_back(score_json(s));
                                   return a;
                               };
                               rep["edit"] = {{"style", style_to_json(ed.style)},
                                              {"artifact_std", ed.artifact_std},
                                              {"edit_seed", ed.seed},
                                              {"sharpness_decomposed", c.sharp_decomposed},
                                              {"sharpness_smoothed_full", c.sharp_smoothed},
                                              {"sharpness_full", c.sharp_full},
                                              {"pairs_decomposed", scores(c.rmse_decomposed)},
                                              {"pairs_full", scores(c.rmse_full)}};
                           }
                           emit_json(rep, o->report.empty() ? (dir / "metrics.json").string() : o->report);
                           return int(kOk);
                       }});
    }
}

}  // namespace fdedit::cli
