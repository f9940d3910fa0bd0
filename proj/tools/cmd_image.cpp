// SPDX-License-Identifier: Apache-2.0
// decompose, edit, enhance, recompose
#include <filesystem>
#include <iostream>

#include "cli_common.hpp"
#include "fdedit/error.hpp"
#include "fdedit/freqpipe.hpp"
#include "fdedit/io.hpp"

namespace fdedit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json shape(const Image& img) { return json::array({img.height(), img.width(), img.channels()}); }

json lowpass_json(const LowpassConfig& cfg) {
    return {{"sigma", cfg.sigma},
            {"kernel_radius", cfg.radius()},
            {"downscale", cfg.downscale},
            {"boundary", to_string(cfg.boundary)}};
}

Image offset_half(const Image& img) { return add_scalar(img, 0.5); }

}  // namespace

void add_image_commands(CLI::App& app, std::vector<Command>& out) {
    {
        struct Opts {
            CommonOptions common;
            LowpassFlags lp;
            std::string input, out_dir, report;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("decompose", "split an image into low and high frequency bands");
        sub->add_option("input", o->input, "input PNG")->required();
        sub->add_option("--out-dir", o->out_dir, "output directory")->required();
        sub->add_option("--report", o->report, "JSON report path (default stdout)");
        add_lowpass(sub, o->lp);
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           const LowpassConfig cfg = o->lp.config();
                           const Image img = read_png(o->input);
                           const Decomposition dec = decompose(img, cfg);
                           const fs::path dir(o->out_dir);
                           std::error_code ec;
                           fs::create_directories(dir, ec);
                           if (!fs::is_directory(dir)) throw IoError(dir.string(), "cannot create directory");
                           write_png(dec.low_ds, dir / "low.png");
                           write_png(dec.low_full, dir / "low_full.png");
                           write_pfm(dec.high, dir / "high.pfm");
                           write_png(offset_half(dec.high), dir / "high_vis.png");
                           const double recon = max_abs_diff(dec.low_full + dec.high, img);
                           emit_json({{"command", "decompose"},
                                      {"input_shape", shape(img)},
                                      {"low_shape", shape(dec.low_ds)},
                                      {"lowpass", lowpass_json(cfg)},
                                      {"reconstruction_max_abs", recon},
                                      {"files", {"low.png", "low_full.png", "high.pfm", "high_vis.png"}}},
                                     o->report);
                           return int(kOk);
                       }});
    }
    {
        struct Opts {
            CommonOptions common;
            LowpassFlags lp;
            StyleFlags style;
            std::string input, output, output_pfm, report;
            double level = 1.0;
            double alpha = 1.0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("edit", "style the low band, mix by intensity, re-add detail");
        sub->add_option("input", o->input, "input PNG")->required();
        sub->add_option("--out", o->output, "output PNG")->required();
        sub->add_option("--out-pfm", o->output_pfm, "also write the unclamped result as PFM");
        sub->add_option("--report", o->report, "JSON report path (default stdout)");
        sub->add_option("--level", o->level, "editing intensity in [0,1]")->capture_default_str();
        sub->add_option("--alpha", o->alpha, "detail blend weight in [0,1]")->capture_default_str();
        add_style(sub, o->style);
        add_lowpass(sub, o->lp);
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           const LowpassConfig cfg = o->lp.config();
                           const StyleOp op = o->style.load();
                           const IntensityLevel level(o->level);
                           const Image img = read_png(o->input);
                           const Decomposition dec = decompose(img, cfg);
                           const Image styled_low = apply_style(op, dec.low_ds);
                           const Image mixed = intensity_mix(dec.low_ds, styled_low, level);
                           const Image result = blend_detail(mixed, dec, o->alpha);
                           write_png(result, o->output);
                           if (!o->output_pfm.empty()) write_pfm(result, o->output_pfm);
                           emit_json({{"command", "edit"},
                                      {"style", style_to_json(op)},
                                      {"level", level.value()},
                                      {"alpha", o->alpha},
                                      {"lowpass", lowpass_json(cfg)},
                                      {"input_shape", shape(img)},
                                      {"max_abs_change", max_abs_diff(result, img)}},
                                     o->report);
                           return int(kOk);
                       }});
    }
    {
        struct Opts {
            CommonOptions common;
            LowpassFlags lp;
            std::string edited, original, output, mask_out, report, mode = "masked";
            double alpha = 1.0, lambda1 = 1.0, lambda2 = 1.0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("enhance", "restore original detail in an edited image");
        sub->add_option("edited", o->edited, "edited PNG")->required();
        sub->add_option("original", o->original, "original PNG")->required();
        sub->add_option("--out", o->output, "output PNG")->required();
        sub->add_option("--mode", o->mode, "simple or masked")
            ->check(CLI::IsMember({"simple", "masked"}))
            ->capture_default_str();
        sub->add_option("--alpha", o->alpha, "detail blend weight")->capture_default_str();
        sub->add_option("--lambda1", o->lambda1, "edited detail weight inside the change mask")->capture_default_str();
        sub->add_option("--lambda2", o->lambda2, "original detail weight outside it")->capture_default_str();
        sub->add_option("--mask-out", o->mask_out, "write the change mask PNG");
        sub->add_option("--report", o->report, "JSON report path (default stdout)");
        add_lowpass(sub, o->lp);
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           const LowpassConfig cfg = o->lp.config();
                           const Image edited = read_png(o->edited);
                           const Image original = read_png(o->original);
                           require_same_shape(edited, original, "enhance");
                           Image result;
                           json rep{{"command", "enhance"}, {"mode", o->mode}, {"lowpass", lowpass_json(cfg)}};
                           if (o->mode == "simple") {
                               result = enhance_simple(edited, original, cfg);
                           } else {
                               const BlendParams params{o->alpha, o->lambda1, o->lambda2};
                               params.validate();
                               result = enhance_masked(edited, original, params, cfg);
                               const Image mask = change_mask(edited, original, cfg);
                               if (!o->mask_out.empty()) write_png(mask, o->mask_out);
                               rep["mask_mean"] = mask.mean();
                               rep["alpha"] = o->alpha;
                               rep["lambda1"] = o->lambda1;
                               rep["lambda2"] = o->lambda2;
                           }
                           write_png(result, o->output);
                           emit_json(rep, o->report);
                           return int(kOk);
                       }});
    }
    {
        struct Opts {
            CommonOptions common;
            std::string edited, original, mask, output, report;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("recompose", "mask-blend an edited image with the original");
        sub->add_option("edited", o->edited, "edited PNG")->required();
        sub->add_option("original", o->original, "original PNG")->required();
        sub->add_option("--mask", o->mask, "single-channel mask PNG")->required();
        sub->add_option("--out", o->output, "output PNG")->required();
        sub->add_option("--report", o->report, "JSON report path (default stdout)");
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           const Image edited = read_png(o->edited);
                           const Image original = read_png(o->original);
                           const Image mask = read_png(o->mask);
                           const Image result = mask_recompose(edited, original, mask);
                           write_png(result, o->output);
                           emit_json({{"command", "recompose"}, {"mask_mean", mask.mean()}}, o->report);
                           return int(kOk);
                       }});
    }
}

}  // namespace fdedit::cli
