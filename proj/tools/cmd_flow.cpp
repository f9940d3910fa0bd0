// SPDX-License-Identifier: Apache-2.0
// consistency, verify, expansion
#include <cmath>
#include <optional>

#include "cli_common.hpp"
#include "fdedit/error.hpp"
#include "fdedit/io.hpp"
#include "fdedit/pair_generator.hpp"
#include "fdedit/random.hpp"
#include "fdedit/reports.hpp"
#include "fdedit/theorem.hpp"

namespace fdedit::cli {

using nlohmann::json;

void add_flow_commands(CLI::App& app, std::vector<Command>& out) {
    {
        struct Opts {
            CommonOptions common;
            std::string i1, i2, report, boundary = "circular";
            double mu = 1e-3;
            double smooth_sigma = 0.0;
            double tol = 1e-8;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("consistency", "flow-based consistency score of an image pair");
        sub->add_option("i1", o->i1, "first PNG")->required();
        sub->add_option("i2", o->i2, "second PNG")->required();
        sub->add_option("--mu", o->mu, "data term weight")->capture_default_str();
        sub->add_option("--smooth-sigma", o->smooth_sigma, "also score both images after a Gaussian of this sigma");
        sub->add_option("--boundary", o->boundary, "circular or reflect")->capture_default_str();
        sub->add_option("--tol", o->tol, "relative CG tolerance")->capture_default_str();
        sub->add_option("--out", o->report, "JSON report path (default stdout)");
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           if (!(o->mu > 0.0)) throw ConfigError("--mu must be positive");
                           const Image a = read_png(o->i1);
                           const Image b = read_png(o->i2);
                           require_same_shape(a, b, "consistency");
                           ConsistencyConfig cc;
                           cc.boundary = boundary_from_string(o->boundary);
                           cc.tol = o->tol;
                           const ConsistencyReport raw = consistency_score(a, b, o->mu, cc);
                           json rep{{"command", "consistency"},
                                    {"mu", o->mu},
                                    {"boundary", to_string(cc.boundary)},
                                    {"raw", to_json(raw)},
                                    {"score", raw.score}};
                           if (o->smooth_sigma > 0.0) {
                               const LowpassConfig lp{o->smooth_sigma, std::nullopt, 1, cc.boundary};
                               const ConsistencyReport sm = consistency_score(
                                   gaussian_lowpass(a, lp), gaussian_lowpass(b, lp), o->mu, cc);
                               rep["smooth_sigma"] = o->smooth_sigma;
                               rep["smoothed"] = to_json(sm);
                               rep["smoothed_below_raw"] = sm.score < raw.score;
                           }
                           emit_json(rep, o->report);
                           return int(kOk);
                       }});
    }
    {
        struct Opts {
            CommonOptions common;
            int trials = 200;
            std::uint64_t seed = 7;
            double sigma = 1.5, mu = 1e-3, threshold = 0.99;
            int size = 16;
            std::string kind = "smoothing", flow_source = "stylized", report, csv;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("verify", "seeded check that smoothing lowers the consistency score");
        sub->add_option("--trials", o->trials, "number of pairs")->capture_default_str();
        sub->add_option("--seed", o->seed, "base seed")->capture_default_str();
        sub->add_option("--sigma", o->sigma, "smoothing sigma")->capture_default_str();
        sub->add_option("--mu", o->mu, "data term weight")->capture_default_str();
        sub->add_option("--size", o->size, "image side length")->capture_default_str();
        sub->add_option("--kind", o->kind, "smoothing or style")
            ->check(CLI::IsMember({"smoothing", "style"}))
            ->capture_default_str();
        sub->add_option("--flow-source", o->flow_source, "stylized or original (style kind only)")
            ->check(CLI::IsMember({"stylized", "original"}))
            ->capture_default_str();
        sub->add_option("--threshold", o->threshold, "minimum strict fraction for exit 0")->capture_default_str();
        sub->add_option("--out", o->report, "JSON report path (default stdout)");
        sub->add_option("--csv", o->csv, "per-trial CSV path");
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           if (o->size < 3) throw ConfigError("--size must be >= 3");
                           TheoremConfig cfg;
                           cfg.trials = o->trials;
                           cfg.seed = o->seed;
                           cfg.mu = o->mu;
                           cfg.lowpass.sigma = o->sigma;
                           cfg.flow_source = o->flow_source == "original" ? FlowSource::Original : FlowSource::Stylized;
                           SmoothPairConfig pc;
                           pc.size = static_cast<std::size_t>(o->size);
                           pc.channels = o->kind == "style" ? 3 : 1;
                           const auto gen = smooth_pair_generator(pc);
                           const TheoremReport rep = o->kind == "style" ? verify_style_theorem(cfg, gen)
                                                                        : verify_smoothing_theorem(cfg, gen);
                           json j = to_json(rep);
                           j["command"] = "verify";
                           j["threshold"] = o->threshold;
                           const bool pass = rep.strict_fraction >= o->threshold;
                           j["pass"] = pass;
                           if (o->kind == "style") j["flow_source"] = o->flow_source;
                           emit_json(j, o->report);
                           if (!o->csv.empty()) write_text(theorem_csv(rep), o->csv);
                           return int(pass ? kOk : kThresholdFailed);
                       }});
    }
    {
        struct Opts {
            CommonOptions common;
            std::uint64_t seed = 3;
            int size = 8;
            double mu = 1e-4;
            double ratio_min = 3.0, ratio_max = 5.0;
            std::string i1, i2, report;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("expansion", "compare D(A) b with its first-order small-mu expansion");
        sub->add_option("--seed", o->seed, "seed of the random pair")->capture_default_str();
        sub->add_option("--size", o->size, "side length of the random pair")->capture_default_str();
        sub->add_option("--mu", o->mu, "first mu; the second run uses mu / 2")->capture_default_str();
        sub->add_option("--i1", o->i1, "first PNG instead of a random pair");
        sub->add_option("--i2", o->i2, "second PNG instead of a random pair");
        sub->add_option("--ratio-min", o->ratio_min, "lower bound on the error ratio")->capture_default_str();
        sub->add_option("--ratio-max", o->ratio_max, "upper bound on the error ratio")->capture_default_str();
        sub->add_option("--out", o->report, "JSON report path (default stdout)");
        add_common(sub, o->common);
        out.push_back({sub, [o] {
                           apply_threads(o->common);
                           if (!(o->mu > 0.0)) throw ConfigError("--mu must be positive");
                           ImagePair pair;
                           if (!o->i1.empty() || !o->i2.empty()) {
                               if (o->i1.empty() || o->i2.empty()) throw ConfigError("give both --i1 and --i2");
                               pair = {luminance(read_png(o->i1)), luminance(read_png(o->i2))};
                           } else {
                               if (o->size < 3) throw ConfigError("--size must be >= 3");
                               const auto n = static_cast<std::size_t>(o->size);
                               Rng rng(o->seed);
                               pair = {Image(n, n, 1), Image(n, n, 1)};
                               for (double& v : pair.i1.data()) v = rng.uniform();
                               for (double& v : pair.i2.data()) v = rng.uniform();
                           }
                           pair = enforce_color_consistency(pair);
                           const FlowProblem p1 = build_problem(pair.i1, pair.i2, o->mu, BoundaryMode::Circular);
                           const ExpansionReport r1 = small_mu_expansion(p1);
                           const ExpansionReport r2 = small_mu_expansion(with_mu(p1, o->mu / 2.0));
                           const double ratio = r1.error / r2.error;
                           const double ratio_literal = r1.error_literal / r2.error_literal;
                           const bool pass = ratio >= o->ratio_min && ratio <= o->ratio_max;
                           emit_json({{"command", "expansion"},
                                      {"size", pair.i1.height()},
                                      {"mu", {o->mu, o->mu / 2.0}},
                                      {"runs", {to_json(r1), to_json(r2)}},
                                      {"error_ratio", ratio},
                                      {"error_ratio_truncated", ratio_literal},
                                      {"ratio_range", {o->ratio_min, o->ratio_max}},
                                      {"pass", pass}},
                                     o->report);
                           return int(pass ? kOk : kThresholdFailed);
                       }});
    }
}

}  // namespace fdedit::cli
