// SPDX-License-Identifier: Apache-2.0
#include "cli_common.hpp"

#include <fstream>
#include <iostream>

#include <omp.h>

#include "fdedit/error.hpp"

namespace fdedit::cli {

using nlohmann::json;

void add_common(CLI::App* sub, CommonOptions& opts) {
    sub->add_option("--config", opts.config, "JSON file of flag defaults (keys are flag names)");
    sub->add_option("--threads", opts.threads, "OpenMP worker count (0 = runtime default)")->check(CLI::NonNegativeNumber);
}

void apply_threads(const CommonOptions& opts) {
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
}

LowpassConfig LowpassFlags::config() const {
    LowpassConfig cfg;
    cfg.sigma = sigma;
    if (kernel_radius >= 0) cfg.kernel_radius = kernel_radius;
    cfg.downscale = downscale;
    cfg.boundary = boundary_from_string(boundary);
    cfg.validate();
    return cfg;
}

void add_lowpass(CLI::App* sub, LowpassFlags& flags) {
    sub->add_option("--sigma", flags.sigma, "Gaussian low-pass sigma (pixels)")->capture_default_str();
    sub->add_option("--kernel-radius", flags.kernel_radius, "kernel radius, negative = ceil(3 sigma)");
    sub->add_option("--downscale", flags.downscale, "low band downscale factor")->capture_default_str();
    sub->add_option("--boundary", flags.boundary, "circular or reflect")->capture_default_str();
}

StyleOp StyleFlags::load() const {
    if (!file.empty() && !text.empty()) throw ConfigError("give either --style or --style-json, not both");
    json j;
    try {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw IoError(file, "cannot open style file");
            in >> j;
        } else if (!text.empty()) {
            j = json::parse(text);
        } else {
            return AffineColor{};
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("style: malformed JSON: ") + e.what());
    }
    StyleOp op = style_from_json(j);
    validate(op);
    return op;
}

void add_style(CLI::App* sub, StyleFlags& flags) {
    sub->add_option("--style", flags.file, "style JSON file");
    sub->add_option("--style-json", flags.text, "inline style JSON");
}

namespace {

std::string scalar_token(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    std::size_t sub = 0;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (sub == 0 && !args[i].empty() && args[i][0] != '-') sub = i;
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || sub == 0) return args;

    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw IoError(path, std::string("malformed JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config: top level must be an object");
    // A section named after the subcommand takes precedence over flat keys.
    json flat = json::object();
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        if (!it.value().is_object()) flat[it.key()] = it.value();
    if (cfg.contains(args[sub]) && cfg[args[sub]].is_object())
        for (auto it = cfg[args[sub]].begin(); it != cfg[args[sub]].end(); ++it) flat[it.key()] = it.value();

    std::vector<std::string> injected;
    for (auto it = flat.begin(); it != flat.end(); ++it) {
        if (it.key() == "config") continue;
        const std::string flag = "--" + it.key();
        const json& v = it.value();
        if (v.is_boolean()) {
            injected.push_back(flag + "=" + (v.get<bool>() ? "true" : "false"));
        } else if (v.is_array()) {
            for (const json& e : v) {
                injected.push_back(flag);
                injected.push_back(scalar_token(e));
            }
        } else if (v.is_null()) {
            continue;
        } else {
            injected.push_back(flag);
            injected.push_back(scalar_token(v));
        }
    }
    std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(sub) + 1);
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, args.end());
    return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out << text;
    if (!out) throw IoError(path.string(), "write failed");
}

void emit_json(const json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty())
        std::cout << text;
    else
        write_text(text, path);
}

}  // namespace fdedit::cli
