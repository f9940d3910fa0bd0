// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdedit/lowpass.hpp"
#include "fdedit/style.hpp"

namespace fdedit::cli {

enum ExitCode : int { kOk = 0, kThresholdFailed = 1, kUsageOrIo = 2 };

/// A subcommand and the action to run once parsing succeeded.
struct Command {
    CLI::App* app = nullptr;
    std::function<int()> run;
};

void add_image_commands(CLI::App& app, std::vector<Command>& out);
void add_flow_commands(CLI::App& app, std::vector<Command>& out);
void add_render_commands(CLI::App& app, std::vector<Command>& out);

/// Options every subcommand shares.
struct CommonOptions {
    std::string config;
    int threads = 0;
};
void add_common(CLI::App* sub, CommonOptions& opts);
void apply_threads(const CommonOptions& opts);

/// Low-pass flags (--sigma, --kernel-radius, --downscale, --boundary).
struct LowpassFlags {
    double sigma = 2.0;
    int kernel_radius = -1;  ///< < 0 selects ceil(3 sigma)
    int downscale = 4;
    std::string boundary = "reflect";

    LowpassConfig config() const;
};
void add_lowpass(CLI::App* sub, LowpassFlags& flags);

/// --style FILE or --style-json TEXT; identity when neither is given.
struct StyleFlags {
    std::string file;
    std::string text;

    StyleOp load() const;
    bool given() const { return !file.empty() || !text.empty(); }
};
void add_style(CLI::App* sub, StyleFlags& flags);

/// Rewrites argv so that keys from a --config JSON object become flags placed
/// ahead of the user's own flags. Later flags win, so the order of precedence
/// is defaults < config < command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

/// Pretty, key-sorted JSON to `path` or stdout when empty.
void emit_json(const nlohmann::json& j, const std::string& path);
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace fdedit::cli
