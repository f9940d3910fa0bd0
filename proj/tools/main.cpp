// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "cli_common.hpp"
#include "fdedit/error.hpp"

int main(int argc, char** argv) {
    using namespace fdedit::cli;
    std::vector<std::string> args(argv, argv + argc);
    try {
        args = expand_config(args);
    } catch (const std::exception& e) {
        std::cerr << "fdedit: " << e.what() << '\n';
        return kUsageOrIo;
    }

    CLI::App app{"Frequency-decomposed image editing and multi-view consistency toolkit", "fdedit"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    std::vector<Command> commands;
    add_image_commands(app, commands);
    add_flow_commands(app, commands);
    add_render_commands(app, commands);

    std::vector<const char*> cargv;
    for (const std::string& a : args) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageOrIo;
    }

    for (const Command& c : commands) {
        if (!c.app->parsed()) continue;
        try {
            return c.run();
        } catch (const fdedit::SolverError& e) {
            std::cerr << "fdedit " << c.app->get_name() << ": " << e.what() << " (residual "
                      << e.achieved_residual() << " after " << e.iterations() << " iterations)\n";
            return kUsageOrIo;
        } catch (const std::exception& e) {
            std::cerr << "fdedit " << c.app->get_name() << ": " << e.what() << '\n';
            return kUsageOrIo;
        }
    }
    return kUsageOrIo;
}
