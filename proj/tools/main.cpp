// presliding: command-line front end for the experiment configs.
//
//   presliding <kind> [--config FILE] [--out DIR] [--override key=value]...
//   presliding run FILE [--out DIR] [--override key=value]...

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "presliding/experiment.hpp"

namespace {

namespace ex = presliding::experiment;

struct Invocation {
    std::string config;
    std::string out;
    std::vector<std::string> overrides;
};

void add_common(CLI::App& cmd, Invocation& inv) {
    cmd.add_option("--out", inv.out, "Output directory (overrides output_dir)");
    cmd.add_option("--override", inv.overrides, "Dotted key=value override, repeatable")
        ->allow_extra_args(false);
}

int execute(const Invocation& inv, std::optional<ex::Kind> kind) {
    try {
        std::vector<ex::Override> overrides;
        for (const auto& text : inv.overrides) {
            overrides.push_back(ex::parse_override(text));
        }
        auto cfg = inv.config.empty() ? ex::parse_config("", overrides, kind)
                                      : ex::load_config(inv.config, overrides, kind);
        if (!inv.out.empty()) {
            cfg.output_dir = inv.out;
        }
        const auto result = ex::run(cfg);
        if (result.report) {
            for (const auto& c : result.report->checks) {
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.id << "  measured=" << c.measured
                          << " tolerance=" << c.tolerance;
                if (!c.detail.empty()) {
                    std::cout << "  (" << c.detail << ")";
                }
                std::cout << '\n';
            }
        }
        for (const auto& a : result.artifacts) {
            std::cout << "wrote " << (cfg.output_dir / a.file).string() << " (" << a.rows << " rows)\n";
        }
        return result.exit_code;
    } catch (const ex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ex::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ex::kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dahl pre-sliding friction hysteresis experiments"};
    app.require_subcommand(1);

    Invocation inv;
    std::optional<ex::Kind> selected;

    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    run->add_option("config", inv.config, "Experiment config (YAML)")->required()->check(CLI::ExistingFile);
    add_common(*run, inv);

    for (auto name : ex::kind_names()) {
        const std::string label(name);
        auto* cmd = app.add_subcommand(label, "Run a '" + label + "' experiment");
        cmd->add_option("--config", inv.config, "Experiment config (YAML)")->check(CLI::ExistingFile);
        add_common(*cmd, inv);
        cmd->callback([&selected, label] { selected = ex::parse_kind(label); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ex::kExitConfigError;
    }
    return execute(inv, selected);
}
