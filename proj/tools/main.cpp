// Command-line front end: evaluate states, sweep parameter grids, and run
// LHV ensemble analyses, writing CSV/JSON reports.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvbell/scenario.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    std::vector<int> dims;
    int order_k = 1;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* dims_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* format_opt = nullptr;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path, "JSON scenario config file");
    sub->add_option("--preset", flags.preset,
                    "built-in scenario (see `presets` subcommand)");
    sub->add_option("--out", flags.out_path, "report output path");
    flags.format_opt =
        sub->add_option("--format", flags.format, "report format: csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
    flags.seed_opt = sub->add_option("--seed", flags.seed, "RNG seed");
    flags.dims_opt = sub->add_option("--dims", flags.dims, "Fock levels per mode, e.g. 2,2")
                         ->delimiter(',');
    flags.k_opt = sub->add_option("--order-k", flags.order_k,
                                  "amplitude order k (C = a^k)");
}

cvbell::ScenarioConfig build_config(const CommonFlags& flags,
                                    cvbell::ScenarioKind kind) {
    cvbell::ScenarioConfig config;
    if (!flags.preset.empty() && !flags.config_path.empty()) {
        throw cvbell::ConfigError("--preset and --config are mutually exclusive");
    }
    if (!flags.preset.empty()) {
        config = cvbell::preset_config(flags.preset);
    }
    if (!flags.config_path.empty()) {
        config = cvbell::load_config_file(flags.config_path, std::move(config));
    }
    // Flags override both the preset and the config file.
    if (!flags.out_path.empty()) config.out_path = flags.out_path;
    if (flags.format_opt->count() > 0) {
        config.format = cvbell::parse_output_format(flags.format);
    }
    if (flags.seed_opt->count() > 0) config.seed = flags.seed;
    if (flags.dims_opt->count() > 0) config.dims = flags.dims;
    if (flags.k_opt->count() > 0) config.order_k = flags.order_k;
    config.kind = kind;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-variable wave-correlation inequality lab"};
    app.require_subcommand(1);

    CommonFlags eval_flags;
    CommonFlags sweep_flags;
    CommonFlags lhv_flags;

    CLI::App* eval_cmd =
        app.add_subcommand("evaluate", "evaluate one state and write a single row");
    add_common_flags(eval_cmd, eval_flags);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "evaluate a grid of scenario points");
    add_common_flags(sweep_cmd, sweep_flags);

    CLI::App* lhv_cmd = app.add_subcommand(
        "lhv-search", "run an LHV ensemble analysis or adversarial search");
    add_common_flags(lhv_cmd, lhv_flags);

    CLI::App* presets_cmd =
        app.add_subcommand("presets", "list the built-in scenario presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (presets_cmd->parsed()) {
            for (const std::string& name : cvbell::preset_names()) {
                std::cout << name << "\n";
            }
            return 0;
        }
        cvbell::ScenarioConfig config;
        if (eval_cmd->parsed()) {
            config = build_config(eval_flags, cvbell::ScenarioKind::Evaluate);
        } else if (sweep_cmd->parsed()) {
            config = build_config(sweep_flags, cvbell::ScenarioKind::Sweep);
        } else {
            config = build_config(lhv_flags, cvbell::ScenarioKind::LhvSearch);
        }
        cvbell::run_scenario(config, std::cout);
        return 0;
    } catch (const cvbell::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const cvbell::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cvbell::TruncationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
