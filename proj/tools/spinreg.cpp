// spinreg — command-line front end: one subcommand per figure-style CSV
// series plus the headline text report.
//
// Exit codes: 0 success, 1 numeric failure, 2 configuration error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spinreg/figures.hpp"
#include "spinreg/run_config.hpp"
#include "spinreg/version.hpp"

namespace {

struct CommonOptions {
    std::string config_file;
    std::string out_path;
    std::vector<std::string> params;
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_file, "key = value config file");
    cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--samples", opts.samples, "Monte Carlo sample count");
    cmd->add_option("--param", opts.params, "override: key=value (repeatable)");
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return 1;
    }
    out << text;
    return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(spinreg::version_string) +
                 " — decoherence and fidelity of encoded spin registers"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        std::string (*run)(const spinreg::CommandRequest&);
    };
    const Command commands[] = {
        {"fig-decoherence", "single-pair decoherence functions K(0,t), K(r0,t)",
         spinreg::fig_decoherence},
        {"fig-knull", "plain vs first-order encoded decoherence, two temperatures",
         spinreg::fig_knull},
        {"fig-knull-T", "asymptotic K_0^chi(inf) against temperature",
         spinreg::fig_knull_temperature},
        {"fig-fidelity-examples",
         "independent and symmetric register fidelities against kappa",
         spinreg::fig_fidelity_examples},
        {"fig-foft", "time-dependent plain-register fidelity between the bounds",
         spinreg::fig_fidelity_time},
        {"fig-temperature", "plain vs encoded register fidelity across temperatures",
         spinreg::fig_temperature},
        {"fig-dissipative", "dissipative two-spin subspace fidelity curves",
         spinreg::fig_dissipative},
        {"fig-reduction", "decay-rate reduction against p = eps a",
         spinreg::fig_rate_reduction},
        {"headline", "saturated fidelity and rate-requirement report",
         spinreg::headline_report},
    };

    std::vector<std::pair<CLI::App*, CommonOptions>> registered;
    registered.reserve(std::size(commands));  // CLI11 holds pointers into it
    for (const Command& command : commands) {
        CLI::App* sub = app.add_subcommand(command.name, command.help);
        registered.emplace_back(sub, CommonOptions{});
        add_common(sub, registered.back().second);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(commands); ++i) {
        if (!registered[i].first->parsed()) continue;
        const CommonOptions& opts = registered[i].second;
        spinreg::CommandRequest req;
        req.config_file = opts.config_file;
        req.params = opts.params;
        req.seed = opts.seed;
        req.samples = opts.samples;
        try {
            return emit(commands[i].run(req), opts.out_path);
        } catch (const spinreg::ConfigError& err) {
            std::cerr << "config error: " << err.what() << "\n";
            return 2;
        } catch (const std::exception& err) {
            std::cerr << "error: " << err.what() << "\n";
            return 1;
        }
    }
    return 2;
}
