// figures.hpp — CSV series for each figure-style computation plus the
// headline text report. Each command resolves its defaults, overlays an
// optional config file and parameter overrides, and returns the complete
// output text (deterministic for a fixed configuration and seed).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinreg {

struct CommandRequest {
    std::string config_file;          // empty: defaults only
    std::vector<std::string> params;  // key=value overrides; flags win
    std::uint64_t seed = 0;
    std::int64_t samples = 0;  // 0: keep the command default
};

std::string fig_decoherence(const CommandRequest& req);
std::string fig_knull(const CommandRequest& req);
std::string fig_knull_temperature(const CommandRequest& req);
std::string fig_fidelity_examples(const CommandRequest& req);
std::string fig_fidelity_time(const CommandRequest& req);
std::string fig_temperature(const CommandRequest& req);
std::string fig_dissipative(const CommandRequest& req);
std::string fig_rate_reduction(const CommandRequest& req);
std::string headline_report(const CommandRequest& req);

}  // namespace spinreg
