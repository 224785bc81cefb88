#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bvm/config.hpp"

namespace bvm::cli {

/// Parsed command line shared by all subcommands. The string overrides use
/// the same syntax as the corresponding config fields and replace them.
struct Context {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> method;
    std::optional<std::string> hstar;
    std::optional<std::string> lambda;
};

/// Loads the config, applies overrides, dispatches, and maps failures to the
/// exit codes: 0 success, 2 configuration, 3 solver, 4 I/O.
int run(const std::string& subcommand, const Context& ctx) noexcept;

void cmd_geom(cfg::RunConfig config, const Context& ctx);
void cmd_static(cfg::RunConfig config, const Context& ctx);
void cmd_converge(cfg::RunConfig config, const Context& ctx);
void cmd_diagnose(cfg::RunConfig config, const Context& ctx);
void cmd_dynamics(cfg::RunConfig config, const Context& ctx);

}  // namespace bvm::cli
