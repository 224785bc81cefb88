#include <string>

#include "CLI11.hpp"

#include "bvm/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"boundary vortex and fluid charge methods for ideal flow past an obstacle"};
    app.require_subcommand(1);

    bvm::cli::Context ctx;
    app.add_option("--config", ctx.config_path, "JSON run configuration")->required();
    app.add_option("--out", ctx.out_dir, "output directory (default: current)");
    app.add_option("--threads", ctx.threads, "worker threads for batch field evaluation")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", ctx.seed, "override the mesh perturbation seed");

    CLI::App* sub_geom = app.add_subcommand("geom", "boundary geometry table and radii report");
    CLI::App* sub_static =
        app.add_subcommand("static", "solve one boundary density and dump the fields");
    CLI::App* sub_converge =
        app.add_subcommand("converge", "mesh refinement sweep against the exact disk solution");
    CLI::App* sub_diagnose =
        app.add_subcommand("diagnose", "operator identity and conditioning diagnostics");
    CLI::App* sub_dynamics = app.add_subcommand("dynamics", "integrate vortex blob trajectories");
    for (CLI::App* sub : {sub_geom, sub_static, sub_converge, sub_diagnose, sub_dynamics})
        sub->fallthrough();

    std::string method, hstar, lambda;
    sub_static->add_option("--method", method, "vortex | charge | charge-lambda");
    sub_static->add_option("--hstar", hstar, "disk | point:x,y");
    sub_static->add_option("--lambda", lambda, "const:c | sigma:s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!method.empty()) ctx.method = method;
    if (!hstar.empty()) ctx.hstar = hstar;
    if (!lambda.empty()) ctx.lambda = lambda;

    for (const CLI::App* sub : app.get_subcommands()) return bvm::cli::run(sub->get_name(), ctx);
    return 2;
}
