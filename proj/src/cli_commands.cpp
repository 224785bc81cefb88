#include "bvm/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <utility>
#include <vector>

#include "bvm/dynamics.hpp"
#include "bvm/io.hpp"
#include "bvm/kernel_ops.hpp"
#include "bvm/oracle.hpp"
#include "bvm/solve_charge.hpp"
#include "bvm/solve_vortex.hpp"

namespace bvm::cli {

namespace {

using io::CsvCell;
using io::CsvWriter;
using io::Json;

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void emit(const std::string& path, const std::string& content) {
    io::write_text_file(path, content);
    std::cout << "wrote " << path << "\n";
}

const char* curve_kind_name(const CurveSpec& spec) {
    switch (spec.kind) {
    case CurveKind::Circle: return "circle";
    case CurveKind::Ellipse: return "ellipse";
    case CurveKind::Fourier: return "fourier";
    }
    return "circle";
}

bool is_boundary_method(DynamicsMethod m) {
    return m == DynamicsMethod::Vortex || m == DynamicsMethod::Charge ||
           m == DynamicsMethod::ChargeLambda;
}

struct StaticSolution {
    BoundaryDensity density;
    double condition = 0.0;
    double residual_inf = 0.0;
    std::optional<double> dominance_min;
    std::optional<double> rhs_mean;
    std::optional<double> lambda_mean;
};

StaticSolution solve_static(const cfg::RunConfig& config, const BoundaryCurve& curve,
                            const BoundaryMesh& mesh) {
    VorticityField omega{config.vorticity};
    if (config.method == DynamicsMethod::Vortex) {
        VortexSystem sys = build_system(curve, mesh, omega, config.gamma);
        StaticSolution out;
        out.density = solve(sys);
        out.condition = condition_estimate(sys);
        out.residual_inf = linf_norm(sys.matrix * out.density.values - sys.rhs);
        return out;
    }
    std::optional<LambdaSpec> lambda;
    if (config.method == DynamicsMethod::ChargeLambda) lambda = config.lambda;
    ChargeSystem sys = build_charge_system(curve, mesh, omega, config.gamma, config.hstar, lambda);
    StaticSolution out;
    out.density = solve_charge(sys);
    out.condition = condition_estimate(sys);
    out.residual_inf = linf_norm(sys.matrix * out.density.values - sys.rhs);
    out.dominance_min = dominance_margin(sys).min_margin;
    out.rhs_mean = sys.rhs_mean;
    if (sys.lambda_values.size()) out.lambda_mean = mean(sys.lambda_values);
    return out;
}

Vec2 total_velocity(const BoundaryDensity& density, const std::vector<Vec2>& nodes,
                    const VorticityField& omega, const Vec2& x) {
    Vec2 u = velocity_fullplane(omega, x);
    if (density.method == SolveMethod::Vortex)
        u += velocity_vortex_sheet(density, nodes, x);
    else
        u += velocity_charge(density, nodes, x);
    return u;
}

std::vector<Vec2> eval_targets(const cfg::RunConfig& config) {
    if (config.eval_points) return *config.eval_points;
    cfg::EvalCircle c = config.eval_circle.value_or(cfg::EvalCircle{});
    std::vector<Vec2> pts(static_cast<std::size_t>(c.count));
    for (int k = 0; k < c.count; ++k) {
        double th = 2.0 * pi * k / c.count;
        pts[static_cast<std::size_t>(k)] = Vec2(c.radius * std::cos(th), c.radius * std::sin(th));
    }
    return pts;
}

/// Circle of integration for the circulation check: the eval circle when one
/// is configured, otherwise 1.25x the larger of the boundary extent and the
/// farthest blob; grown until it clears every blob.
double circulation_radius(const cfg::RunConfig& config, const BoundaryCurve& curve) {
    double r = 0.0;
    if (config.eval_circle) r = config.eval_circle->radius;
    double extent = 0.0;
    for (int i = 0; i < 512; ++i)
        extent = std::max(extent, curve.point(i * curve.length() / 512).norm());
    if (r <= extent) {
        double blob_max = 0.0;
        for (const auto& b : config.vorticity) blob_max = std::max(blob_max, b.center.norm());
        r = 1.25 * std::max(extent, blob_max) + 0.25;
    }
    auto clears_blobs = [&](double radius) {
        for (const auto& b : config.vorticity)
            if (std::abs(b.center.norm() - radius) < 1e-3) return false;
        return true;
    };
    while (!clears_blobs(r)) r *= 1.07;
    return r;
}

struct CirculationCheck {
    double radius = 0.0;
    double measured = 0.0;
    double expected = 0.0;
};

CirculationCheck circulation_check(const cfg::RunConfig& config, const BoundaryCurve& curve,
                                   const BoundaryDensity& density,
                                   const std::vector<Vec2>& nodes, const VorticityField& omega) {
    CirculationCheck out;
    out.radius = circulation_radius(config, curve);
    const int quad = 2048;
    double sum = 0.0;
    for (int k = 0; k < quad; ++k) {
        double th = 2.0 * pi * (k + 0.5) / quad;
        Vec2 x(out.radius * std::cos(th), out.radius * std::sin(th));
        Vec2 tau(-std::sin(th), std::cos(th));
        sum += total_velocity(density, nodes, omega, x).dot(tau);
    }
    out.measured = sum * (2.0 * pi * out.radius / quad);
    out.expected = config.gamma;
    for (const auto& b : config.vorticity)
        if (b.center.norm() < out.radius) out.expected += b.strength;
    return out;
}

} // namespace

void cmd_geom(cfg::RunConfig config, const Context& ctx) {
    BoundaryCurve curve = cfg::validate_config(config);
    const int samples = config.mesh ? config.mesh->n : 256;
    const double L = curve.length();

    CsvWriter csv({"s", "x", "y", "tau_x", "tau_y", "n_x", "n_y", "curvature"});
    double kappa_min = std::numeric_limits<double>::infinity();
    double kappa_max = -kappa_min;
    for (int i = 0; i < samples; ++i) {
        double s = i * L / samples;
        Vec2 x = curve.point(s), tau = curve.tangent(s), n = curve.normal(s);
        double kappa = curve.curvature(s);
        kappa_min = std::min(kappa_min, kappa);
        kappa_max = std::max(kappa_max, kappa);
        csv.add_row({CsvCell::num(s), CsvCell::num(x.x()), CsvCell::num(x.y()),
                     CsvCell::num(tau.x()), CsvCell::num(tau.y()), CsvCell::num(n.x()),
                     CsvCell::num(n.y()), CsvCell::num(kappa)});
    }
    GeometricRadii radii = geometric_radii(curve);

    Json summary = Json::object();
    summary.set("condition_2", Json::boolean(radii.condition_2))
        .set("condition_4", Json::boolean(radii.condition_4))
        .set("curvature_max", Json::real(kappa_max))
        .set("curvature_min", Json::real(kappa_min))
        .set("kind", Json::str(curve_kind_name(config.curve)))
        .set("length", Json::real(L))
        .set("r_inf", Json::real(radii.r_inf))
        .set("r_sup", Json::real(radii.r_sup))
        .set("samples", Json::integer(samples))
        .set("sup_abs_kernel", Json::real(radii.sup_abs_kernel));

    emit(join_path(ctx.out_dir, config.output.geometry), csv.dump());
    emit(join_path(ctx.out_dir, config.output.summary), summary.dump());
}

void cmd_static(cfg::RunConfig config, const Context& ctx) {
    if (!is_boundary_method(config.method))
        throw ConfigError("static requires method vortex, charge or charge-lambda");
    BoundaryCurve curve = cfg::validate_config(config);
    BoundaryMesh mesh = cfg::make_mesh(config, curve);
    VorticityField omega{config.vorticity};

    StaticSolution sol = solve_static(config, curve, mesh);
    std::vector<Vec2> nodes = density_node_positions(curve, mesh);

    const bool vortex = config.method == DynamicsMethod::Vortex;
    CsvWriter density_csv({"index", "s_i", vortex ? "gamma_i" : "q_i"});
    for (int i = 0; i < mesh.N; ++i)
        density_csv.add_row({CsvCell::idx(i), CsvCell::num(mesh.s[static_cast<std::size_t>(i)]),
                             CsvCell::num(sol.density.values[i])});

    // Tangency of the assembled field at the imposed collocation midpoints;
    // only the vortex method has off-node midpoints where the sheet sum is
    // directly evaluable.
    std::optional<double> tangency_max;
    if (vortex) {
        double worst = 0.0;
        for (int i = 0; i + 1 < mesh.N; ++i) {
            double st = mesh.s_tilde[static_cast<std::size_t>(i)];
            Vec2 x = curve.point(st);
            worst = std::max(worst,
                             std::abs(total_velocity(sol.density, nodes, omega, x)
                                          .dot(curve.normal(st))));
        }
        tangency_max = worst;
    }

    CirculationCheck circ = circulation_check(config, curve, sol.density, nodes, omega);

    std::vector<Vec2> targets = eval_targets(config);
    std::vector<Vec2> values(targets.size());
    parallel_for(static_cast<int>(targets.size()), ctx.threads, [&](int i) {
        values[static_cast<std::size_t>(i)] =
            total_velocity(sol.density, nodes, omega, targets[static_cast<std::size_t>(i)]);
    });
    CsvWriter field_csv({"x", "y", "ux", "uy"});
    for (std::size_t i = 0; i < targets.size(); ++i)
        field_csv.add_row({CsvCell::num(targets[i].x()), CsvCell::num(targets[i].y()),
                           CsvCell::num(values[i].x()), CsvCell::num(values[i].y())});

    Json summary = Json::object();
    summary.set("circulation_error", Json::real(std::abs(circ.measured - circ.expected)))
        .set("circulation_expected", Json::real(circ.expected))
        .set("circulation_measured", Json::real(circ.measured))
        .set("circulation_radius", Json::real(circ.radius))
        .set("condition_1", Json::real(sol.condition))
        .set("density_mean", Json::real(mean(sol.density.values)))
        .set("dominance_min_margin",
             sol.dominance_min ? Json::real(*sol.dominance_min) : Json::null())
        .set("gamma", Json::real(config.gamma))
        .set("lambda_mean", sol.lambda_mean ? Json::real(*sol.lambda_mean) : Json::null())
        .set("method", Json::str(cfg::method_name(config.method)))
        .set("n", Json::integer(mesh.N))
        .set("residual_inf", Json::real(sol.residual_inf))
        .set("rhs_mean", sol.rhs_mean ? Json::real(*sol.rhs_mean) : Json::null())
        .set("tangency_max", tangency_max ? Json::real(*tangency_max) : Json::null());

    emit(join_path(ctx.out_dir, config.output.density), density_csv.dump());
    emit(join_path(ctx.out_dir, config.output.field), field_csv.dump());
    emit(join_path(ctx.out_dir, config.output.summary), summary.dump());
}

void cmd_converge(cfg::RunConfig config, const Context& ctx) {
    if (!is_boundary_method(config.method))
        throw ConfigError("converge requires method vortex, charge or charge-lambda");
    if (config.n_list.size() < 3)
        throw ConfigError("converge needs at least 3 N values to fit an order");
    const CurveSpec& c = config.curve;
    if (c.kind != CurveKind::Circle || c.center.norm() != 0.0 || c.radius != 1.0)
        throw ConfigError(
            "converge compares against the exact exterior solution of the unit disk; "
            "set curve to the unit circle at the origin");
    BoundaryCurve curve = cfg::validate_config(config);
    if (!config.mesh) config.mesh = cfg::MeshBlock{};

    DiskExactSolution exact = make_disk_exact(config.vorticity, config.gamma);
    VorticityField omega{config.vorticity};
    std::vector<Vec2> targets = eval_targets(config);

    CsvWriter csv({"N", "sup_error", "slope_so_far"});
    std::vector<int> ns;
    std::vector<double> errs;
    for (int n : config.n_list) {
        BoundaryMesh mesh = cfg::make_mesh(config, curve, n);
        StaticSolution sol = solve_static(config, curve, mesh);
        std::vector<Vec2> nodes = density_node_positions(curve, mesh);
        std::vector<double> point_err(targets.size());
        parallel_for(static_cast<int>(targets.size()), ctx.threads, [&](int i) {
            const Vec2& x = targets[static_cast<std::size_t>(i)];
            point_err[static_cast<std::size_t>(i)] =
                (total_velocity(sol.density, nodes, omega, x) - exact_disk_velocity(exact, x))
                    .norm();
        });
        double sup = 0.0;
        for (double e : point_err) sup = std::max(sup, e);
        ns.push_back(n);
        errs.push_back(sup);
        double slope = ns.size() < 2 ? std::numeric_limits<double>::quiet_NaN()
                                     : loglog_slope(ns, errs, 1e-15);
        csv.add_row({CsvCell::idx(n), CsvCell::num(sup), CsvCell::num(slope)});
    }
    emit(join_path(ctx.out_dir, config.output.converge), csv.dump());
}

void cmd_diagnose(cfg::RunConfig config, const Context& ctx) {
    BoundaryCurve curve = cfg::validate_config(config);
    BoundaryMesh mesh = cfg::make_mesh(config, curve);
    KernelMatrices km = assemble(curve, mesh);
    VorticityField omega{config.vorticity};

    Json out = Json::object();
    Json notes = Json::array();
    out.set("N", Json::integer(mesh.N));
    out.set("flavor", Json::str(mesh.flavor == MeshFlavor::Vortex ? "vortex" : "charge"));
    out.set("length", Json::real(curve.length()));

    std::mt19937_64 gen(config.mesh->seed);
    Eigen::VectorXd z(mesh.N);
    for (int i = 0; i < mesh.N; ++i) z[i] = uniform_pm1(gen);

    if (mesh.flavor == MeshFlavor::Vortex) {
        CotDeviation cot = cot_sum_deviation(mesh);
        out.set("cot_dev", Json::real(std::max(cot.forward, cot.transposed)));
        PbDiscreteResidual pb = discrete_pb_residual(km, z);
        out.set("pb_residual", Json::real_array({pb.difference, pb.mixed, pb.tilde_difference,
                                                 pb.tilde_mixed}));
        MeanResidualReport mr = mean_residual(km, z);
        out.set("mean_residual", Json::real(std::max(mr.value, mr.tilde_value)));
        VortexSystem sys = build_system(curve, mesh, omega, config.gamma);
        out.set("condition_estimate", Json::real(condition_estimate(sys)));
        out.set("dominance_min_margin", Json::null());
        notes.push(Json::str("dominance is defined for charge systems; reassemble with the "
                             "charge flavor to measure it"));
        out.set("rhs_mean", Json::null());
    } else {
        out.set("cot_dev", Json::null());
        out.set("pb_residual", Json::null());
        out.set("mean_residual", Json::null());
        notes.push(Json::str("staggered cotangent diagnostics need the vortex flavor"));
        std::optional<LambdaSpec> lambda;
        if (config.method == DynamicsMethod::ChargeLambda) lambda = config.lambda;
        ChargeSystem sys =
            build_charge_system(curve, mesh, omega, config.gamma, config.hstar, lambda);
        out.set("dominance_min_margin", Json::real(dominance_margin(sys).min_margin));
        out.set("condition_estimate", Json::real(condition_estimate(sys)));
        out.set("rhs_mean", Json::real(sys.rhs_mean));
    }

    SpectralReport spectral = spectral_radius_meanzero(km);
    out.set("rho0", Json::real(spectral.rho0));
    out.set("rho_full", Json::real(spectral.rho_full));
    out.set("spectral_converged", Json::boolean(spectral.converged));
    out.set("spectral_iterations", Json::integer(spectral.iterations));

    GeometricRadii radii = geometric_radii(curve);
    out.set("r_sup", Json::real(radii.r_sup));
    out.set("r_inf", Json::real(radii.r_inf));
    out.set("sup_abs_kernel", Json::real(radii.sup_abs_kernel));
    out.set("condition_2", Json::boolean(radii.condition_2));
    out.set("condition_4", Json::boolean(radii.condition_4));
    out.set("notes", std::move(notes));

    emit(join_path(ctx.out_dir, config.output.diagnostics), out.dump());
}

void cmd_dynamics(cfg::RunConfig config, const Context& ctx) {
    if (!config.dynamics) throw ConfigError("dynamics requires a dynamics block");
    if (config.vorticity.empty()) throw ConfigError("dynamics requires at least one blob");
    BoundaryCurve curve = cfg::validate_config(config);
    const cfg::DynamicsBlock& d = *config.dynamics;

    std::optional<Simulator> sim;
    std::optional<int> mesh_n;
    if (is_boundary_method(config.method)) {
        BoundaryMesh mesh = cfg::make_mesh(config, curve);
        mesh_n = mesh.N;
        sim.emplace(curve, mesh, config.method, config.gamma, config.hstar, config.lambda);
    } else {
        sim.emplace(config.method, config.gamma);
    }

    SimulationState initial{config.vorticity, 0.0};
    RunResult result = sim->run(initial, d.t_end, d.h, d.output_every);

    CsvWriter traj({"t", "blob_index", "x", "y"});
    for (std::size_t k = 0; k < result.times.size(); ++k)
        for (std::size_t b = 0; b < result.positions[k].size(); ++b)
            traj.add_row({CsvCell::num(result.times[k]), CsvCell::idx(static_cast<int>(b)),
                          CsvCell::num(result.positions[k][b].x()),
                          CsvCell::num(result.positions[k][b].y())});

    double min_dist = std::numeric_limits<double>::infinity();
    for (double v : result.min_boundary_dist) min_dist = std::min(min_dist, v);
    double radius_drift = 0.0;
    for (std::size_t k = 0; k < result.radii.size(); ++k)
        for (std::size_t b = 0; b < result.radii[k].size(); ++b)
            radius_drift = std::max(radius_drift,
                                    std::abs(result.radii[k][b] - result.radii[0][b]));
    double energy_first = result.interaction_energy.empty() ? 0.0 : result.interaction_energy.front();
    double energy_last = result.interaction_energy.empty() ? 0.0 : result.interaction_energy.back();

    Json diag = Json::object();
    diag.set("blob_count", Json::integer(static_cast<std::int64_t>(config.vorticity.size())))
        .set("h", Json::real(d.h))
        .set("interaction_energy_drift", Json::real(std::abs(energy_last - energy_first)))
        .set("interaction_energy_final", Json::real(energy_last))
        .set("interaction_energy_initial", Json::real(energy_first))
        .set("method", Json::str(cfg::method_name(config.method)))
        .set("min_boundary_dist",
             result.min_boundary_dist.empty() ? Json::null() : Json::real(min_dist))
        .set("n", mesh_n ? Json::integer(*mesh_n) : Json::null())
        .set("output_every", Json::integer(d.output_every))
        .set("radius_drift_max", Json::real(radius_drift))
        .set("snapshots", Json::integer(static_cast<std::int64_t>(result.times.size())))
        .set("t_end", Json::real(d.t_end))
        .set("total_circulation", Json::real(result.total_circulation));

    emit(join_path(ctx.out_dir, config.output.trajectory), traj.dump());
    emit(join_path(ctx.out_dir, config.output.diagnostics), diag.dump());
}

int run(const std::string& subcommand, const Context& ctx) noexcept {
    try {
        cfg::RunConfig config = cfg::load_config(ctx.config_path);
        if (ctx.method) config.method = cfg::parse_method(*ctx.method);
        if (ctx.hstar) config.hstar = cfg::parse_hstar(*ctx.hstar);
        if (ctx.lambda) config.lambda = cfg::parse_lambda(*ctx.lambda);
        if (ctx.seed && config.mesh) config.mesh->seed = *ctx.seed;

        if (subcommand == "geom")
            cmd_geom(std::move(config), ctx);
        else if (subcommand == "static")
            cmd_static(std::move(config), ctx);
        else if (subcommand == "converge")
            cmd_converge(std::move(config), ctx);
        else if (subcommand == "diagnose")
            cmd_diagnose(std::move(config), ctx);
        else if (subcommand == "dynamics")
            cmd_dynamics(std::move(config), ctx);
        else
            throw ConfigError("unknown subcommand \"" + subcommand + "\"");
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const NonSimpleCurve& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NonPositiveRadius& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const OrderingViolated& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientSamples& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BlobTouchesBoundary& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InsideObstacle& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bvm::cli
