#include "bvm/dynamics.hpp"

#include <cmath>

#include "bvm/numerics.hpp"

namespace bvm {

namespace {

SolveMethod to_solve_method(DynamicsMethod m) {
    switch (m) {
    case DynamicsMethod::Vortex: return SolveMethod::Vortex;
    case DynamicsMethod::Charge: return SolveMethod::Charge;
    case DynamicsMethod::ChargeLambda: return SolveMethod::ChargeLambda;
    default: throw std::invalid_argument("no boundary density for this method");
    }
}

VorticityField all_but(const std::vector<VortexBlob>& blobs, std::size_t k) {
    VorticityField omega;
    omega.blobs.reserve(blobs.size() - 1);
    for (std::size_t j = 0; j < blobs.size(); ++j)
        if (j != k) omega.blobs.push_back(blobs[j]);
    return omega;
}

std::vector<VortexBlob> displaced(const std::vector<VortexBlob>& blobs,
                                  const std::vector<Vec2>& velocity, double dt) {
    std::vector<VortexBlob> out = blobs;
    for (std::size_t k = 0; k < out.size(); ++k) out[k].center += dt * velocity[k];
    return out;
}

double pair_energy(const std::vector<VortexBlob>& blobs) {
    double e = 0.0;
    for (std::size_t i = 0; i < blobs.size(); ++i)
        for (std::size_t j = i + 1; j < blobs.size(); ++j)
            e += blobs[i].strength * blobs[j].strength *
                 std::log((blobs[i].center - blobs[j].center).norm());
    return e;
}

} // namespace

Simulator::Simulator(const BoundaryCurve& curve, const BoundaryMesh& mesh, DynamicsMethod method,
                     double gamma, const HStarSpec& hstar,
                     const std::optional<LambdaSpec>& lambda)
    : method_(method), gamma_(gamma), has_boundary_(true), curve_(curve), mesh_(mesh),
      hstar_(hstar) {
    collision_tol_ = 1e-3 * mesh.length;
    nodes_ = density_node_positions(curve, mesh);
    x_tilde_.resize(mesh.N);
    n_tilde_.resize(mesh.N);
    for (int i = 0; i < mesh.N; ++i) {
        x_tilde_[i] = curve.point(mesh.s_tilde[i]);
        n_tilde_[i] = -perp(curve.tangent(mesh.s_tilde[i]));
    }
    switch (method) {
    case DynamicsMethod::Vortex:
        lu_.emplace(vortex_matrix(assemble(curve, mesh)));
        break;
    case DynamicsMethod::Charge:
    case DynamicsMethod::ChargeLambda: {
        const auto system = build_charge_system(
            curve, mesh, VorticityField{}, gamma, hstar,
            method == DynamicsMethod::ChargeLambda ? lambda : std::nullopt);
        if (method == DynamicsMethod::ChargeLambda && !lambda.has_value())
            throw std::invalid_argument("charge-lambda method needs a lambda spec");
        lu_.emplace(system.matrix);
        break;
    }
    default:
        throw std::invalid_argument("boundary constructor used for a free-space method");
    }
}

Simulator::Simulator(DynamicsMethod method, double gamma) : method_(method), gamma_(gamma) {
    if (method == DynamicsMethod::ExactDisk)
        collision_tol_ = 1e-3 * 2.0 * pi;
    else if (method != DynamicsMethod::Free)
        throw std::invalid_argument("this constructor supports exact-disk and free methods only");
}

double Simulator::boundary_distance(const Vec2& x) const {
    if (method_ == DynamicsMethod::ExactDisk) return x.norm() - 1.0;
    return distance_to_boundary(curve_, x);
}

void Simulator::check_collision(const std::vector<VortexBlob>& blobs) const {
    if (method_ == DynamicsMethod::Free) return;
    for (const auto& b : blobs) {
        if (boundary_distance(b.center) < collision_tol_)
            throw BoundaryCollision("blob within 1e-3 L of the boundary");
    }
}

BoundaryDensity Simulator::solve_density(const std::vector<VortexBlob>& blobs) const {
    VorticityField omega;
    omega.blobs = blobs;
    Eigen::VectorXd rhs;
    if (method_ == DynamicsMethod::Vortex) {
        rhs = vortex_rhs(x_tilde_, n_tilde_, mesh_.length, omega, gamma_);
    } else {
        rhs.resize(mesh_.N);
        for (int i = 0; i < mesh_.N; ++i) {
            Vec2 u = gamma_ * harmonic_field(hstar_, x_tilde_[i]);
            if (!blobs.empty()) u += velocity_fullplane(omega, x_tilde_[i]);
            rhs[i] = -2.0 * pi * u.dot(n_tilde_[i]);
        }
    }
    BoundaryDensity density;
    density.method = to_solve_method(method_);
    density.values = lu_->solve(rhs);
    density.mesh = mesh_;
    density.circulation = gamma_;
    density.hstar = hstar_;
    return density;
}

std::vector<Vec2> Simulator::blob_velocities(const std::vector<VortexBlob>& blobs) const {
    BoundaryDensity density;
    if (has_boundary_) density = solve_density(blobs);
    DiskExactSolution sol;
    if (method_ == DynamicsMethod::ExactDisk) sol = make_disk_exact(blobs, gamma_);

    std::vector<Vec2> velocity(blobs.size());
    for (std::size_t k = 0; k < blobs.size(); ++k) {
        const Vec2& x = blobs[k].center;
        Vec2 u = velocity_fullplane(all_but(blobs, k), x); // own singular term excluded
        switch (method_) {
        case DynamicsMethod::Vortex:
            u += velocity_vortex_sheet(density, nodes_, x);
            break;
        case DynamicsMethod::Charge:
        case DynamicsMethod::ChargeLambda:
            u += velocity_charge(density, nodes_, x);
            break;
        case DynamicsMethod::ExactDisk:
            u += exact_disk_remainder(sol, x);
            break;
        case DynamicsMethod::Free:
            break;
        }
        velocity[k] = u;
    }
    return velocity;
}

SimulationState Simulator::step(const SimulationState& state, double h) const {
    const auto& x = state.blobs;
    const std::vector<Vec2> k1 = blob_velocities(x);
    const std::vector<Vec2> k2 = blob_velocities(displaced(x, k1, 0.5 * h));
    const std::vector<Vec2> k3 = blob_velocities(displaced(x, k2, 0.5 * h));
    const std::vector<Vec2> k4 = blob_velocities(displaced(x, k3, h));

    SimulationState next;
    next.blobs = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        next.blobs[i].center +=
            h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    next.t = state.t + h;
    check_collision(next.blobs);
    return next;
}

RunResult Simulator::run(const SimulationState& initial, double t_end, double h,
                         int output_every) const {
    if (!(t_end > 0.0) || !(h > 0.0)) throw std::invalid_argument("run: t_end and h must be > 0");
    if (output_every < 1) throw std::invalid_argument("run: output_every must be >= 1");
    if (has_boundary_) {
        VorticityField omega;
        omega.blobs = initial.blobs;
        validate_vorticity(omega, curve_);
    }
    check_collision(initial.blobs);

    RunResult result;
    for (const auto& b : initial.blobs) result.total_circulation += b.strength;

    const auto record = [&](const SimulationState& state) {
        result.times.push_back(state.t);
        std::vector<Vec2> pos;
        std::vector<double> rad;
        pos.reserve(state.blobs.size());
        rad.reserve(state.blobs.size());
        double min_dist = std::numeric_limits<double>::infinity();
        for (const auto& b : state.blobs) {
            pos.push_back(b.center);
            rad.push_back(b.center.norm());
            if (method_ != DynamicsMethod::Free)
                min_dist = std::min(min_dist, boundary_distance(b.center));
        }
        result.positions.push_back(std::move(pos));
        result.radii.push_back(std::move(rad));
        if (method_ != DynamicsMethod::Free) result.min_boundary_dist.push_back(min_dist);
        result.interaction_energy.push_back(pair_energy(state.blobs));
    };

    SimulationState state = initial;
    record(state);
    const long n_steps = std::max<long>(1, std::lround(t_end / h));
    for (long i = 1; i <= n_steps; ++i) {
        state = step(state, h);
        if (i % output_every == 0 || i == n_steps) record(state);
    }
    return result;
}

DynamicConvergence dynamic_convergence_study(const DynamicsSetup& setup,
                                             const std::vector<int>& n_list, double t_end) {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    SimulationState initial;
    initial.blobs = setup.blobs;

    const Simulator exact(DynamicsMethod::ExactDisk, setup.gamma);
    const RunResult reference = exact.run(initial, t_end, setup.h);

    const MeshFlavor flavor =
        setup.method == DynamicsMethod::Vortex ? MeshFlavor::Vortex : MeshFlavor::Charge;

    DynamicConvergence table;
    for (int n : n_list) {
        const BoundaryMesh mesh =
            setup.amplitude > 0.0
                ? perturbed_mesh(circle, n, flavor, setup.kappa, setup.amplitude, setup.seed)
                : uniform_mesh(circle, n, flavor);
        const Simulator sim(circle, mesh, setup.method, setup.gamma, setup.hstar, setup.lambda);
        const RunResult run = sim.run(initial, t_end, setup.h);

        double sup = 0.0;
        for (std::size_t i = 0; i < run.times.size(); ++i) {
            for (std::size_t k = 0; k < run.positions[i].size(); ++k)
                sup = std::max(sup,
                               (run.positions[i][k] - reference.positions[i][k]).norm());
        }
        table.n.push_back(n);
        table.sup_errors.push_back(sup);
    }
    const double slope = loglog_slope(table.n, table.sup_errors, 1e-13);
    table.fitted_order =
        std::isinf(slope) ? std::numeric_limits<double>::infinity() : -slope;
    return table;
}

} // namespace bvm
