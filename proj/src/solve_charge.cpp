#include "bvm/solve_charge.hpp"

#include <cmath>

#include "bvm/linalg.hpp"
#include "bvm/numerics.hpp"

namespace bvm {

namespace {

double kernel_k(const Vec2& x, const Vec2& nx, const Vec2& y, double kappa_x, double gap,
                double length) {
    if (gap < 1e-12 * length) return 0.5 * kappa_x;
    const Vec2 d = x - y;
    return d.dot(nx) / d.squaredNorm();
}

Eigen::VectorXd lambda_at_nodes(const BoundaryCurve& curve, const BoundaryMesh& mesh,
                                const LambdaSpec& lambda) {
    const int n = mesh.N;
    Eigen::VectorXd values(n);
    switch (lambda.kind) {
    case LambdaSpec::Kind::Constant:
        values.setConstant(lambda.constant);
        break;
    case LambdaSpec::Kind::SigmaBlend: {
        const int samples = 1024;
        const double L = mesh.length;
        std::vector<Vec2> y(samples);
        for (int q = 0; q < samples; ++q) y[q] = curve.point(q * L / samples);
        for (int i = 0; i < n; ++i) {
            const double si = mesh.s_tilde[i];
            const Vec2 x = curve.point(si);
            const Vec2 nx = -perp(curve.tangent(si));
            const double kap = curve.curvature(si);
            double sup = -std::numeric_limits<double>::infinity();
            double inf = std::numeric_limits<double>::infinity();
            for (int q = 0; q < samples; ++q) {
                double gap = std::fmod(std::abs(si - q * L / samples), L);
                gap = std::min(gap, L - gap);
                const double k = kernel_k(x, nx, y[q], kap, gap, L);
                sup = std::max(sup, k);
                inf = std::min(inf, k);
            }
            values[i] = (1.0 - lambda.sigma) * sup + lambda.sigma * inf;
        }
        break;
    }
    case LambdaSpec::Kind::Table:
        if (lambda.table.size() != n)
            throw std::invalid_argument("lambda table size must match the mesh");
        values = lambda.table;
        break;
    }
    return values;
}

} // namespace

ChargeSystem build_charge_system(const BoundaryCurve& curve, const BoundaryMesh& mesh,
                                 const VorticityField& omega, double gamma,
                                 const HStarSpec& hstar,
                                 const std::optional<LambdaSpec>& lambda) {
    if (mesh.flavor != MeshFlavor::Charge)
        throw std::invalid_argument("build_charge_system: charge-flavor mesh required");
    validate_vorticity(omega, curve);
    const Vec2 singularity =
        hstar.kind == HStarSpec::Kind::DiskHarmonic ? Vec2(Vec2::Zero()) : hstar.x_star;
    if (!point_inside_obstacle(curve, singularity))
        throw std::invalid_argument("H_* singularity must lie inside the obstacle");

    const KernelMatrices km = assemble(curve, mesh);
    const int n = mesh.N;

    ChargeSystem system;
    system.mesh = mesh;
    system.curve = curve;
    system.hstar = hstar;
    system.gamma = gamma;
    system.basic_matrix = km.A / n;
    system.basic_matrix.diagonal().array() += pi / mesh.length;

    system.rhs.resize(n);
    for (int i = 0; i < n; ++i) {
        const double si = mesh.s_tilde[i];
        const Vec2 x = curve.point(si);
        const Vec2 nx = -perp(curve.tangent(si));
        Vec2 u = gamma * harmonic_field(hstar, x);
        if (!omega.blobs.empty()) u += velocity_fullplane(omega, x);
        system.rhs[i] = -2.0 * pi * u.dot(nx);
    }
    system.rhs_mean = system.rhs.mean();

    if (lambda.has_value()) {
        system.method = SolveMethod::ChargeLambda;
        system.lambda_values = lambda_at_nodes(curve, mesh, *lambda);
        if (std::abs(mesh.length * system.lambda_values.mean() - 2.0 * pi) < 1e-6)
            throw LambdaMeanNearTwoPi("corrected charge system degenerates at <lambda> = 2pi/L");
        system.matrix =
            system.basic_matrix - system.lambda_values * Eigen::RowVectorXd::Constant(n, 1.0 / n);
    } else {
        system.method = SolveMethod::Charge;
        system.matrix = system.basic_matrix;
    }
    return system;
}

BoundaryDensity solve_charge(const ChargeSystem& system) {
    const Eigen::VectorXd direct = lu_solve_checked(system.matrix, system.rhs);

    if (system.method == SolveMethod::ChargeLambda) {
        // independent route: two basic solves combined by the mean identity
        const FactoredLu basic(system.basic_matrix);
        const Eigen::VectorXd y1 = basic.solve(system.rhs);
        const Eigen::VectorXd y2 = basic.solve(system.lambda_values);
        const double c = y1.mean() / (1.0 - y2.mean());
        const Eigen::VectorXd reduced = y1 + c * y2;
        const double gap = (direct - reduced).cwiseAbs().maxCoeff();
        if (gap > 1e-6 * std::max(1.0, direct.cwiseAbs().maxCoeff()))
            throw SolverCrossCheckFailed("rank-one reduction disagrees with the direct solve");
    }

    BoundaryDensity density;
    density.method = system.method;
    density.values = direct;
    density.mesh = system.mesh;
    density.circulation = system.gamma;
    density.hstar = system.hstar;
    return density;
}

DominanceReport dominance_margin(const ChargeSystem& system) {
    const int n = static_cast<int>(system.matrix.cols());
    DominanceReport report;
    report.margins.resize(n);
    for (int j = 0; j < n; ++j) {
        const double diag = std::abs(system.matrix(j, j));
        report.margins[j] = 2.0 * diag - system.matrix.col(j).cwiseAbs().sum();
    }
    report.min_margin = report.margins.minCoeff();
    return report;
}

GeometricRadii geometric_radii(const BoundaryCurve& curve, int sample_density) {
    const double L = curve.length();
    const int n = sample_density;
    std::vector<Vec2> pt(n), nrm(n);
    std::vector<double> kap(n);
    for (int i = 0; i < n; ++i) {
        const double s = i * L / n;
        pt[i] = curve.point(s);
        nrm[i] = -perp(curve.tangent(s));
        kap[i] = curve.curvature(s);
    }
    double sup = -std::numeric_limits<double>::infinity();
    double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double k = i == j ? 0.5 * kap[i]
                                    : (pt[i] - pt[j]).dot(nrm[i]) / (pt[i] - pt[j]).squaredNorm();
            sup = std::max(sup, k);
            inf = std::min(inf, k);
        }
    }
    GeometricRadii radii;
    radii.r_sup = 1.0 / (2.0 * sup);
    radii.r_inf = 1.0 / (2.0 * inf);
    radii.sup_abs_kernel = std::max(std::abs(sup), std::abs(inf));
    radii.condition_2 = radii.sup_abs_kernel < std::sqrt(2.0) * pi / L;
    radii.condition_4 = radii.r_sup > L / (4.0 * pi);
    return radii;
}

double condition_estimate(const ChargeSystem& system) {
    return FactoredLu(system.matrix).condition_1();
}

} // namespace bvm
