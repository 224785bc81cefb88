#include "bvm/solve_vortex.hpp"

#include "bvm/linalg.hpp"
#include "bvm/numerics.hpp"

namespace bvm {

Eigen::MatrixXd vortex_matrix(const KernelMatrices& km) {
    const int n = km.mesh.N;
    Eigen::MatrixXd m(n, n);
    m.topRows(n - 1) = (km.mesh.length / n) * km.b_rect();
    m.row(n - 1).setConstant(1.0 / n);
    return m;
}

Eigen::VectorXd vortex_rhs(const std::vector<Vec2>& x_tilde, const std::vector<Vec2>& n_tilde,
                           double length, const VorticityField& omega, double gamma) {
    const int n = static_cast<int>(x_tilde.size());
    Eigen::VectorXd rhs(n);
    for (int i = 0; i + 1 < n; ++i) {
        const double f = 2.0 * pi * velocity_fullplane(omega, x_tilde[i]).dot(n_tilde[i]);
        rhs[i] = length * f;
    }
    rhs[n - 1] = gamma;
    return rhs;
}

VortexSystem build_system(const BoundaryCurve& curve, const BoundaryMesh& mesh,
                          const VorticityField& omega, double gamma) {
    if (mesh.flavor != MeshFlavor::Vortex)
        throw std::invalid_argument("build_system: vortex-flavor mesh required");
    validate_vorticity(omega, curve);

    const KernelMatrices km = assemble(curve, mesh);
    std::vector<Vec2> x_tilde(mesh.N), n_tilde(mesh.N);
    for (int i = 0; i < mesh.N; ++i) {
        x_tilde[i] = curve.point(mesh.s_tilde[i]);
        n_tilde[i] = -perp(curve.tangent(mesh.s_tilde[i]));
    }

    VortexSystem system;
    system.matrix = vortex_matrix(km);
    system.rhs = vortex_rhs(x_tilde, n_tilde, mesh.length, omega, gamma);
    system.mesh = mesh;
    system.curve = curve;
    return system;
}

BoundaryDensity solve(const VortexSystem& system) {
    BoundaryDensity density;
    density.method = SolveMethod::Vortex;
    density.values = lu_solve_checked(system.matrix, system.rhs);
    density.mesh = system.mesh;
    density.circulation = system.rhs[system.mesh.N - 1];
    return density;
}

double condition_estimate(const VortexSystem& system) {
    return FactoredLu(system.matrix).condition_1();
}

} // namespace bvm
