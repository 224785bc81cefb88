#include "catch_amalgamated.hpp"

#include <cmath>

#include "bvm/errors.hpp"
#include "bvm/linalg.hpp"
#include "bvm/oracle.hpp"
#include "bvm/solve_vortex.hpp"

using namespace bvm;

namespace {

const VorticityField single_vortex{{{Vec2(2.0, 0.0), 1.0, 0.05}}};

} // namespace

TEST_CASE("no vorticity and unit circulation give the constant density") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const BoundaryMesh mesh = uniform_mesh(circle, 64, MeshFlavor::Vortex);

    const VortexSystem sys = build_system(circle, mesh, VorticityField{}, 1.0);
    REQUIRE(sys.rhs.head(63).lpNorm<Eigen::Infinity>() == 0.0);
    REQUIRE(sys.rhs[63] == 1.0);

    const BoundaryDensity d = solve(sys);
    REQUIRE(d.method == SolveMethod::Vortex);
    REQUIRE(std::abs(d.circulation - 1.0) == 0.0);
    REQUIRE((d.values.array() - 1.0).abs().maxCoeff() <= 1e-10);

    // homogeneous problem solves to exactly zero
    const BoundaryDensity zero = solve(build_system(circle, mesh, VorticityField{}, 0.0));
    REQUIRE(zero.values.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("system layout stacks scaled tangency rows over the mean constraint") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const BoundaryMesh mesh = uniform_mesh(circle, 32, MeshFlavor::Vortex);
    const KernelMatrices km = assemble(circle, mesh);
    const VortexSystem sys = build_system(circle, mesh, single_vortex, 0.25);

    const int n = mesh.N;
    REQUIRE((sys.matrix.topRows(n - 1) - (mesh.length / n) * km.b_rect()).norm() == 0.0);
    REQUIRE((sys.matrix.row(n - 1).array() - 1.0 / n).abs().maxCoeff() == 0.0);
    REQUIRE(std::abs(sys.matrix.row(n - 1).sum() - 1.0) <= 1e-12);

    for (int i = 0; i + 1 < n; ++i) {
        const Vec2 x = circle.point(mesh.s_tilde[i]);
        const Vec2 nx = -perp(circle.tangent(mesh.s_tilde[i]));
        const double f = 2.0 * pi * velocity_fullplane(single_vortex, x).dot(nx);
        REQUIRE(std::abs(sys.rhs[i] - mesh.length * f) <= 1e-12);
    }
    REQUIRE(sys.rhs[n - 1] == 0.25);
}

TEST_CASE("mirroring the vortex across the x axis flips the tangency data") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const BoundaryMesh mesh = uniform_mesh(circle, 32, MeshFlavor::Vortex);
    const VorticityField up{{{Vec2(2.0, 1.0), 1.0, 0.05}}};
    const VorticityField down{{{Vec2(2.0, -1.0), 1.0, 0.05}}};
    const Eigen::VectorXd r1 = build_system(circle, mesh, up, 0.0).rhs;
    const Eigen::VectorXd r2 = build_system(circle, mesh, down, 0.0).rhs;
    // midpoint s_tilde_i reflects onto s_tilde_{N-1-i}; a mirrored vortex
    // reverses its rotation sense, so the normal data changes sign
    for (int i = 1; i + 1 < mesh.N; ++i)
        REQUIRE(std::abs(r2[i] + r1[mesh.N - 1 - i]) <= 1e-12);
}

TEST_CASE("solved density reproduces the image field outside the disk") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const BoundaryMesh mesh = uniform_mesh(circle, 64, MeshFlavor::Vortex);

    for (double gamma : {0.0, 1.0}) {
        const BoundaryDensity d = solve(build_system(circle, mesh, single_vortex, gamma));
        REQUIRE(std::abs(d.values.mean() - gamma) <= 1e-10);
        const DiskExactSolution sol = make_disk_exact(single_vortex.blobs, gamma);
        REQUIRE((velocity_vortex_sheet(d, circle, Vec2(3.0, 0.0)) -
                 exact_disk_remainder(sol, Vec2(3.0, 0.0)))
                    .norm() <= 1e-6);
        for (int k = 0; k < 90; ++k) {
            const double th = 2.0 * pi * k / 90.0;
            const Vec2 x(3.0 * std::cos(th), 3.0 * std::sin(th));
            const Vec2 total = velocity_vortex_sheet(d, circle, x) +
                               velocity_fullplane(single_vortex, x);
            REQUIRE((total - exact_disk_velocity(sol, x)).norm() <= 1e-8);
        }
    }
}

TEST_CASE("tangency residual vanishes at the collocation midpoints") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const BoundaryMesh mesh = uniform_mesh(circle, 64, MeshFlavor::Vortex);
    const VortexSystem sys = build_system(circle, mesh, single_vortex, 0.0);
    const BoundaryDensity d = solve(sys);
    const double scale = std::max(1.0, sys.rhs.lpNorm<Eigen::Infinity>());
    for (int i = 0; i + 1 < mesh.N; ++i) {
        const Vec2 x = circle.point(mesh.s_tilde[i]);
        const Vec2 nx = -perp(circle.tangent(mesh.s_tilde[i]));
        const Vec2 total = velocity_vortex_sheet(d, circle, x) +
                           velocity_fullplane(single_vortex, x);
        REQUIRE(std::abs(total.dot(nx)) <= 1e-9 * scale);
    }
}

TEST_CASE("density is linear in the vorticity and the circulation") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const BoundaryMesh mesh = uniform_mesh(circle, 32, MeshFlavor::Vortex);
    const VorticityField a{{{Vec2(2.0, 0.0), 1.0, 0.05}}};
    const VorticityField b{{{Vec2(-1.0, 2.5), -0.4, 0.05}}};
    VorticityField both = a;
    both.blobs.push_back(b.blobs[0]);

    const Eigen::VectorXd da = solve(build_system(circle, mesh, a, 0.3)).values;
    const Eigen::VectorXd db = solve(build_system(circle, mesh, b, 0.7)).values;
    const Eigen::VectorXd dab = solve(build_system(circle, mesh, both, 1.0)).values;
    REQUIRE((dab - da - db).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("builder rejects wrong meshes and touching blobs") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    REQUIRE_THROWS_AS(build_system(circle, uniform_mesh(circle, 32, MeshFlavor::Charge),
                                   VorticityField{}, 0.0),
                      std::invalid_argument);
    const BoundaryMesh mesh = uniform_mesh(circle, 32, MeshFlavor::Vortex);
    REQUIRE_THROWS_AS(
        build_system(circle, mesh, VorticityField{{{Vec2(0.5, 0.0), 1.0, 0.05}}}, 0.0),
        BlobTouchesBoundary);
    REQUIRE_THROWS_AS(
        build_system(circle, mesh, VorticityField{{{Vec2(1.05, 0.0), 1.0, 0.2}}}, 0.0),
        BlobTouchesBoundary);
}

TEST_CASE("condition estimate is finite and grows with refinement") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const double c32 = condition_estimate(
        build_system(circle, uniform_mesh(circle, 32, MeshFlavor::Vortex), VorticityField{}, 1.0));
    const double c64 = condition_estimate(
        build_system(circle, uniform_mesh(circle, 64, MeshFlavor::Vortex), VorticityField{}, 1.0));
    REQUIRE(c32 > 1.0);
    REQUIRE(c64 > c32);
    REQUIRE(std::isfinite(c64));
}

TEST_CASE("checked LU factors, estimates conditioning, and flags singularity") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
    const FactoredLu lu(eye);
    REQUIRE(lu.condition_1() == 1.0);
    REQUIRE(lu.min_pivot() == 1.0);
    Eigen::VectorXd rhs(2);
    rhs << 3.0, -4.0;
    REQUIRE((lu.solve(rhs) - rhs).norm() == 0.0);
    REQUIRE((lu.solve_transpose(rhs) - rhs).norm() == 0.0);

    Eigen::MatrixXd skewed(2, 2);
    skewed << 1.0, 2.0, 0.5, 1.0; // rank one
    REQUIRE_THROWS_AS(FactoredLu(skewed), SingularSystem);
    REQUIRE_THROWS_AS(lu_solve_checked(skewed, rhs), SingularSystem);

    // transpose solve really targets M^T x = b
    Eigen::MatrixXd m(2, 2);
    m << 2.0, 1.0, 0.0, 3.0;
    const Eigen::VectorXd xt = FactoredLu(m).solve_transpose(rhs);
    REQUIRE((m.transpose() * xt - rhs).norm() <= 1e-14);
}
