#include "catch_amalgamated.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "bvm/errors.hpp"
#include "bvm/oracle.hpp"

using namespace bvm;

namespace {

DiskExactSolution two_vortex_solution() {
    return make_disk_exact({{Vec2(2.0, 0.0), 1.0, 0.05}, {Vec2(-1.0, 2.0), -0.5, 0.05}}, 0.7);
}

// circulation of u around the circle of radius r, midpoint rule
double circulation(const DiskExactSolution& sol, double r, int nodes = 4096) {
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * pi * (j + 0.5) / nodes;
        const Vec2 x(r * std::cos(th), r * std::sin(th));
        const Vec2 tau(-std::sin(th), std::cos(th));
        acc += exact_disk_velocity(sol, x).dot(tau);
    }
    return acc * 2.0 * pi * r / nodes;
}

} // namespace

TEST_CASE("exact disk solution rejects vortex centers not strictly outside") {
    REQUIRE_THROWS_AS(make_disk_exact({{Vec2(0.5, 0.0), 1.0, 0.05}}, 0.0), InsideObstacle);
    REQUIRE_THROWS_AS(make_disk_exact({{Vec2(1.0, 0.0), 1.0, 0.05}}, 0.0), InsideObstacle);
    REQUIRE_NOTHROW(make_disk_exact({{Vec2(1.0 + 1e-6, 0.0), 1.0, 0.05}}, 0.0));
    const DiskExactSolution sol = two_vortex_solution();
    REQUIRE(std::abs(sol.alpha() - (0.7 + 0.5)) <= 1e-15);
}

TEST_CASE("exact disk velocity is tangent on the unit circle") {
    const DiskExactSolution sol = two_vortex_solution();
    for (int k = 0; k < 360; ++k) {
        const double th = 2.0 * pi * k / 360.0;
        const Vec2 x(std::cos(th), std::sin(th));
        REQUIRE(std::abs(exact_disk_velocity(sol, x).dot(x)) <= 1e-10);
    }
}

TEST_CASE("circulation is gamma around the obstacle and alpha around everything") {
    const DiskExactSolution sol = two_vortex_solution();
    // r = 1.2 encloses the disk and the image points but none of the vortices
    REQUIRE(std::abs(circulation(sol, 1.2) - 0.7) <= 1e-10);
    // r = 10 encloses the vortices as well; each image cancels its vortex
    REQUIRE(std::abs(circulation(sol, 10.0) - sol.alpha()) <= 1e-10);
}

TEST_CASE("self advection of a single vortex matches the image system") {
    const DiskExactSolution sol = make_disk_exact({{Vec2(2.0, 0.0), 1.0, 0.05}}, 0.0);
    // image at (1/2, 0) with strength -1 plus the alpha/(2 pi) circulation term
    const Vec2 u = exact_disk_remainder(sol, Vec2(2.0, 0.0));
    REQUIRE(std::abs(u.x()) <= 1e-15);
    REQUIRE(std::abs(u.y() + 1.0 / (12.0 * pi)) <= 1e-15);
}

TEST_CASE("pure circulation flow is the point vortex field of the disk") {
    const DiskExactSolution sol = make_disk_exact({}, 1.0);
    for (Vec2 x : {Vec2(2.0, 0.0), Vec2(0.0, 3.0), Vec2(-1.5, 1.5)}) {
        const Vec2 expected = perp(x) / (2.0 * pi * x.squaredNorm());
        REQUIRE((exact_disk_velocity(sol, x) - expected).norm() <= 1e-15);
        // with no vortices the remainder is the whole field
        REQUIRE((exact_disk_remainder(sol, x) - expected).norm() <= 1e-15);
    }
}

TEST_CASE("velocity splits into the free-space part plus the regular remainder") {
    const DiskExactSolution sol = two_vortex_solution();
    for (Vec2 x : {Vec2(3.0, 0.5), Vec2(0.0, -1.5), Vec2(-2.0, -2.0)}) {
        Vec2 up = Vec2::Zero();
        for (const VortexBlob& b : sol.blobs)
            up += b.strength / (2.0 * pi) * perp(x - b.center) / (x - b.center).squaredNorm();
        const Vec2 diff = exact_disk_velocity(sol, x) - up - exact_disk_remainder(sol, x);
        REQUIRE(diff.norm() <= 1e-14);
    }
}

TEST_CASE("operator quadratures reproduce the circle closed forms") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const int m = 64;
    Eigen::VectorXd one = Eigen::VectorXd::Ones(m), c(m);
    for (int j = 0; j < m; ++j) c[j] = std::cos(j * 2.0 * pi / m);
    // the circle kernel of A is the constant 1/2, so A averages: A1 = pi, A cos = 0
    REQUIRE((apply_A(circle, one).array() - pi).abs().maxCoeff() <= 1e-12);
    REQUIRE(apply_A(circle, c).lpNorm<Eigen::Infinity>() <= 1e-12);
    REQUIRE(apply_B_pv(circle, one).lpNorm<Eigen::Infinity>() <= 1e-11);
    // B maps cos to pi sin; outputs live on the staggered grid
    const Eigen::VectorXd bc = apply_B_pv(circle, c);
    for (int i = 0; i < m; ++i)
        REQUIRE(std::abs(bc[i] - pi * std::sin((i + 0.5) * 2.0 * pi / m)) <= 1e-11);
}

TEST_CASE("adjoint of A integrates to pi on smooth curves") {
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(128);
    for (const CurveSpec& spec : {CurveSpec::ellipse(2.0, 1.0),
                                  CurveSpec::fourier(1.0, {0.1, 0.05}, {0.0, 0.08})}) {
        const BoundaryCurve curve = build_curve(spec);
        REQUIRE((apply_A_star(curve, one).array() - pi).abs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("iterated operator identities hold on smooth curves") {
    for (const CurveSpec& spec : {CurveSpec::circle(1.0), CurveSpec::ellipse(2.0, 1.0)}) {
        const BoundaryCurve curve = build_curve(spec);
        const int m = 512;
        Eigen::VectorXd phi(m);
        for (int j = 0; j < m; ++j) {
            const double s = j * curve.length() / m;
            phi[j] = std::exp(std::cos(2.0 * pi * s / curve.length())) +
                     0.3 * std::sin(4.0 * pi * s / curve.length());
        }
        const PbResidual r = continuous_pb_residual(curve, phi);
        REQUIRE(r.difference <= 1e-8);
        REQUIRE(r.mixed <= 1e-8);
    }
}

TEST_CASE("one-sided sheet limits approach the jump relations") {
    const std::vector<double> eps = {1e-1, 1e-2, 1e-3};
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const auto rows = plemelj_check(circle, [](double) { return 1.0; }, eps);
    REQUIRE(rows.size() == 3);
    // constant density on the circle: outside limit 1, inside limit 0
    REQUIRE(rows[0].tangential_flow_error > rows[1].tangential_flow_error);
    REQUIRE(rows[1].tangential_flow_error > rows[2].tangential_flow_error);
    REQUIRE(rows[2].tangential_flow_error <= 2e-3);
    for (const PlemeljRow& r : rows) {
        REQUIRE(r.eps > 0.0);
        REQUIRE(r.tangential_obstacle_error <= 1e-3);
        REQUIRE(r.normal_flow_error <= 1e-10);
        REQUIRE(r.normal_obstacle_error <= 1e-10);
        REQUIRE(r.normal_jump <= 1e-12);
    }

    const BoundaryCurve ell = build_curve(CurveSpec::ellipse(2.0, 1.0));
    const double length = ell.length();
    const auto erows =
        plemelj_check(ell, [length](double s) { return std::cos(2.0 * pi * s / length); }, eps);
    REQUIRE(erows[0].normal_flow_error > erows[1].normal_flow_error);
    REQUIRE(erows[1].normal_flow_error > erows[2].normal_flow_error);
    REQUIRE(erows[0].normal_jump > erows[1].normal_jump);
    REQUIRE(erows[1].normal_jump > erows[2].normal_jump);
    // the recovered jump sits well within 2% of the unit density amplitude
    REQUIRE(erows[2].normal_jump <= 0.02);
    REQUIRE(erows[2].normal_jump <= 1e-3);
    REQUIRE(erows[2].tangential_flow_error <= 1e-2);
    REQUIRE(erows[2].tangential_obstacle_error <= 1e-2);
}

TEST_CASE("riemann harness sees midpoint sums converge to the integral") {
    const BoundaryCurve circle = build_curve(CurveSpec::circle(1.0));
    const auto g = [](double s) { return std::exp(std::sin(s)); };

    std::vector<BoundaryMesh> uniform;
    for (int n : {8, 16, 32, 64}) uniform.push_back(uniform_mesh(circle, n, MeshFlavor::Charge));
    const RiemannReport ru = riemann_harness(g, uniform);
    REQUIRE(ru.n == std::vector<int>{8, 16, 32, 64});
    // exponential convergence of the midpoint rule on analytic periodic data:
    // every refinement past the first sits on the round-off floor
    REQUIRE(ru.errors[0] > 1e-8);
    REQUIRE(ru.errors[1] <= 1e-12);
    REQUIRE(ru.errors[2] <= 1e-12);
    REQUIRE(ru.error_at_roundoff);
    REQUIRE(std::isinf(ru.fitted_order));

    // independent reference: integral of exp(sin) over the circle is 2 pi I0(1)
    const double exact = 2.0 * pi * boost::math::cyl_bessel_i(0, 1.0);
    double sum = 0.0;
    for (double st : uniform[2].s_tilde) sum += g(st);
    REQUIRE(std::abs(circle.length() / 32.0 * sum - exact) <= 1e-12);

    // staggered-offset meshes only converge at the offset decay rate
    std::vector<BoundaryMesh> perturbed;
    for (int n : {32, 64, 128, 256})
        perturbed.push_back(perturbed_mesh(circle, n, MeshFlavor::Charge, 2, 1.0, 42));
    const RiemannReport rp = riemann_harness(g, perturbed);
    REQUIRE_FALSE(rp.error_at_roundoff);
    REQUIRE(rp.errors[0] > rp.errors[1]);
    REQUIRE(rp.errors[1] > rp.errors[2]);
    REQUIRE(rp.errors[2] > rp.errors[3]);
    REQUIRE(rp.fitted_order <= -1.7);
    REQUIRE(rp.fitted_order >= -3.0);

    std::vector<BoundaryMesh> short_family(uniform.begin(), uniform.begin() + 3);
    REQUIRE_THROWS_AS(riemann_harness(g, short_family), InsufficientSamples);
}
