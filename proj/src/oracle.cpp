#include "bvm/oracle.hpp"

#include <cmath>

#include "bvm/numerics.hpp"

namespace bvm {

namespace {
constexpr double singular_gap = 1e-12;

struct OperatorGrid {
    double L = 0.0;
    double h = 0.0;
    std::vector<Vec2> in_pt;
    std::vector<Vec2> in_n;
    std::vector<Vec2> out_pt;
    std::vector<Vec2> out_n;
    std::vector<Vec2> out_tau;
};

OperatorGrid make_grid(const BoundaryCurve& curve, int m, double grid_offset,
                       bool need_in_normals) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("operator grid needs an even node count >= 2");
    OperatorGrid grid;
    grid.L = curve.length();
    grid.h = grid.L / m;
    grid.in_pt.resize(m);
    grid.out_pt.resize(m);
    grid.out_n.resize(m);
    grid.out_tau.resize(m);
    if (need_in_normals) grid.in_n.resize(m);
    for (int j = 0; j < m; ++j) {
        const double s_in = (j + grid_offset) * grid.h;
        const double s_out = s_in + 0.5 * grid.h;
        grid.in_pt[j] = curve.point(s_in);
        if (need_in_normals) grid.in_n[j] = curve.normal(s_in);
        grid.out_pt[j] = curve.point(s_out);
        const Vec2 tau = curve.tangent(s_out);
        grid.out_tau[j] = tau;
        grid.out_n[j] = -perp(tau);
    }
    return grid;
}
} // namespace

double DiskExactSolution::alpha() const {
    double a = gamma;
    for (const auto& b : blobs) a += b.strength;
    return a;
}

DiskExactSolution make_disk_exact(std::vector<VortexBlob> blobs, double gamma) {
    for (const auto& b : blobs) {
        if (!(b.center.norm() > 1.0))
            throw InsideObstacle("vortex center must be strictly outside the unit disk");
    }
    DiskExactSolution sol;
    sol.blobs = std::move(blobs);
    sol.gamma = gamma;
    return sol;
}

Vec2 exact_disk_velocity(const DiskExactSolution& sol, const Vec2& x) {
    if (x.norm() < 1.0 - singular_gap)
        throw InsideObstacle("evaluation point inside the unit disk");
    Vec2 u = Vec2::Zero();
    for (const auto& b : sol.blobs) {
        const Vec2 d = x - b.center;
        const double r2 = d.squaredNorm();
        if (r2 < singular_gap * singular_gap)
            throw SingularEvaluation("evaluation at a vortex center");
        const Vec2 img = b.center / b.center.squaredNorm();
        const Vec2 di = x - img;
        u += b.strength * (perp(d) / r2 - perp(di) / di.squaredNorm());
    }
    u += sol.alpha() * perp(x) / x.squaredNorm();
    return u / (2.0 * pi);
}

Vec2 exact_disk_remainder(const DiskExactSolution& sol, const Vec2& x) {
    if (x.norm() < 1.0 - singular_gap)
        throw InsideObstacle("evaluation point inside the unit disk");
    Vec2 u = Vec2::Zero();
    for (const auto& b : sol.blobs) {
        const Vec2 img = b.center / b.center.squaredNorm();
        const Vec2 di = x - img;
        u -= b.strength * perp(di) / di.squaredNorm();
    }
    u += sol.alpha() * perp(x) / x.squaredNorm();
    return u / (2.0 * pi);
}

Eigen::VectorXd apply_A(const BoundaryCurve& curve, const Eigen::VectorXd& g,
                        double grid_offset) {
    const int m = static_cast<int>(g.size());
    const OperatorGrid grid = make_grid(curve, m, grid_offset, false);
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const Vec2 d = grid.out_pt[i] - grid.in_pt[j];
            acc += d.dot(grid.out_n[i]) / d.squaredNorm() * g[j];
        }
        out[i] = grid.h * acc;
    }
    return out;
}

Eigen::VectorXd apply_A_star(const BoundaryCurve& curve, const Eigen::VectorXd& g,
                             double grid_offset) {
    const int m = static_cast<int>(g.size());
    const OperatorGrid grid = make_grid(curve, m, grid_offset, true);
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const Vec2 d = grid.in_pt[j] - grid.out_pt[i];
            acc += d.dot(grid.in_n[j]) / d.squaredNorm() * g[j];
        }
        out[i] = grid.h * acc;
    }
    return out;
}

Eigen::VectorXd apply_B_pv(const BoundaryCurve& curve, const Eigen::VectorXd& g,
                           double grid_offset) {
    const int m = static_cast<int>(g.size());
    const OperatorGrid grid = make_grid(curve, m, grid_offset, false);
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i) {
        // staggered arguments: s_out - s_in = (i - j + 1/2) h, never 0 mod L
        double smooth = 0.0;
        double cot_sum = 0.0;
        for (int j = 0; j < m; ++j) {
            const Vec2 d = grid.out_pt[i] - grid.in_pt[j];
            const double kb = d.dot(grid.out_tau[i]) / d.squaredNorm();
            const double c = 1.0 / std::tan(pi * (i - j + 0.5) / m);
            smooth += (kb - pi / grid.L * c) * g[j];
            cot_sum += c * g[j];
        }
        out[i] = grid.h * smooth + pi / m * cot_sum;
    }
    return out;
}

PbResidual continuous_pb_residual(const BoundaryCurve& curve, const Eigen::VectorXd& phi) {
    const int m = static_cast<int>(phi.size());
    const Eigen::VectorXd a1 = apply_A(curve, phi, 0.0);
    const Eigen::VectorXd b1 = apply_B_pv(curve, phi, 0.0);
    // second application starts on the half grid and lands on the input grid
    // shifted by one index
    const Eigen::VectorXd a2 = apply_A(curve, a1, 0.5);
    const Eigen::VectorXd b2 = apply_B_pv(curve, b1, 0.5);
    const Eigen::VectorXd ab = apply_A(curve, b1, 0.5);
    const Eigen::VectorXd ba = apply_B_pv(curve, a1, 0.5);
    PbResidual r{0.0, 0.0};
    for (int i = 0; i < m; ++i) {
        const double target = pi * pi * phi[(i + 1) % m];
        r.difference = std::max(r.difference, std::abs(a2[i] - b2[i] - target));
        r.mixed = std::max(r.mixed, std::abs(ab[i] + ba[i]));
    }
    return r;
}

std::vector<PlemeljRow> plemelj_check(const BoundaryCurve& curve,
                                      const std::function<double(double)>& g,
                                      const std::vector<double>& eps_list, int operator_nodes,
                                      int quad_nodes) {
    const double L = curve.length();
    const int m = operator_nodes;
    Eigen::VectorXd gv(m);
    for (int j = 0; j < m; ++j) gv[j] = g(j * L / m);
    const Eigen::VectorXd ag = apply_A(curve, gv, 0.0);
    const Eigen::VectorXd bg = apply_B_pv(curve, gv, 0.0);

    const int k = m / 3; // probe off the symmetry axes
    const double s0 = (k + 0.5) * L / m;
    const Vec2 x0 = curve.point(s0);
    const Vec2 tau0 = curve.tangent(s0);
    const Vec2 n0 = -perp(tau0);
    const double g0 = g(s0);
    const double t_flow = ag[k] / (2.0 * pi) + 0.5 * g0;
    const double t_obstacle = ag[k] / (2.0 * pi) - 0.5 * g0;
    const double v_normal = -bg[k] / (2.0 * pi);

    std::vector<Vec2> qp(quad_nodes);
    std::vector<double> qg(quad_nodes);
    for (int q = 0; q < quad_nodes; ++q) {
        const double t = (q + 0.5) * L / quad_nodes;
        qp[q] = curve.point(t);
        qg[q] = g(t);
    }
    const auto sheet = [&](const Vec2& x) {
        Vec2 v = Vec2::Zero();
        for (int q = 0; q < quad_nodes; ++q) {
            const Vec2 d = x - qp[q];
            v += qg[q] / d.squaredNorm() * perp(d);
        }
        return Vec2(v * L / (2.0 * pi * quad_nodes));
    };

    std::vector<PlemeljRow> table;
    table.reserve(eps_list.size());
    for (const double eps : eps_list) {
        const Vec2 v_out = sheet(x0 + eps * n0);
        const Vec2 v_in = sheet(x0 - eps * n0);
        PlemeljRow row;
        row.eps = eps;
        row.tangential_flow_error = std::abs(v_out.dot(tau0) - t_flow);
        row.tangential_obstacle_error = std::abs(v_in.dot(tau0) - t_obstacle);
        row.normal_flow_error = std::abs(v_out.dot(n0) - v_normal);
        row.normal_obstacle_error = std::abs(v_in.dot(n0) - v_normal);
        row.normal_jump = std::abs(v_out.dot(n0) - v_in.dot(n0));
        table.push_back(row);
    }
    return table;
}

RiemannReport riemann_harness(const std::function<double(double)>& g,
                              const std::vector<BoundaryMesh>& family) {
    if (family.size() < 4)
        throw InsufficientSamples("riemann_harness: need >= 4 mesh sizes");
    int max_n = 0;
    for (const auto& mesh : family) max_n = std::max(max_n, mesh.N);
    const double L = family.front().length;

    const int ref_nodes = std::max(4096, 8 * max_n);
    double reference = 0.0;
    for (int q = 0; q < ref_nodes; ++q) reference += g((q + 0.5) * L / ref_nodes);
    reference *= L / ref_nodes;

    RiemannReport report;
    report.error_at_roundoff = false;
    for (const auto& mesh : family) {
        double sum = 0.0;
        for (int j = 0; j < mesh.N; ++j) sum += g(mesh.s_tilde[j]);
        sum *= L / mesh.N;
        report.n.push_back(mesh.N);
        report.errors.push_back(std::abs(sum - reference));
        if (report.errors.back() < 1e-13) report.error_at_roundoff = true;
    }
    report.fitted_order = loglog_slope(report.n, report.errors, 1e-13);
    return report;
}

} // namespace bvm
