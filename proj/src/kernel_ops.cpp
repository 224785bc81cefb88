#include "bvm/kernel_ops.hpp"

#include <cmath>
#include <random>

#include "bvm/errors.hpp"
#include "bvm/numerics.hpp"

namespace bvm {

namespace {

struct NodeData {
    std::vector<Vec2> pt, n, tau;
    std::vector<double> kappa;
};

NodeData node_data(const BoundaryCurve& curve, const std::vector<double>& s) {
    NodeData d;
    d.pt.reserve(s.size());
    d.n.reserve(s.size());
    d.tau.reserve(s.size());
    d.kappa.reserve(s.size());
    for (double si : s) {
        d.pt.push_back(curve.point(si));
        const Vec2 tau = curve.tangent(si);
        d.tau.push_back(tau);
        d.n.push_back(-perp(tau));
        d.kappa.push_back(curve.curvature(si));
    }
    return d;
}

double cyclic_gap(double a, double b, double L) {
    double d = std::abs(a - b);
    d = std::fmod(d, L);
    return std::min(d, L - d);
}

// Fill A-type (n at the row point, curvature rule on near-diagonal) and
// B-type (tau at the row point, singular on coincidence) blocks for rows at
// `row` against columns at `col`.
void fill_pair(const NodeData& row, const std::vector<double>& row_s, const NodeData& col,
               const std::vector<double>& col_s, double L, Eigen::MatrixXd& a,
               Eigen::MatrixXd& b, bool& b_ok) {
    const int n = static_cast<int>(row_s.size());
    a.resize(n, n);
    b.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (cyclic_gap(row_s[i], col_s[j], L) < 1e-12 * L) {
                a(i, j) = 0.5 * row.kappa[i];
                b(i, j) = 0.0;
                b_ok = false;
                continue;
            }
            const Vec2 d = row.pt[i] - col.pt[j];
            const double r2 = d.squaredNorm();
            a(i, j) = d.dot(row.n[i]) / r2;
            b(i, j) = d.dot(row.tau[i]) / r2;
        }
    }
}

} // namespace

const Eigen::MatrixXd& KernelMatrices::b() const {
    if (!b_available) throw CoincidentNodesInB("B kernel undefined: mesh collocates s̃ with s");
    return B;
}

const Eigen::MatrixXd& KernelMatrices::b_tilde() const {
    if (!b_available) throw CoincidentNodesInB("B kernel undefined: mesh collocates s̃ with s");
    return B_tilde;
}

const Eigen::MatrixXd& KernelMatrices::b_rect() const {
    if (!b_available) throw CoincidentNodesInB("B kernel undefined: mesh collocates s̃ with s");
    return B_rect;
}

KernelMatrices assemble(const BoundaryCurve& curve, const BoundaryMesh& mesh) {
    KernelMatrices km;
    km.mesh = mesh;
    km.curve = curve;
    const double L = mesh.length;

    const NodeData at_s = node_data(curve, mesh.s);
    const NodeData at_tilde = node_data(curve, mesh.s_tilde);

    bool b_ok = true;
    fill_pair(at_tilde, mesh.s_tilde, at_s, mesh.s, L, km.A, km.B, b_ok);
    fill_pair(at_s, mesh.s, at_tilde, mesh.s_tilde, L, km.A_tilde, km.B_tilde, b_ok);
    km.b_available = b_ok;
    if (b_ok)
        km.B_rect = km.B.topRows(mesh.N - 1);
    else {
        km.B.resize(0, 0);
        km.B_tilde.resize(0, 0);
    }
    return km;
}

CotDeviation cot_sum_deviation(const BoundaryMesh& mesh) {
    if (mesh.flavor != MeshFlavor::Vortex)
        throw std::invalid_argument("cot_sum_deviation: vortex flavor required");
    const double L = mesh.length;
    CotDeviation dev;
    for (int i = 0; i < mesh.N; ++i) {
        double fwd = 0.0, tr = 0.0;
        for (int j = 0; j < mesh.N; ++j) {
            fwd += 1.0 / std::tan(pi * (mesh.s_tilde[i] - mesh.s[j]) / L);
            tr += 1.0 / std::tan(pi * (mesh.s[i] - mesh.s_tilde[j]) / L);
        }
        dev.forward = std::max(dev.forward, std::abs(fwd));
        dev.transposed = std::max(dev.transposed, std::abs(tr));
    }
    return dev;
}

std::pair<double, double> cot_l2_identity_check(const BoundaryMesh& mesh,
                                                const Eigen::VectorXd& z) {
    const double L = mesh.length;
    const double h = L / mesh.N;
    if (mesh.flavor != MeshFlavor::Vortex)
        throw NonUniformMesh("cot_l2_identity_check: uniform vortex mesh required");
    for (int i = 0; i < mesh.N; ++i) {
        if (std::abs(mesh.s[i] - i * h) > 1e-12 * L ||
            std::abs(mesh.s_tilde[i] - (i + 0.5) * h) > 1e-12 * L)
            throw NonUniformMesh("cot_l2_identity_check: uniform vortex mesh required");
    }
    Eigen::VectorXd row_sums(mesh.N);
    for (int k = 0; k < mesh.N; ++k) {
        double acc = 0.0;
        for (int j = 0; j < mesh.N; ++j)
            acc += z[j] / std::tan(pi * (k - j + 0.5) / mesh.N);
        row_sums[k] = acc;
    }
    const double lhs = lp_norm(row_sums, 2.0) / mesh.N;
    const Eigen::VectorXd centered = z.array() - z.mean();
    return {lhs, lp_norm(centered, 2.0)};
}

PbDiscreteResidual discrete_pb_residual(const KernelMatrices& km, const Eigen::VectorXd& z) {
    const int n = km.mesh.N;
    const double c = km.mesh.length * km.mesh.length / (static_cast<double>(n) * n);
    const Eigen::MatrixXd& a = km.A;
    const Eigen::MatrixXd& at = km.A_tilde;
    const Eigen::MatrixXd& b = km.b();
    const Eigen::MatrixXd& bt = km.b_tilde();

    PbDiscreteResidual r;
    r.difference = lp_norm(c * (b * (bt * z) - a * (at * z)) + pi * pi * z, 2.0);
    r.mixed = lp_norm(c * (a * (bt * z) + b * (at * z)), 2.0);
    r.tilde_difference = lp_norm(c * (bt * (b * z) - at * (a * z)) + pi * pi * z, 2.0);
    r.tilde_mixed = lp_norm(c * (at * (b * z) + bt * (a * z)), 2.0);
    return r;
}

MeanResidualReport mean_residual(const KernelMatrices& km, const Eigen::VectorXd& z) {
    const int n = km.mesh.N;
    const double c = km.mesh.length / n;
    MeanResidualReport r;
    r.value = std::abs(mean(c * (km.b() * z))) + std::abs(mean(c * (km.A * z) - pi * z));
    r.tilde_value =
        std::abs(mean(c * (km.b_tilde() * z))) + std::abs(mean(c * (km.A_tilde * z) - pi * z));
    return r;
}

namespace {

// Power iteration with a two-step companion readout. On the dominant 2D
// invariant subspace M^2 x = a' Mx + b' x; with normalized iterates w_prev, w
// and growth g (M w_prev = g w), fitting M w ~ a w + b w_prev by least squares
// gives a = a', b = b'/g, so the dominant |eigenvalue| is the larger root
// modulus of x^2 - a x - b g. Unlike the Rayleigh quotient this converges for
// conjugate-pair and +/-r dominance; for a real simple eigenvalue the fit
// degenerates to w ~ w_prev and the Rayleigh value is used. `project` is
// applied to every iterate.
template <typename Project>
double power_radius(const Eigen::MatrixXd& m, Eigen::VectorXd w, int max_iterations, double tol,
                    Project project, bool& converged, int& iterations) {
    project(w);
    if (w.norm() == 0.0) {
        w.setZero();
        w[0] = 1.0;
        if (w.size() > 1) w[1] = -1.0;
        project(w);
        if (w.norm() == 0.0) {
            converged = true;
            return 0.0;
        }
    }
    w /= w.norm();
    Eigen::VectorXd w_prev = w; // valid once it >= 1
    double g_prev = 1.0;        // growth factor that produced w from w_prev
    double est = 0.0;
    int streak = 0;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd z = m * w;
        project(z);
        const double nz = z.norm();
        ++iterations;
        if (nz < 1e-14) { // operator annihilates the subspace
            converged = true;
            return 0.0;
        }
        double next = std::abs(w.dot(z));
        double residual = (z - w.dot(z) * w).norm() / nz;
        // Near-parallel iterates mean the rank-1 readout is already accurate
        // and the 2x2 normal equations would be ill-conditioned; skip the fit.
        if (it >= 1) {
            const double c = w.dot(w_prev);
            const double det = 1.0 - c * c;
            if (det > 1e-6) {
                const double r1 = w.dot(z), r2 = w_prev.dot(z);
                const double a = (r1 - c * r2) / det;
                const double bg = (r2 - c * r1) / det * g_prev;
                const double disc = a * a + 4.0 * bg;
                const double radius =
                    disc >= 0.0 ? std::max(std::abs((a + std::sqrt(disc)) / 2.0),
                                           std::abs((a - std::sqrt(disc)) / 2.0))
                                : std::sqrt(-bg);
                const double fit_res =
                    (z - a * w - (bg / g_prev) * w_prev).norm() / nz;
                if (std::isfinite(radius)) {
                    next = radius;
                    residual = fit_res;
                }
            }
        }
        streak = residual < tol && std::abs(next - est) < tol * std::max(1.0, next) ? streak + 1
                                                                                    : 0;
        est = next;
        w_prev = w;
        g_prev = nz;
        w = z / nz;
        if (streak >= 3) {
            converged = true;
            return est;
        }
    }
    return est;
}

} // namespace

SpectralReport spectral_radius_meanzero(const KernelMatrices& km, int max_iterations, double tol,
                                        std::uint64_t seed) {
    const int n = km.mesh.N;
    const Eigen::MatrixXd m = (km.mesh.length / n) * km.A;
    std::mt19937_64 gen(seed);
    const auto random_vec = [&] {
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i) w[i] = uniform_pm1(gen);
        return w;
    };

    SpectralReport report;
    bool full_ok = false, sub_ok = false;
    report.rho_full = power_radius(
        m, random_vec(), max_iterations, tol, [](Eigen::VectorXd&) {}, full_ok, report.iterations);
    report.rho0 = power_radius(
        m, random_vec(), max_iterations, tol,
        [](Eigen::VectorXd& w) { w.array() -= w.mean(); }, sub_ok, report.iterations);
    report.converged = full_ok && sub_ok;
    return report;
}

} // namespace bvm
