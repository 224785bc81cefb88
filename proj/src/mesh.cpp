#include "bvm/mesh.hpp"

#include <cmath>
#include <random>

#include "bvm/numerics.hpp"

namespace bvm {

BoundaryMesh uniform_mesh(const BoundaryCurve& curve, int N, MeshFlavor flavor) {
    if (N < 2) throw std::invalid_argument("uniform_mesh: N must be >= 2");
    BoundaryMesh mesh;
    mesh.N = N;
    mesh.flavor = flavor;
    mesh.length = curve.length();
    mesh.s.resize(N);
    mesh.s_tilde.resize(N);
    const double h = mesh.length / N;
    for (int i = 0; i < N; ++i) {
        mesh.s[i] = i * h;
        mesh.s_tilde[i] = flavor == MeshFlavor::Vortex ? (i + 0.5) * h : mesh.s[i];
    }
    return mesh;
}

BoundaryMesh perturbed_mesh(const BoundaryCurve& curve, int N, MeshFlavor flavor, int kappa,
                            double amplitude, std::uint64_t seed) {
    if (kappa < 2) throw std::invalid_argument("perturbed_mesh: kappa must be >= 2");
    if (amplitude < 0.0) throw std::invalid_argument("perturbed_mesh: amplitude must be >= 0");

    BoundaryMesh mesh = uniform_mesh(curve, N, flavor);
    mesh.kappa = kappa;
    mesh.perturb_amplitude = amplitude;
    mesh.seed = seed;
    if (amplitude == 0.0) return mesh; // bit-identical to the uniform mesh

    const double order = flavor == MeshFlavor::Vortex ? kappa + 1.0 : kappa;
    const double scale = amplitude * std::pow(static_cast<double>(N), -order);
    std::mt19937_64 gen(seed);
    for (int i = 1; i < N; ++i) mesh.s[i] += scale * uniform_pm1(gen); // s_1 pinned at 0
    for (int i = 0; i < N; ++i) mesh.s_tilde[i] += scale * uniform_pm1(gen);

    for (int i = 0; i + 1 < N; ++i) {
        if (!(mesh.s[i] < mesh.s[i + 1]))
            throw OrderingViolated("perturbed_mesh: node ordering broken");
    }
    if (!(mesh.s[N - 1] < mesh.length))
        throw OrderingViolated("perturbed_mesh: node ordering broken");
    if (flavor == MeshFlavor::Vortex) {
        for (int i = 0; i < N; ++i) {
            const double next = i + 1 < N ? mesh.s[i + 1] : mesh.length;
            if (!(mesh.s[i] < mesh.s_tilde[i] && mesh.s_tilde[i] < next))
                throw OrderingViolated("perturbed_mesh: midpoint interleaving broken");
        }
    }
    return mesh;
}

MeshValidationReport validate_mesh(const std::vector<BoundaryMesh>& family,
                                   const BoundaryCurve& curve) {
    if (family.size() < 3)
        throw InsufficientSamples("validate_mesh: need meshes for >= 3 values of N");
    const MeshFlavor flavor = family.front().flavor;
    const double L = curve.length();
    std::vector<int> ns;
    std::vector<double> devs;
    for (const auto& mesh : family) {
        if (mesh.flavor != flavor)
            throw std::invalid_argument("validate_mesh: mixed mesh flavors");
        const double h = L / mesh.N;
        double dev = 0.0;
        for (int i = 0; i < mesh.N; ++i) {
            const double theta = i * h;
            const double theta_eval = flavor == MeshFlavor::Vortex ? (i + 0.5) * h : theta;
            dev = std::max(dev, std::abs(mesh.s[i] - theta));
            dev = std::max(dev, std::abs(mesh.s_tilde[i] - theta_eval));
        }
        ns.push_back(mesh.N);
        devs.push_back(dev);
    }
    return {flavor, loglog_slope(ns, devs, 0.0)};
}

} // namespace bvm
