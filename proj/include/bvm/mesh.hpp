#pragma once

#include <cstdint>
#include <vector>

#include "bvm/errors.hpp"
#include "bvm/geometry.hpp"

namespace bvm {

/// Two node layouts are used by the solvers:
///  - vortex: density nodes s_i interleaved with staggered evaluation
///    midpoints s̃_i ∈ (s_i, s_{i+1});
///  - charge: density and evaluation nodes collocated near the same grid.
enum class MeshFlavor { Vortex, Charge };

/// Boundary node set in arclength coordinates on a closed curve of length L.
/// Invariants: 0 = s[0] < s[1] < ... < s[N-1] < L; for the vortex flavor
/// additionally s[i] < s_tilde[i] < s[i+1] (cyclically, s[N] := L).
/// Perturbed meshes keep max|s_i - theta_i| <= amplitude * N^{-(kappa+1)}
/// (vortex) or <= amplitude * N^{-kappa} (charge), with theta_i = (i-1)L/N
/// and theta-tilde_i = (i-1/2)L/N.
struct BoundaryMesh {
    int N = 0;
    MeshFlavor flavor = MeshFlavor::Vortex;
    int kappa = 2;
    double perturb_amplitude = 0.0;
    std::uint64_t seed = 0;
    double length = 0.0; // circumference of the generating curve
    std::vector<double> s;
    std::vector<double> s_tilde;
};

/// Nodes exactly on the uniform grid: s_i = (i-1)L/N; s̃_i = (i-1/2)L/N for
/// the vortex flavor and s̃_i = s_i for the charge flavor.
BoundaryMesh uniform_mesh(const BoundaryCurve& curve, int N, MeshFlavor flavor);

/// Uniform grid plus iid offsets in [-1,1] * amplitude * N^{-(kappa+1)}
/// (vortex) or * N^{-kappa} (charge), deterministic in seed. s_1 stays
/// pinned at 0. Throws OrderingViolated when the offsets break monotonicity
/// or the vortex interleaving.
BoundaryMesh perturbed_mesh(const BoundaryCurve& curve, int N, MeshFlavor flavor, int kappa,
                            double amplitude, std::uint64_t seed);

struct MeshValidationReport {
    MeshFlavor flavor;
    /// Fitted slope of log(max node deviation) vs log N; +inf when every
    /// deviation is zero (uniform family).
    double measured_deviation_order;
};

/// Empirical check of the deviation decay across a family of meshes built
/// with the same flavor and seed policy for at least 3 values of N.
/// Throws InsufficientSamples otherwise.
MeshValidationReport validate_mesh(const std::vector<BoundaryMesh>& family,
                                   const BoundaryCurve& curve);

} // namespace bvm
