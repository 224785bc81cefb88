#pragma once

#include <cstdint>
#include <utility>

#include "bvm/geometry.hpp"
#include "bvm/mesh.hpp"

#include <Eigen/Dense>

namespace bvm {

/// Dense boundary-kernel matrices on a mesh:
///   A_{ij}  = (l(s̃_i)-l(s_j)) . n(l(s̃_i)) / |l(s̃_i)-l(s_j)|^2
///   Ã_{ij}  = same with the roles of s and s̃ swapped (rows at s_i),
///   B, B̃    = same kernels with tau in place of n,
///   B_rect  = rows 1..N-1 of B.
/// Near-coincident pairs (arclength gap < 1e-12 L) in A-type matrices take
/// the limiting value kappa/2 at the row point; the B kernel is singular
/// there, so B-type matrices are only available when no pair coincides.
struct KernelMatrices {
    Eigen::MatrixXd A;
    Eigen::MatrixXd A_tilde;
    BoundaryMesh mesh;
    BoundaryCurve curve;

    bool b_available = false;

    /// Throw CoincidentNodesInB when the mesh collocates s̃ with s.
    const Eigen::MatrixXd& b() const;
    const Eigen::MatrixXd& b_tilde() const;
    const Eigen::MatrixXd& b_rect() const;

    Eigen::MatrixXd B;
    Eigen::MatrixXd B_tilde;
    Eigen::MatrixXd B_rect;
};

KernelMatrices assemble(const BoundaryCurve& curve, const BoundaryMesh& mesh);

/// max_i |sum_j cot(pi(s̃_i - s_j)/L)| and the variant with s and s̃ swapped.
/// Zero analytically on uniform staggered grids.
struct CotDeviation {
    double forward = 0.0;
    double transposed = 0.0;
};
CotDeviation cot_sum_deviation(const BoundaryMesh& mesh);

/// Exact identity on the uniform staggered grid:
///   (1/N) || { sum_j cot(pi(th̃_k - th_j)/L) z_j }_k ||_l2 = || z - <z>1 ||_l2.
/// Returns (lhs, rhs). Throws NonUniformMesh unless the mesh is the uniform
/// vortex mesh.
std::pair<double, double> cot_l2_identity_check(const BoundaryMesh& mesh,
                                                const Eigen::VectorXd& z);

/// Residual norms of the discrete iterated-kernel identities
///   || (L^2/N^2)(B B̃ - A Ã) z + pi^2 z ||_l2   (difference)
///   || (L^2/N^2)(A B̃ + B Ã) z ||_l2            (mixed)
/// plus the variants applying the tilde matrices first. Both decay like 1/N
/// on smooth curves.
struct PbDiscreteResidual {
    double difference = 0.0;
    double mixed = 0.0;
    double tilde_difference = 0.0;
    double tilde_mixed = 0.0;
};
PbDiscreteResidual discrete_pb_residual(const KernelMatrices& km, const Eigen::VectorXd& z);

/// |<(L/N) B z>| + |<(L/N) A z - pi z>| and the tilde variant; decays like
/// N^{-kappa} on perturbed meshes.
struct MeanResidualReport {
    double value = 0.0;
    double tilde_value = 0.0;
};
MeanResidualReport mean_residual(const KernelMatrices& km, const Eigen::VectorXd& z);

/// Power iteration on (L/N) A: dominant eigenvalue of the full matrix
/// (approaches pi) and the spectral radius on the mean-zero subspace,
/// obtained by projecting out the constant direction every iterate.
struct SpectralReport {
    double rho0 = 0.0;
    double rho_full = 0.0;
    bool converged = false;
    int iterations = 0;
};
SpectralReport spectral_radius_meanzero(const KernelMatrices& km, int max_iterations = 5000,
                                        double tol = 1e-10, std::uint64_t seed = 12345);

} // namespace bvm
