#pragma once

#include "bvm/fields.hpp"
#include "bvm/geometry.hpp"
#include "bvm/kernel_ops.hpp"
#include "bvm/mesh.hpp"

#include <Eigen/Dense>

namespace bvm {

/// Linear system of the vortex method: rows 1..N-1 impose tangency of the
/// approximate field at the midpoints l(s̃_i); row N pins the mean of the
/// density to the prescribed circulation.
///
/// Row i (i < N):  (L/N) sum_j B_ij gamma_j = L f(s̃_i),
///                 f(s) = 2 pi [u_P . n](l(s)),
/// row N:          (1/N) sum_j gamma_j = gamma.
struct VortexSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    BoundaryMesh mesh;
    BoundaryCurve curve;
};

/// Tangency block (L/N) B_rect stacked over the mean row (1/N, ..., 1/N).
Eigen::MatrixXd vortex_matrix(const KernelMatrices& km);

/// Right-hand side for given sources; x_tilde/n_tilde are the midpoint
/// positions and outward normals (precomputable for repeated solves).
Eigen::VectorXd vortex_rhs(const std::vector<Vec2>& x_tilde, const std::vector<Vec2>& n_tilde,
                           double length, const VorticityField& omega, double gamma);

/// Throws BlobTouchesBoundary when a blob support reaches the boundary.
VortexSystem build_system(const BoundaryCurve& curve, const BoundaryMesh& mesh,
                          const VorticityField& omega, double gamma);

/// Dense LU solve; throws SingularSystem below the pivot threshold.
BoundaryDensity solve(const VortexSystem& system);

/// 1-norm condition estimate of the system matrix.
double condition_estimate(const VortexSystem& system);

} // namespace bvm
