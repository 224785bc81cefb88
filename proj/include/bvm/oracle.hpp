#pragma once

#include <functional>
#include <vector>

#include "bvm/fields.hpp"
#include "bvm/geometry.hpp"
#include "bvm/mesh.hpp"

#include <Eigen/Dense>

namespace bvm {

/// Exact steady solution outside the unit disk for point vortices at y_j
/// with images at y_j/|y_j|^2 plus a circulation term. alpha collects the
/// circulation at infinity: gamma + sum of strengths.
struct DiskExactSolution {
    std::vector<VortexBlob> blobs; // treated as point vortices
    double gamma = 0.0;

    double alpha() const;
};

/// Throws InsideObstacle when a blob center is not strictly outside the
/// closed unit disk.
DiskExactSolution make_disk_exact(std::vector<VortexBlob> blobs, double gamma);

/// u(x) = (1/2pi) sum str_j [ (x-y_j)^perp/|x-y_j|^2 - (x-y_j^*)^perp/|x-y_j^*|^2 ]
///        + alpha/(2pi) x^perp/|x|^2,  y^* = y/|y|^2.
/// Tangent on |x| = 1, circulation gamma around the disk.
Vec2 exact_disk_velocity(const DiskExactSolution& sol, const Vec2& x);

/// u_R = u - u_P: image terms plus the circulation term only. Regular at the
/// vortex centers, so it also gives the exact self-advection field.
Vec2 exact_disk_remainder(const DiskExactSolution& sol, const Vec2& x);

/// Apply the boundary operators to a density sampled on a uniform arclength
/// grid of M (even) nodes s_j = (j + grid_offset) L/M. Output samples live on
/// the staggered grid s_i = (i + grid_offset + 1/2) L/M, so compositions
/// alternate between the two grids and the second application lands back on
/// the input grid shifted by one index.
///
/// A has the bounded kernel (x-y).n(x)/|x-y|^2 and uses the plain midpoint
/// rule. B is a principal value: its kernel splits as (pi/L)cot(pi(s-t)/L)
/// plus a smooth remainder; the cot part is summed by the staggered-grid
/// quadrature (exact on trigonometric polynomials) and the remainder by the
/// midpoint rule. Both are spectrally accurate on analytic data.
Eigen::VectorXd apply_A(const BoundaryCurve& curve, const Eigen::VectorXd& g,
                        double grid_offset = 0.0);
Eigen::VectorXd apply_B_pv(const BoundaryCurve& curve, const Eigen::VectorXd& g,
                           double grid_offset = 0.0);

/// Adjoint of A (normal taken at the integration point). Satisfies
/// A*1 = pi exactly on any smooth closed curve.
Eigen::VectorXd apply_A_star(const BoundaryCurve& curve, const Eigen::VectorXd& g,
                             double grid_offset = 0.0);

/// Sup-norm residuals of the iterated-operator identities
/// (A^2 - B^2)phi = pi^2 phi and (AB + BA)phi = 0 for phi sampled at M nodes.
struct PbResidual {
    double difference; // ||(A^2 - B^2)phi - pi^2 phi||_inf
    double mixed;      // ||(AB + BA)phi||_inf
};
PbResidual continuous_pb_residual(const BoundaryCurve& curve, const Eigen::VectorXd& phi);

/// One-sided boundary limits of the vortex-sheet field v of density g,
/// compared against the jump relations
///   v.tau (flow side)     = (1/2pi) Ag + g/2,
///   v.tau (obstacle side) = (1/2pi) Ag - g/2,
///   v.n   (both sides)    = -(1/2pi) Bg.
struct PlemeljRow {
    double eps;
    double tangential_flow_error;
    double tangential_obstacle_error;
    double normal_flow_error;
    double normal_obstacle_error;
    double normal_jump;
};

/// g is a smooth L-periodic function of arclength. The probe point is a
/// staggered node of an M-point operator grid; the off-boundary field is
/// integrated with quad_nodes midpoint samples.
std::vector<PlemeljRow> plemelj_check(const BoundaryCurve& curve,
                                      const std::function<double(double)>& g,
                                      const std::vector<double>& eps_list, int operator_nodes = 1024,
                                      int quad_nodes = 8192);

/// Riemann-sum convergence of (L/N) sum_j g(s_tilde_j) toward the integral
/// of g, across a mesh family (>= 4 sizes, geometric). The reference uses a
/// uniform midpoint rule at 8x the largest N (at least 4096 nodes).
struct RiemannReport {
    std::vector<int> n;
    std::vector<double> errors;
    double fitted_order;     // +inf when no error exceeds the round-off floor
    bool error_at_roundoff;  // some error below 1e-13; slope unreliable
};
RiemannReport riemann_harness(const std::function<double(double)>& g,
                              const std::vector<BoundaryMesh>& family);

} // namespace bvm
