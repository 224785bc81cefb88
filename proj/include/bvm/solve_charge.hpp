#pragma once

#include <optional>

#include "bvm/fields.hpp"
#include "bvm/geometry.hpp"
#include "bvm/kernel_ops.hpp"
#include "bvm/mesh.hpp"

#include <Eigen/Dense>

namespace bvm {

/// Choice of the mean-correction weight lambda for the corrected charge
/// system: a constant, the sigma-blend of the per-point kernel extrema
/// lambda(x) = (1-sigma) sup_y K(x,y) + sigma inf_y K(x,y), or explicit
/// values at the evaluation nodes.
struct LambdaSpec {
    enum class Kind { Constant, SigmaBlend, Table };
    Kind kind = Kind::Constant;
    double constant = 0.0;
    double sigma = 0.0;
    Eigen::VectorXd table;

    static LambdaSpec constant_value(double c) {
        LambdaSpec l;
        l.constant = c;
        return l;
    }
    static LambdaSpec sigma_blend(double sigma) {
        LambdaSpec l;
        l.kind = Kind::SigmaBlend;
        l.sigma = sigma;
        return l;
    }
    static LambdaSpec table_values(Eigen::VectorXd values) {
        LambdaSpec l;
        l.kind = Kind::Table;
        l.table = std::move(values);
        return l;
    }
};

/// Charge-method linear system:
///   basic:  [(1/N) A + (pi/L) I] q = f,
///   lambda: [(1/N) A - lambda <.> + (pi/L) I] q = f,
/// with f_i = -2 pi [(u_P + gamma H_*) . n](l(s̃_i)) and <.> the mean
/// functional, so the lambda term is the rank-one matrix (1/N) lambda 1^T.
struct ChargeSystem {
    SolveMethod method = SolveMethod::Charge;
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd basic_matrix; // kept for the rank-one cross-check
    Eigen::VectorXd rhs;
    Eigen::VectorXd lambda_values; // empty for the basic variant
    BoundaryMesh mesh;
    BoundaryCurve curve;
    HStarSpec hstar;
    double gamma = 0.0;
    double rhs_mean = 0.0;
};

/// Throws LambdaMeanNearTwoPi when |L <lambda> - 2 pi| < 1e-6 (the corrected
/// system degenerates there) and BlobTouchesBoundary for invalid sources.
ChargeSystem build_charge_system(const BoundaryCurve& curve, const BoundaryMesh& mesh,
                                 const VorticityField& omega, double gamma,
                                 const HStarSpec& hstar,
                                 const std::optional<LambdaSpec>& lambda = std::nullopt);

/// Dense LU solve. The lambda variant is additionally reduced to two basic
/// solves via the rank-one identity
///   q = M0^-1 (f + c lambda),  c = <M0^-1 f> / (1 - <M0^-1 lambda>),
/// and the two answers must agree within 1e-6 (SolverCrossCheckFailed).
BoundaryDensity solve_charge(const ChargeSystem& system);

/// Per-column dominance margins |M_jj| - sum_{i != j} |M_ij|; all positive
/// means strictly column diagonally dominant.
struct DominanceReport {
    Eigen::VectorXd margins;
    double min_margin = 0.0;
};
DominanceReport dominance_margin(const ChargeSystem& system);

/// Extremal tangent-ball radii of the boundary from the kernel
/// K(x,y) = (x-y).n(x)/|x-y|^2 sampled on a dense double grid:
/// 1/(2 R_sup) = sup K, 1/(2 R_inf) = inf K (R_inf < 0 iff non-convex).
/// condition_2: sup |K| < sqrt(2) pi / L; condition_4: R_sup > L/(4 pi).
struct GeometricRadii {
    double r_sup = 0.0;
    double r_inf = 0.0;
    double sup_abs_kernel = 0.0;
    bool condition_2 = false;
    bool condition_4 = false;
};
GeometricRadii geometric_radii(const BoundaryCurve& curve, int sample_density = 2048);

/// 1-norm condition estimate of the system matrix.
double condition_estimate(const ChargeSystem& system);

} // namespace bvm
