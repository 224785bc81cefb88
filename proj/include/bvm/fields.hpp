#pragma once

#include <vector>

#include "bvm/errors.hpp"
#include "bvm/geometry.hpp"
#include "bvm/mesh.hpp"
#include "bvm/numerics.hpp"

#include <Eigen/Dense>

namespace bvm {

/// Point vortex (core_radius = 0) or Gaussian blob (core_radius > 0).
struct VortexBlob {
    Vec2 center = Vec2::Zero();
    double strength = 0.0;
    double core_radius = 0.0;
};

struct VorticityField {
    std::vector<VortexBlob> blobs;
    double total_mass() const;
};

/// Every blob center must lie in the flow domain with clearance larger than
/// its core radius. Throws BlobTouchesBoundary.
void validate_vorticity(const VorticityField& omega, const BoundaryCurve& curve);

enum class SolveMethod { Vortex, Charge, ChargeLambda };

/// Reference harmonic field carrying the circulation: the unit-disk field
/// x^perp/(2pi|x|^2) or a point vortex placed strictly inside the obstacle.
struct HStarSpec {
    enum class Kind { DiskHarmonic, PointVortexAt };
    Kind kind = Kind::DiskHarmonic;
    Vec2 x_star = Vec2::Zero();

    static HStarSpec disk() { return {}; }
    static HStarSpec point(const Vec2& x_star) {
        HStarSpec h;
        h.kind = Kind::PointVortexAt;
        h.x_star = x_star;
        return h;
    }
};

/// Solved boundary density: values_i is gamma_i^N (or the charge analogue)
/// at node s_i. For the vortex method mean(values) equals the circulation.
struct BoundaryDensity {
    SolveMethod method = SolveMethod::Vortex;
    Eigen::VectorXd values;
    BoundaryMesh mesh;
    double circulation = 0.0;
    HStarSpec hstar;
};

/// Free-plane Biot-Savart field of the blobs:
/// u_P = (1/2pi) sum strength * (x-c)^perp / |x-c|^2, with the Gaussian
/// factor (1 - e^{-r^2/2 sigma^2}) when core_radius sigma > 0.
/// Throws SingularEvaluation at a point-vortex center.
Vec2 velocity_fullplane(const VorticityField& omega, const Vec2& x);

/// (1/2pi) sum_j (values_j/N) (x-x_j)^perp / |x-x_j|^2 over the density
/// nodes x_j = l(s_j). Throws SingularEvaluation within 1e-12 of a node.
Vec2 velocity_vortex_sheet(const BoundaryDensity& density, const BoundaryCurve& curve,
                           const Vec2& x);
Vec2 velocity_vortex_sheet(const BoundaryDensity& density, const std::vector<Vec2>& nodes,
                           const Vec2& x);

/// (1/2pi) sum_j (values_j/N) (x-x_j) / |x-x_j|^2 + circulation * H_*(x).
/// Radial kernel: charges are source-type, not rotational.
Vec2 velocity_charge(const BoundaryDensity& density, const BoundaryCurve& curve, const Vec2& x);
Vec2 velocity_charge(const BoundaryDensity& density, const std::vector<Vec2>& nodes,
                     const Vec2& x);

Vec2 harmonic_field(const HStarSpec& hstar, const Vec2& x);

/// Node positions l(s_j) for the density nodes of a mesh.
std::vector<Vec2> density_node_positions(const BoundaryCurve& curve, const BoundaryMesh& mesh);

} // namespace bvm
