#include "bvm/fields.hpp"

#include <cmath>

namespace bvm {

namespace {
constexpr double singular_gap = 1e-12;
}

double VorticityField::total_mass() const {
    double m = 0.0;
    for (const auto& b : blobs) m += b.strength;
    return m;
}

void validate_vorticity(const VorticityField& omega, const BoundaryCurve& curve) {
    for (const auto& b : omega.blobs) {
        if (point_inside_obstacle(curve, b.center))
            throw BlobTouchesBoundary("blob center lies inside the obstacle");
        if (distance_to_boundary(curve, b.center) <= b.core_radius)
            throw BlobTouchesBoundary("blob support reaches the boundary");
    }
}

Vec2 velocity_fullplane(const VorticityField& omega, const Vec2& x) {
    Vec2 u = Vec2::Zero();
    for (const auto& b : omega.blobs) {
        const Vec2 d = x - b.center;
        const double r2 = d.squaredNorm();
        if (b.core_radius > 0.0) {
            if (r2 == 0.0) continue; // mollified field vanishes at the center
            const double q = r2 / (2.0 * b.core_radius * b.core_radius);
            u += b.strength * (-std::expm1(-q)) / r2 * perp(d);
        } else {
            if (r2 < singular_gap * singular_gap)
                throw SingularEvaluation("evaluation at a point-vortex center");
            u += b.strength / r2 * perp(d);
        }
    }
    return u / (2.0 * pi);
}

std::vector<Vec2> density_node_positions(const BoundaryCurve& curve, const BoundaryMesh& mesh) {
    std::vector<Vec2> nodes(mesh.s.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) nodes[j] = curve.point(mesh.s[j]);
    return nodes;
}

Vec2 velocity_vortex_sheet(const BoundaryDensity& density, const std::vector<Vec2>& nodes,
                           const Vec2& x) {
    const int n = static_cast<int>(nodes.size());
    Vec2 u = Vec2::Zero();
    for (int j = 0; j < n; ++j) {
        const Vec2 d = x - nodes[j];
        const double r2 = d.squaredNorm();
        if (r2 < singular_gap * singular_gap)
            throw SingularEvaluation("evaluation at a boundary node");
        u += density.values[j] / r2 * perp(d);
    }
    return u / (2.0 * pi * n);
}

Vec2 velocity_vortex_sheet(const BoundaryDensity& density, const BoundaryCurve& curve,
                           const Vec2& x) {
    return velocity_vortex_sheet(density, density_node_positions(curve, density.mesh), x);
}

Vec2 velocity_charge(const BoundaryDensity& density, const std::vector<Vec2>& nodes,
                     const Vec2& x) {
    const int n = static_cast<int>(nodes.size());
    Vec2 u = Vec2::Zero();
    for (int j = 0; j < n; ++j) {
        const Vec2 d = x - nodes[j];
        const double r2 = d.squaredNorm();
        if (r2 < singular_gap * singular_gap)
            throw SingularEvaluation("evaluation at a boundary node");
        u += density.values[j] / r2 * d;
    }
    return u / (2.0 * pi * n) + density.circulation * harmonic_field(density.hstar, x);
}

Vec2 velocity_charge(const BoundaryDensity& density, const BoundaryCurve& curve, const Vec2& x) {
    return velocity_charge(density, density_node_positions(curve, density.mesh), x);
}

Vec2 harmonic_field(const HStarSpec& hstar, const Vec2& x) {
    const Vec2 d = hstar.kind == HStarSpec::Kind::DiskHarmonic ? x : Vec2(x - hstar.x_star);
    const double r2 = d.squaredNorm();
    if (r2 < singular_gap * singular_gap)
        throw SingularEvaluation("harmonic field evaluated at its singularity");
    return perp(d) / (2.0 * pi * r2);
}

} // namespace bvm
