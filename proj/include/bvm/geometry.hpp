#pragma once

#include <vector>

#include "bvm/errors.hpp"
#include "bvm/numerics.hpp"

namespace bvm {

enum class CurveKind { Circle, Ellipse, Fourier };

// Smooth closed obstacle boundary. Circle and ellipse are the standard
// parametrizations; fourier is a polar graph r(theta) = r0 + sum_k (a_k cos +
// b_k sin) about the origin, which keeps every r > 0 curve simple and closed.
struct CurveSpec {
    CurveKind kind = CurveKind::Circle;

    // circle
    double radius = 1.0;
    Vec2 center = Vec2::Zero();

    // ellipse, semi-axes a >= b > 0
    double a = 2.0;
    double b = 1.0;

    // fourier
    double r0 = 1.0;
    std::vector<double> cos_coef;
    std::vector<double> sin_coef;

    static CurveSpec circle(double radius, Vec2 center = Vec2::Zero());
    static CurveSpec ellipse(double a, double b);
    static CurveSpec fourier(double r0, std::vector<double> cos_coef,
                             std::vector<double> sin_coef = {});
};

// Closed boundary with exact arc-length parametrization l(s), counterclockwise,
// tangent tau = l', outward normal n = -tau^perp (pointing into the fluid).
// Immutable after build; all evaluations are pure.
class BoundaryCurve {
  public:
    const CurveSpec& spec() const { return spec_; }
    double length() const { return length_; }

    Vec2 point(double s) const;
    Vec2 tangent(double s) const;
    Vec2 normal(double s) const;
    double curvature(double s) const;

    // Monotone parameter map between the native angle theta in [0, 2pi) and
    // arc length s in [0, L); inversion is Newton secured by bisection.
    double arclength_from_theta(double theta) const;
    double theta_from_arclength(double s) const;

    // Parametric evaluations at the native angle (used internally and by the
    // geometry tests for analytic cross-checks).
    Vec2 param_point(double theta) const;
    Vec2 param_velocity(double theta) const;
    Vec2 param_acceleration(double theta) const;

  private:
    friend BoundaryCurve build_curve(const CurveSpec& spec, int table_resolution);

    CurveSpec spec_;
    double length_ = 0.0;
    // cumulative Simpson table over the uniform theta grid
    std::vector<double> table_theta_;
    std::vector<double> table_s_;
};

// Builds the curve, its arc-length table at the given resolution, and runs the
// validity checks (positive radius, simplicity on a dense sample).
BoundaryCurve build_curve(const CurveSpec& spec, int table_resolution = 4096);

inline Vec2 eval_point(const BoundaryCurve& c, double s) { return c.point(s); }
inline Vec2 eval_tangent(const BoundaryCurve& c, double s) { return c.tangent(s); }
inline Vec2 eval_normal(const BoundaryCurve& c, double s) { return c.normal(s); }
inline double eval_curvature(const BoundaryCurve& c, double s) { return c.curvature(s); }

// Signed distance diagnostics used by the field/solver preconditions: smallest
// distance from x to the sampled boundary, and whether x is enclosed by it
// (winding test). Sample count trades accuracy for speed.
double distance_to_boundary(const BoundaryCurve& c, const Vec2& x, int samples = 2048);
bool point_inside_obstacle(const BoundaryCurve& c, const Vec2& x, int samples = 2048);

namespace detail {
// Self-intersection test on a closed polyline (non-adjacent segment pairs).
bool polyline_self_intersects(const std::vector<Vec2>& pts);
} // namespace detail

} // namespace bvm
