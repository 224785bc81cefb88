#include "bvm/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace bvm {

namespace {

constexpr double two_pi = 2.0 * pi;

// 8-point Gauss-Legendre on [-1, 1]; used for the sub-panel pieces of the
// arc-length map, where the panel is already small enough that this is exact
// to round-off.
constexpr int gl_n = 8;
constexpr double gl_x[gl_n] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double gl_w[gl_n] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

struct FourierEval {
    double r, dr, ddr;
};

FourierEval eval_fourier_radius(const CurveSpec& spec, double theta) {
    FourierEval e{spec.r0, 0.0, 0.0};
    for (std::size_t k = 1; k <= std::max(spec.cos_coef.size(), spec.sin_coef.size()); ++k) {
        const double ak = k <= spec.cos_coef.size() ? spec.cos_coef[k - 1] : 0.0;
        const double bk = k <= spec.sin_coef.size() ? spec.sin_coef[k - 1] : 0.0;
        const double c = std::cos(k * theta), s = std::sin(k * theta);
        e.r += ak * c + bk * s;
        e.dr += k * (bk * c - ak * s);
        e.ddr -= k * k * (ak * c + bk * s);
    }
    return e;
}

} // namespace

CurveSpec CurveSpec::circle(double radius, Vec2 center) {
    CurveSpec s;
    s.kind = CurveKind::Circle;
    s.radius = radius;
    s.center = center;
    return s;
}

CurveSpec CurveSpec::ellipse(double a, double b) {
    CurveSpec s;
    s.kind = CurveKind::Ellipse;
    s.a = a;
    s.b = b;
    return s;
}

CurveSpec CurveSpec::fourier(double r0, std::vector<double> cos_coef,
                             std::vector<double> sin_coef) {
    CurveSpec s;
    s.kind = CurveKind::Fourier;
    s.r0 = r0;
    s.cos_coef = std::move(cos_coef);
    s.sin_coef = std::move(sin_coef);
    return s;
}

Vec2 BoundaryCurve::param_point(double theta) const {
    switch (spec_.kind) {
    case CurveKind::Circle:
        return spec_.center + spec_.radius * Vec2(std::cos(theta), std::sin(theta));
    case CurveKind::Ellipse:
        return Vec2(spec_.a * std::cos(theta), spec_.b * std::sin(theta));
    case CurveKind::Fourier: {
        const auto e = eval_fourier_radius(spec_, theta);
        return e.r * Vec2(std::cos(theta), std::sin(theta));
    }
    }
    return Vec2::Zero();
}

Vec2 BoundaryCurve::param_velocity(double theta) const {
    switch (spec_.kind) {
    case CurveKind::Circle:
        return spec_.radius * Vec2(-std::sin(theta), std::cos(theta));
    case CurveKind::Ellipse:
        return Vec2(-spec_.a * std::sin(theta), spec_.b * std::cos(theta));
    case CurveKind::Fourier: {
        const auto e = eval_fourier_radius(spec_, theta);
        const Vec2 er(std::cos(theta), std::sin(theta));
        return e.dr * er + e.r * perp(er);
    }
    }
    return Vec2::Zero();
}

Vec2 BoundaryCurve::param_acceleration(double theta) const {
    switch (spec_.kind) {
    case CurveKind::Circle:
        return -spec_.radius * Vec2(std::cos(theta), std::sin(theta));
    case CurveKind::Ellipse:
        return Vec2(-spec_.a * std::cos(theta), -spec_.b * std::sin(theta));
    case CurveKind::Fourier: {
        const auto e = eval_fourier_radius(spec_, theta);
        const Vec2 er(std::cos(theta), std::sin(theta));
        return (e.ddr - e.r) * er + 2.0 * e.dr * perp(er);
    }
    }
    return Vec2::Zero();
}

double BoundaryCurve::arclength_from_theta(double theta) const {
    const int m = static_cast<int>(table_theta_.size()) - 1;
    const double h = two_pi / m;
    // full turns first, then the table plus a Gauss tail inside one panel
    double full = std::floor(theta / two_pi);
    double t = theta - full * two_pi;
    int k = std::min(static_cast<int>(t / h), m - 1);
    double s = table_s_[k];
    const double a = table_theta_[k];
    if (t > a) {
        const double half = 0.5 * (t - a);
        const double mid = 0.5 * (t + a);
        double acc = 0.0;
        for (int i = 0; i < gl_n; ++i)
            acc += gl_w[i] * param_velocity(mid + half * gl_x[i]).norm();
        s += half * acc;
    }
    return s + full * length_;
}

double BoundaryCurve::theta_from_arclength(double s) const {
    const double full = std::floor(s / length_);
    double target = s - full * length_;
    // bracket from the monotone table, then bisection-secured Newton
    auto it = std::upper_bound(table_s_.begin(), table_s_.end(), target);
    int k = std::max<int>(1, static_cast<int>(it - table_s_.begin()));
    k = std::min<int>(k, static_cast<int>(table_s_.size()) - 1);
    double lo = table_theta_[k - 1], hi = table_theta_[k];
    double slo = table_s_[k - 1], shi = table_s_[k];
    double theta = lo + (hi - lo) * (target - slo) / std::max(shi - slo, 1e-300);
    for (int it2 = 0; it2 < 60; ++it2) {
        const double f = arclength_from_theta(theta) - target;
        if (f > 0.0)
            hi = theta;
        else
            lo = theta;
        const double step = f / std::max(param_velocity(theta).norm(), 1e-300);
        double next = theta - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - theta) < 1e-15 * two_pi) {
            theta = next;
            break;
        }
        theta = next;
    }
    return theta + full * two_pi;
}

Vec2 BoundaryCurve::point(double s) const { return param_point(theta_from_arclength(s)); }

Vec2 BoundaryCurve::tangent(double s) const {
    return param_velocity(theta_from_arclength(s)).normalized();
}

Vec2 BoundaryCurve::normal(double s) const { return -perp(tangent(s)); }

double BoundaryCurve::curvature(double s) const {
    const double theta = theta_from_arclength(s);
    const Vec2 v = param_velocity(theta);
    const Vec2 a = param_acceleration(theta);
    const double speed = v.norm();
    return (v.x() * a.y() - v.y() * a.x()) / (speed * speed * speed);
}

namespace detail {

namespace {
// standard orientation/straddle segment intersection, exact enough for the
// dense-sample simplicity test
double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = orient(c, d, a), d2 = orient(c, d, b);
    const double d3 = orient(a, b, c), d4 = orient(a, b, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}
} // namespace

bool polyline_self_intersects(const std::vector<Vec2>& pts) {
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // closing segment is adjacent to the first
            if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
                return true;
        }
    }
    return false;
}

} // namespace detail

BoundaryCurve build_curve(const CurveSpec& spec, int table_resolution) {
    if (table_resolution < 64)
        throw std::invalid_argument("build_curve: table_resolution must be >= 64");

    switch (spec.kind) {
    case CurveKind::Circle:
        if (!(spec.radius > 0.0)) throw NonPositiveRadius("circle radius must be positive");
        break;
    case CurveKind::Ellipse:
        if (!(spec.b > 0.0)) throw NonPositiveRadius("ellipse semi-axes must be positive");
        if (!(spec.a >= spec.b))
            throw std::invalid_argument("ellipse requires a >= b > 0");
        break;
    case CurveKind::Fourier:
        break;
    }

    BoundaryCurve curve;
    curve.spec_ = spec;

    if (spec.kind == CurveKind::Fourier) {
        constexpr int probe = 8192;
        for (int i = 0; i < probe; ++i) {
            if (eval_fourier_radius(spec, i * two_pi / probe).r <= 0.0)
                throw NonPositiveRadius("fourier radius must stay positive");
        }
    }

    // cumulative Simpson over the uniform theta grid, Kahan-compensated so the
    // summation error stays O(eps) independent of the table size
    const int m = table_resolution;
    curve.table_theta_.resize(m + 1);
    curve.table_s_.resize(m + 1);
    const double h = two_pi / m;
    curve.table_theta_[0] = 0.0;
    curve.table_s_[0] = 0.0;
    double prev_speed = curve.param_velocity(0.0).norm();
    double acc = 0.0, comp = 0.0;
    for (int k = 0; k < m; ++k) {
        const double t0 = k * h;
        const double mid_speed = curve.param_velocity(t0 + 0.5 * h).norm();
        const double next_speed = curve.param_velocity(t0 + h).norm();
        curve.table_theta_[k + 1] = t0 + h;
        const double panel = h / 6.0 * (prev_speed + 4.0 * mid_speed + next_speed) - comp;
        const double acc_next = acc + panel;
        comp = (acc_next - acc) - panel;
        acc = acc_next;
        curve.table_s_[k + 1] = acc;
        prev_speed = next_speed;
    }
    curve.length_ = curve.table_s_[m];

    std::vector<Vec2> sample(1024);
    for (std::size_t i = 0; i < sample.size(); ++i)
        sample[i] = curve.param_point(i * two_pi / sample.size());
    if (detail::polyline_self_intersects(sample))
        throw NonSimpleCurve("curve self-intersects on dense sample");

    return curve;
}

double distance_to_boundary(const BoundaryCurve& c, const Vec2& x, int samples) {
    // coarse pass over the native angle, then one refinement sweep around the
    // best panel; plenty for the > core_radius / collision preconditions
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = i * two_pi / samples;
        const double d = (c.param_point(theta) - x).norm();
        if (d < best) {
            best = d;
            best_theta = theta;
        }
    }
    const double h = two_pi / samples;
    for (int i = -8; i <= 8; ++i) {
        const double d = (c.param_point(best_theta + i * h / 8.0) - x).norm();
        best = std::min(best, d);
    }
    return best;
}

bool point_inside_obstacle(const BoundaryCurve& c, const Vec2& x, int samples) {
    double winding = 0.0;
    Vec2 prev = c.param_point(0.0) - x;
    for (int i = 1; i <= samples; ++i) {
        const Vec2 cur = c.param_point(i * two_pi / samples) - x;
        winding += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
        prev = cur;
    }
    return std::abs(winding) > pi; // +-2pi when enclosed, ~0 outside
}

} // namespace bvm
