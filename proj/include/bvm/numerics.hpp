#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace bvm {

using Vec2 = Eigen::Vector2d;

// Rotation by +pi/2: (x, y) -> (-y, x).
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline constexpr double pi = 3.14159265358979323846;

// l^p norms with the 1/N normalization used throughout: ((1/N) sum |z_i|^p)^(1/p).
double lp_norm(const Eigen::VectorXd& z, double p);
double linf_norm(const Eigen::VectorXd& z);
inline double mean(const Eigen::VectorXd& z) { return z.size() ? z.mean() : 0.0; }

// Least-squares slope of log(err) vs log(n); pairs with err <= floor are
// dropped. Returns +infinity when fewer than two usable pairs remain
// (errors at or below floor everywhere: decay faster than measurable).
double loglog_slope(const std::vector<int>& n, const std::vector<double>& err,
                    double floor = 0.0);

// Deterministic uniform draw on [0,1): mt19937_64 output mapped through the
// 53-bit mantissa. std::uniform_real_distribution is implementation-defined,
// which would break the bit-identical mesh contract.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}
inline double uniform_pm1(std::mt19937_64& gen) { return 2.0 * uniform01(gen) - 1.0; }

// Runs fn(i) for i in [0, n); deterministic for any thread count since each
// index writes only its own slot.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace bvm
