#include "bvm/numerics.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bvm {

double lp_norm(const Eigen::VectorXd& z, double p) {
    const double n = static_cast<double>(z.size());
    double acc = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) acc += std::pow(std::abs(z[i]), p);
    return std::pow(acc / n, 1.0 / p);
}

double linf_norm(const Eigen::VectorXd& z) { return z.cwiseAbs().maxCoeff(); }

double loglog_slope(const std::vector<int>& n, const std::vector<double>& err, double floor) {
    // least-squares slope of log(err) against log(n), skipping entries at or
    // below the round-off floor; +inf signals "too few usable points"
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < n.size() && i < err.size(); ++i) {
        if (!(err[i] > floor)) continue;
        const double x = std::log(static_cast<double>(n[i]));
        const double y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::infinity();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += threads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace bvm
