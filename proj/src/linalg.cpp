#include "bvm/linalg.hpp"

#include <cmath>

namespace bvm {

FactoredLu::FactoredLu(const Eigen::MatrixXd& m) : lu_(m) {
    norm1_ = m.cwiseAbs().colwise().sum().maxCoeff();
    const double scale = m.cwiseAbs().maxCoeff();
    min_pivot_ = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot_ < 1e-14 * scale)
        throw SingularSystem("LU pivot below 1e-14 of the matrix scale");
}

Eigen::VectorXd FactoredLu::solve(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }

Eigen::VectorXd FactoredLu::solve_transpose(const Eigen::VectorXd& rhs) const {
    return lu_.transpose().solve(rhs);
}

double FactoredLu::condition_1() const {
    // Hager's estimator for ||M^-1||_1 using a handful of solves
    const Eigen::Index n = lu_.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double est = 0.0;
    for (int pass = 0; pass < 5; ++pass) {
        const Eigen::VectorXd y = solve(x);
        est = y.cwiseAbs().sum();
        Eigen::VectorXd xi(n);
        for (Eigen::Index i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        const Eigen::VectorXd z = solve_transpose(xi);
        Eigen::Index k;
        const double zmax = z.cwiseAbs().maxCoeff(&k);
        if (zmax <= z.dot(x)) break;
        x.setZero();
        x[k] = 1.0;
    }
    return est * norm1_;
}

Eigen::VectorXd lu_solve_checked(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs) {
    return FactoredLu(m).solve(rhs);
}

} // namespace bvm
