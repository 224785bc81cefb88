#pragma once

#include "bvm/errors.hpp"

#include <Eigen/Dense>

namespace bvm {

/// Dense LU with partial pivoting and an explicit pivot check: any |U_ii|
/// below 1e-14 times the largest matrix entry throws SingularSystem.
class FactoredLu {
  public:
    explicit FactoredLu(const Eigen::MatrixXd& m);

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    Eigen::VectorXd solve_transpose(const Eigen::VectorXd& rhs) const;

    /// Hager-style 1-norm condition estimate kappa_1 = ||M||_1 ||M^-1||_1.
    double condition_1() const;

    double min_pivot() const { return min_pivot_; }

  private:
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    double norm1_ = 0.0;
    double min_pivot_ = 0.0;
};

/// One-shot convenience wrapper around FactoredLu.
Eigen::VectorXd lu_solve_checked(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs);

} // namespace bvm
