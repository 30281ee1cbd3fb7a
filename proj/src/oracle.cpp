#include "helmrec/oracle.hpp"

namespace helmrec {

double QuadraticForm::eval(std::span<const double> coeffs) const {
    if (static_cast<int>(coeffs.size()) != dimension()) {
        throw std::invalid_argument("QuadraticForm::eval: dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), dimension());
    return 0.5 * c.dot(H * c) + b.dot(c) + k;
}

QuadraticForm extract_quadratic(const ResponseBasis& response) {
    return {response.hessian(), response.gradient0(), response.constant()};
}

OracleSolution solve_normal_equations(const QuadraticForm& q, double lb, double ub) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q.H);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
        throw OracleUnavailableError(
            "normal equations unavailable: Hessian is not positive definite "
            "(alpha too small for degenerate data)");
    }

    const Eigen::VectorXd c = -Eigen::LDLT<Eigen::MatrixXd>(q.H).solve(q.b);

    OracleSolution sol;
    sol.coeffs.assign(c.data(), c.data() + c.size());
    sol.value = q.eval(sol.coeffs);
    sol.inside_bounds = (c.array() >= lb).all() && (c.array() <= ub).all();
    return sol;
}

}  // namespace helmrec
