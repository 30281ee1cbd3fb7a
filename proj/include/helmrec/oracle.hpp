#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "helmrec/objective.hpp"

namespace helmrec {

class OracleUnavailableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// J(c) = 1/2 c^T H c + b^T c + k with H symmetric.
struct QuadraticForm {
    Eigen::MatrixXd H;
    Eigen::VectorXd b;
    double k = 0.0;

    double eval(std::span<const double> coeffs) const;
    int dimension() const { return static_cast<int>(b.size()); }
};

QuadraticForm extract_quadratic(const ResponseBasis& response);

struct OracleSolution {
    std::vector<double> coeffs;  // unconstrained minimizer -H^{-1} b
    double value = 0.0;
    bool inside_bounds = false;  // whether the minimizer lies in [lb, ub]^dim
};

// Dense symmetric solve of the normal equations. Throws
// OracleUnavailableError when H is not positive definite.
OracleSolution solve_normal_equations(const QuadraticForm& q, double lb, double ub);

}  // namespace helmrec
