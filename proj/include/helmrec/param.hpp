#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "helmrec/fem.hpp"
#include "helmrec/mesh.hpp"

namespace helmrec {

enum class BasisKind { Monomial, Chebyshev };

BasisKind basis_kind_by_name(const std::string& name);
const char* basis_kind_name(BasisKind kind);

class IllConditionedBasisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Polynomial basis of degree d on one boundary segment, evaluated in the
 * normalized coordinate t in [-1, 1]. A coefficient vector (the PSO search
 * space) maps to the nodal boundary function sum_j c_j B_j(t_k).
 */
class PolyBasis {
public:
    PolyBasis(BasisKind kind, int degree, const BoundarySegment& segment);

    BasisKind kind() const { return kind_; }
    int degree() const { return degree_; }
    int dimension() const { return degree_ + 1; }
    const BoundarySegment& segment() const { return *segment_; }

    double evaluate(int j, double t) const;

    // Rows are segment nodes, columns basis functions.
    const Eigen::MatrixXd& node_values() const { return node_values_; }

    BoundaryField coeffs_to_field(std::span<const double> coeffs) const;

    // L2(segment) projection through the (d+1)x(d+1) Gram system. Throws
    // IllConditionedBasisError if the Gram condition number exceeds 1e12.
    std::vector<double> project(const BoundaryField& field) const;

    Eigen::MatrixXd gram_l2() const;
    Eigen::MatrixXd gram_h1() const;
    double gram_condition() const;

private:
    BasisKind kind_;
    int degree_;
    const BoundarySegment* segment_;
    Eigen::MatrixXd node_values_;
};

}  // namespace helmrec
