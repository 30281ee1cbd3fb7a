#include "helmrec/param.hpp"

namespace helmrec {

BasisKind basis_kind_by_name(const std::string& name) {
    if (name == "chebyshev") return BasisKind::Chebyshev;
    if (name == "monomial") return BasisKind::Monomial;
    throw std::invalid_argument("unknown basis: " + name);
}

const char* basis_kind_name(BasisKind kind) {
    return kind == BasisKind::Chebyshev ? "chebyshev" : "monomial";
}

PolyBasis::PolyBasis(BasisKind kind, int degree, const BoundarySegment& segment)
    : kind_(kind), degree_(degree), segment_(&segment) {
    if (degree < 0) throw std::invalid_argument("PolyBasis: degree must be >= 0");
    node_values_.resize(segment.size(), dimension());
    for (int k = 0; k < segment.size(); ++k) {
        for (int j = 0; j < dimension(); ++j) {
            node_values_(k, j) = evaluate(j, segment.t[k]);
        }
    }
}

double PolyBasis::evaluate(int j, double t) const {
    if (kind_ == BasisKind::Monomial) {
        double v = 1.0;
        for (int p = 0; p < j; ++p) v *= t;
        return v;
    }
    // Chebyshev recurrence
    if (j == 0) return 1.0;
    if (j == 1) return t;
    double prev = 1.0, cur = t;
    for (int p = 2; p <= j; ++p) {
        const double next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

BoundaryField PolyBasis::coeffs_to_field(std::span<const double> coeffs) const {
    if (static_cast<int>(coeffs.size()) != dimension()) {
        throw std::invalid_argument("coeffs_to_field: expected " + std::to_string(dimension()) +
                                    " coefficients, got " + std::to_string(coeffs.size()));
    }
    BoundaryField field;
    field.tag = segment_->tag;
    field.values.assign(segment_->size(), 0.0);
    for (int k = 0; k < segment_->size(); ++k) {
        double sum = 0.0;
        for (int j = 0; j < dimension(); ++j) sum += coeffs[j] * node_values_(k, j);
        field.values[k] = sum;
    }
    return field;
}

Eigen::MatrixXd PolyBasis::gram_l2() const {
    return node_values_.transpose() * segment_mass(*segment_) * node_values_;
}

Eigen::MatrixXd PolyBasis::gram_h1() const {
    return node_values_.transpose() * segment_stiffness(*segment_) * node_values_;
}

double PolyBasis::gram_condition() const {
    const Eigen::MatrixXd gram = gram_l2();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

std::vector<double> PolyBasis::project(const BoundaryField& field) const {
    if (field.size() != segment_->size()) {
        throw std::invalid_argument("project: field does not live on the basis segment");
    }
    if (gram_condition() > 1e12) {
        throw IllConditionedBasisError("project: Gram matrix condition exceeds 1e12");
    }
    const Eigen::MatrixXd gram = gram_l2();
    const Eigen::Map<const Eigen::VectorXd> f(field.values.data(), field.size());
    const Eigen::VectorXd rhs = node_values_.transpose() * segment_mass(*segment_) * f;
    const Eigen::VectorXd c = Eigen::LDLT<Eigen::MatrixXd>(gram).solve(rhs);
    return {c.data(), c.data() + c.size()};
}

}  // namespace helmrec
