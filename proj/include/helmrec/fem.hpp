#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "helmrec/mesh.hpp"

namespace helmrec {

// Nodal values along one boundary segment, aligned with its node order.
struct BoundaryField {
    Tag tag = Tag::GammaI;
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
};

// P1 solution plus the boundary load it was computed with; the load is kept
// so the variational flux can be recovered afterwards.
struct FemSolution {
    Eigen::VectorXd values;
    Eigen::VectorXd neumann_load;
};

// Factorization hit a near-singular pivot: the reaction coefficient sits too
// close to an eigenvalue of the mixed problem.
class EigenvalueProximityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Assembled and factorized P1 discretization of -Δu + mu·u = 0 with
 * Dirichlet data on one tagged segment and Neumann data on the other.
 *
 * The bilinear form a(u,v) = ∫∇u·∇v + mu ∫uv is assembled once; Dirichlet
 * rows/columns are eliminated (which keeps the reduced system symmetric)
 * and the reduced matrix is LDLT-factorized. The factorization handles
 * indefinite matrices, so mu < 0 works as long as mu stays away from the
 * mixed-problem eigenvalues. Nodes on the closed Dirichlet segment,
 * including the nodes it shares with the complementary segment, are
 * constrained.
 *
 * Immutable after construction; concurrent solve() calls are safe.
 */
class FactorizedOperator {
public:
    FactorizedOperator(const Mesh& mesh, double mu, Tag dirichlet_tag);

    // Solves with the given Dirichlet trace (on the operator's Dirichlet
    // segment) and Neumann flux (on the complementary segment). Imposed
    // Dirichlet nodal values are copied into the solution exactly.
    FemSolution solve(const BoundaryField& dirichlet_values, const BoundaryField& neumann_values) const;

    const Mesh& mesh() const { return *mesh_; }
    double mu() const { return mu_; }
    Tag dirichlet_tag() const { return dirichlet_tag_; }
    Tag neumann_tag() const { return neumann_tag_; }
    const BoundarySegment& segment(Tag tag) const {
        return tag == Tag::GammaI ? gamma_i_ : gamma_c_;
    }
    const BoundarySegment& dirichlet_segment() const { return segment(dirichlet_tag_); }
    const BoundarySegment& neumann_segment() const { return segment(neumann_tag_); }

    // Unreduced symmetric matrix K + mu·M (used by the flux recovery).
    const Eigen::SparseMatrix<double>& full_matrix() const { return full_; }

    bool all_pivots_positive() const;

private:
    const Mesh* mesh_;
    double mu_ = 0.0;
    Tag dirichlet_tag_ = Tag::GammaI;
    Tag neumann_tag_ = Tag::GammaC;
    BoundarySegment gamma_i_;
    BoundarySegment gamma_c_;
    std::vector<int> free_index_;     // global node -> free index, -1 if constrained
    std::vector<int> free_nodes_;     // free index -> global node
    std::vector<int> dirichlet_nodes_;  // constrained index -> global node
    Eigen::SparseMatrix<double> full_;
    Eigen::SparseMatrix<double> coupling_;  // free rows x dirichlet cols
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

// Restriction of the solution to one segment's nodes.
BoundaryField trace(const FemSolution& solution, const BoundarySegment& segment);

// Variational normal-flux recovery on `target`: solves the segment mass
// system <λ, v> = a(u_h, v) - (loads applied outside the target segment)
// over the target's nodal test functions. On the Dirichlet segment this is
// the standard residual-based flux; on the Neumann segment it returns the
// L2 projection of the imposed data.
BoundaryField recover_flux(const FactorizedOperator& op, const FemSolution& solution,
                           const BoundarySegment& target);

// Consistent P1 edge mass and tangential stiffness of one segment (dense;
// segments hold at most a few hundred nodes).
Eigen::MatrixXd segment_mass(const BoundarySegment& segment);
Eigen::MatrixXd segment_stiffness(const BoundarySegment& segment);

double boundary_l2_inner(const std::vector<double>& a, const std::vector<double>& b,
                         const BoundarySegment& segment);
double boundary_l2_norm(const BoundaryField& field, const BoundarySegment& segment);
double boundary_h1_seminorm(const BoundaryField& field, const BoundarySegment& segment);

// Relative L2(domain) distance between a P1 nodal field and a smooth
// reference, integrated with a degree-4 triangle quadrature.
double relative_l2_error(const Mesh& mesh, const Eigen::VectorXd& values,
                         double (*exact)(double, double));

}  // namespace helmrec
