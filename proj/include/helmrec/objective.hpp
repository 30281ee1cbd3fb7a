#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "helmrec/cases.hpp"
#include "helmrec/fem.hpp"
#include "helmrec/param.hpp"

namespace helmrec {

enum class Formulation { DirichletRecovery, NeumannRecovery };
enum class RegularizerKind { L2, L2PlusH1 };

Formulation formulation_by_name(const std::string& name);
const char* formulation_name(Formulation f);
RegularizerKind regularizer_by_name(const std::string& name);
const char* regularizer_name(RegularizerKind r);

struct ObjectiveConfig {
    Formulation formulation = Formulation::DirichletRecovery;
    double alpha = 1e-8;  // Tikhonov weight
    RegularizerKind regularizer = RegularizerKind::L2PlusH1;
};

// Misfit inputs wired once per experiment. The operator's Dirichlet tag must
// match the formulation: GammaI for Dirichlet recovery (problem P with the
// unknown trace imposed on GammaI), GammaC for Neumann recovery.
struct ObjectiveProblem {
    const FactorizedOperator* op = nullptr;
    const PolyBasis* basis = nullptr;  // on GammaI
    const CauchyData* data = nullptr;
    ObjectiveConfig config;
};

// Regularizer value of a nodal candidate on GammaI.
double regularizer_value(const ObjectiveProblem& problem, const BoundaryField& candidate);

// One full FEM solve per call:
//   Dirichlet recovery: J(c) = 1/2 ||trace(u) - f||^2_{L2(Gc)} + alpha/2 reg
//   Neumann recovery:   J(c) = 1/2 ||flux(u) - g||^2_{L2(Gc)}  + alpha/2 reg
double eval_naive(const ObjectiveProblem& problem, std::span<const double> coeffs);

/**
 * Affine response cache: one solve for the known data with zero candidate
 * plus one solve per basis function (d+2 total). By linearity of the PDE
 * the objective collapses to the explicit quadratic
 *     J(c) = 1/2 c^T H c + b^T c + k,
 * evaluated with no further FEM work.
 */
class ResponseBasis {
public:
    explicit ResponseBasis(const ObjectiveProblem& problem);

    double eval_fast(std::span<const double> coeffs) const;

    int dimension() const { return static_cast<int>(gradient0_.size()); }
    int stored_solutions() const { return static_cast<int>(solutions_.size()); }
    const ObjectiveProblem& problem() const { return problem_; }

    const Eigen::MatrixXd& hessian() const { return hessian_; }
    const Eigen::VectorXd& gradient0() const { return gradient0_; }
    double constant() const { return constant_; }

    // Affine reconstruction u(c) = u_0 + sum_j c_j u_j (testing hook).
    Eigen::VectorXd reconstruct_solution(std::span<const double> coeffs) const;

private:
    ObjectiveProblem problem_;
    std::vector<FemSolution> solutions_;  // u_0 first, then u_j
    Eigen::MatrixXd hessian_;
    Eigen::VectorXd gradient0_;
    double constant_ = 0.0;
};

}  // namespace helmrec
