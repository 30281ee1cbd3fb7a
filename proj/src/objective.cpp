#include "helmrec/objective.hpp"

#include <stdexcept>

namespace helmrec {

namespace {

Tag required_dirichlet_tag(Formulation f) {
    return f == Formulation::DirichletRecovery ? Tag::GammaI : Tag::GammaC;
}

void check_problem(const ObjectiveProblem& p) {
    if (!p.op || !p.basis || !p.data) throw std::invalid_argument("objective: problem not wired");
    if (p.op->dirichlet_tag() != required_dirichlet_tag(p.config.formulation)) {
        throw std::invalid_argument("objective: operator Dirichlet tag does not match the formulation");
    }
    if (p.basis->segment().tag != Tag::GammaI) {
        throw std::invalid_argument("objective: candidate basis must live on GammaI");
    }
    if (p.config.alpha < 0.0) throw std::invalid_argument("objective: alpha must be >= 0");
}

BoundaryField zero_field(const BoundarySegment& seg) {
    BoundaryField f;
    f.tag = seg.tag;
    f.values.assign(seg.node_ids.size(), 0.0);
    return f;
}

// Misfit-side response on GammaC for one solution: the trace for Dirichlet
// recovery, the recovered flux for Neumann recovery.
std::vector<double> misfit_response(const ObjectiveProblem& p, const FemSolution& sol) {
    const BoundarySegment& gamma_c = p.op->segment(Tag::GammaC);
    if (p.config.formulation == Formulation::DirichletRecovery) {
        return trace(sol, gamma_c).values;
    }
    return recover_flux(*p.op, sol, gamma_c).values;
}

const std::vector<double>& misfit_data(const ObjectiveProblem& p) {
    return p.config.formulation == Formulation::DirichletRecovery ? p.data->f.values
                                                                  : p.data->g.values;
}

FemSolution solve_candidate(const ObjectiveProblem& p, const BoundaryField& candidate) {
    if (p.config.formulation == Formulation::DirichletRecovery) {
        return p.op->solve(candidate, p.data->g);
    }
    return p.op->solve(p.data->f, candidate);
}

}  // namespace

Formulation formulation_by_name(const std::string& name) {
    if (name == "dirichlet") return Formulation::DirichletRecovery;
    if (name == "neumann") return Formulation::NeumannRecovery;
    throw std::invalid_argument("unknown formulation: " + name);
}

const char* formulation_name(Formulation f) {
    return f == Formulation::DirichletRecovery ? "dirichlet" : "neumann";
}

RegularizerKind regularizer_by_name(const std::string& name) {
    if (name == "l2") return RegularizerKind::L2;
    if (name == "l2h1") return RegularizerKind::L2PlusH1;
    throw std::invalid_argument("unknown regularizer: " + name);
}

const char* regularizer_name(RegularizerKind r) {
    return r == RegularizerKind::L2 ? "l2" : "l2h1";
}

double regularizer_value(const ObjectiveProblem& problem, const BoundaryField& candidate) {
    const BoundarySegment& gamma_i = problem.basis->segment();
    double reg = boundary_l2_inner(candidate.values, candidate.values, gamma_i);
    if (problem.config.regularizer == RegularizerKind::L2PlusH1) {
        const double semi = boundary_h1_seminorm(candidate, gamma_i);
        reg += semi * semi;
    }
    return reg;
}

double eval_naive(const ObjectiveProblem& problem, std::span<const double> coeffs) {
    check_problem(problem);
    const BoundaryField candidate = problem.basis->coeffs_to_field(coeffs);
    const FemSolution sol = solve_candidate(problem, candidate);

    const BoundarySegment& gamma_c = problem.op->segment(Tag::GammaC);
    std::vector<double> residual = misfit_response(problem, sol);
    const std::vector<double>& data = misfit_data(problem);
    for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= data[k];

    const double misfit = boundary_l2_inner(residual, residual, gamma_c);
    return 0.5 * misfit + 0.5 * problem.config.alpha * regularizer_value(problem, candidate);
}

ResponseBasis::ResponseBasis(const ObjectiveProblem& problem) : problem_(problem) {
    check_problem(problem);
    const PolyBasis& basis = *problem.basis;
    const BoundarySegment& gamma_i = basis.segment();
    const BoundarySegment& gamma_c = problem.op->segment(Tag::GammaC);
    const int dim = basis.dimension();

    // u_0: zero candidate with the measured data; u_j: basis candidate with
    // homogeneous data.
    solutions_.reserve(dim + 1);
    solutions_.push_back(solve_candidate(problem, zero_field(gamma_i)));

    CauchyData zero_data;
    zero_data.f = zero_field(gamma_c);
    zero_data.g = zero_field(gamma_c);
    ObjectiveProblem homogeneous = problem;
    homogeneous.data = &zero_data;
    for (int j = 0; j < dim; ++j) {
        std::vector<double> unit(dim, 0.0);
        unit[j] = 1.0;
        solutions_.push_back(solve_candidate(homogeneous, basis.coeffs_to_field(unit)));
    }

    std::vector<double> base = misfit_response(problem_, solutions_[0]);
    const std::vector<double>& data = misfit_data(problem_);
    for (std::size_t k = 0; k < base.size(); ++k) base[k] -= data[k];

    std::vector<std::vector<double>> responses(dim);
    for (int j = 0; j < dim; ++j) responses[j] = misfit_response(problem_, solutions_[j + 1]);

    Eigen::MatrixXd misfit_gram(dim, dim);
    gradient0_.resize(dim);
    for (int j = 0; j < dim; ++j) {
        gradient0_[j] = boundary_l2_inner(base, responses[j], gamma_c);
        for (int k = 0; k <= j; ++k) {
            misfit_gram(j, k) = misfit_gram(k, j) = boundary_l2_inner(responses[j], responses[k], gamma_c);
        }
    }
    constant_ = 0.5 * boundary_l2_inner(base, base, gamma_c);

    Eigen::MatrixXd reg_gram = basis.gram_l2();
    if (problem.config.regularizer == RegularizerKind::L2PlusH1) reg_gram += basis.gram_h1();
    hessian_ = misfit_gram + problem.config.alpha * reg_gram;
}

double ResponseBasis::eval_fast(std::span<const double> coeffs) const {
    if (static_cast<int>(coeffs.size()) != dimension()) {
        throw std::invalid_argument("eval_fast: coefficient dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), dimension());
    return 0.5 * c.dot(hessian_ * c) + gradient0_.dot(c) + constant_;
}

Eigen::VectorXd ResponseBasis::reconstruct_solution(std::span<const double> coeffs) const {
    if (static_cast<int>(coeffs.size()) != dimension()) {
        throw std::invalid_argument("reconstruct_solution: coefficient dimension mismatch");
    }
    Eigen::VectorXd u = solutions_[0].values;
    for (int j = 0; j < dimension(); ++j) u += coeffs[j] * solutions_[j + 1].values;
    return u;
}

}  // namespace helmrec
