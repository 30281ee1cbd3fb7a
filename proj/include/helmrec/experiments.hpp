#pragma once

#include <memory>
#include <string>
#include <vector>

#include "helmrec/cases.hpp"
#include "helmrec/config.hpp"
#include "helmrec/objective.hpp"
#include "helmrec/oracle.hpp"
#include "helmrec/param.hpp"
#include "helmrec/pso.hpp"

namespace helmrec {

/**
 * A fully wired reconstruction problem: benchmark case, mesh, factorized
 * operator for one formulation, candidate basis and noise-free data.
 * Immutable after construction; safe to share across sweep workers.
 */
class Workbench {
public:
    Workbench(CaseName name, Formulation formulation, int mesh_n, int degree, BasisKind kind);

    const BenchmarkCase& benchmark() const { return bc_; }
    Formulation formulation() const { return formulation_; }
    const Mesh& mesh() const { return mesh_; }
    const FactorizedOperator& op() const { return *op_; }
    const PolyBasis& basis() const { return *basis_; }
    const CaseData& clean_data() const { return data_; }

    // Reconstruction target on GammaI: the trace for Dirichlet recovery,
    // the flux for Neumann recovery.
    const BoundaryField& target() const;

private:
    BenchmarkCase bc_;
    Formulation formulation_;
    Mesh mesh_;
    std::unique_ptr<FactorizedOperator> op_;
    std::unique_ptr<PolyBasis> basis_;
    CaseData data_;
};

struct ReconstructionRun {
    PsoResult pso;
    OracleSolution oracle;
    double err_exact = 0.0;   // rel L2(GammaI), reconstruction vs exact target
    double err_oracle = 0.0;  // rel L2(GammaI), reconstruction vs oracle minimizer
    double oracle_err_exact = 0.0;
    CauchyData data;          // data actually used (noisy when nu > 0)
};

// One end-to-end reconstruction: perturb data, build the response cache,
// take the oracle minimizer, run PSO on the fast path.
ReconstructionRun reconstruct_once(const Workbench& wb, double alpha, RegularizerKind regularizer,
                                   const PsoConfig& pso, double nu, std::uint64_t noise_seed);

struct ConvergenceRow {
    int n = 0;
    double h = 0.0;
    double error = 0.0;  // relative L2(domain) against the exact solution
    double ratio = 0.0;  // previous error / this error (0 on the first row)
};

// Manufactured-solution study: full-data direct solves at the given levels.
std::vector<ConvergenceRow> fem_convergence_study(CaseName name, const std::vector<int>& levels);

// CLI command bodies. Each writes its artifacts under config.out_dir and
// returns a process exit code (0 ok, 1 numerical failure, 2 bad config).
int cmd_validate_fem(const ExperimentConfig& config);
int cmd_reconstruct(const ExperimentConfig& config);
int cmd_reg_sweep(const ExperimentConfig& config);
int cmd_noise_study(const ExperimentConfig& config);
int cmd_compare_dn(const ExperimentConfig& config);
int cmd_mesh_export(const ExperimentConfig& config);

}  // namespace helmrec
