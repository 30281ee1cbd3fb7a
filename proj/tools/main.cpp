#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "helmrec/config.hpp"
#include "helmrec/experiments.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file (INI style)");
    cmd->add_option("--out", opts.out_dir, "output directory (overrides [output] dir)");
    cmd->add_option("--seed", opts.seed, "PSO seed (overrides [pso] seed)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--threads", opts.threads, "worker threads for sweeps and evaluations")
        ->check(CLI::PositiveNumber);
}

helmrec::ExperimentConfig load(const CommonOpts& opts) {
    helmrec::ExperimentConfig config;
    if (!opts.config_path.empty()) config = helmrec::parse_config_file(opts.config_path);
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (opts.seed_set) config.pso.seed = opts.seed;
    config.threads = opts.threads;
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-data reconstruction for the 2D (modified) Helmholtz equation:\n"
                 "PSO over a P1 finite-element forward solver with Tikhonov regularization."};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* validate_fem = app.add_subcommand("validate-fem", "manufactured-solution convergence study");
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "single boundary reconstruction");
    CLI::App* reg_sweep = app.add_subcommand("reg-sweep", "regularization parameter sweep");
    CLI::App* noise_study = app.add_subcommand("noise-study", "noise stability study");
    CLI::App* compare_dn = app.add_subcommand("compare-dn", "Dirichlet vs Neumann recovery report");
    CLI::App* mesh = app.add_subcommand("mesh", "export and validate the case mesh");
    for (CLI::App* cmd : {validate_fem, reconstruct, reg_sweep, noise_study, compare_dn, mesh}) {
        add_common(cmd, opts);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        const helmrec::ExperimentConfig config = load(opts);
        if (validate_fem->parsed()) return helmrec::cmd_validate_fem(config);
        if (reconstruct->parsed()) return helmrec::cmd_reconstruct(config);
        if (reg_sweep->parsed()) return helmrec::cmd_reg_sweep(config);
        if (noise_study->parsed()) return helmrec::cmd_noise_study(config);
        if (compare_dn->parsed()) return helmrec::cmd_compare_dn(config);
        if (mesh->parsed()) return helmrec::cmd_mesh_export(config);
    } catch (const helmrec::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
