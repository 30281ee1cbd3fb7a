#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmrec/pso.hpp"

namespace helmrec {

// Malformed experiment configuration; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Declarative experiment description, parsed from an INI-style file with
 * `key = value` lines inside [section] blocks. Unknown sections or keys are
 * rejected. See README for the full schema.
 */
struct ExperimentConfig {
    // [problem]
    std::string case_name = "square";        // square | disc
    std::string formulation = "dirichlet";   // dirichlet | neumann
    int mesh_n = 0;                          // 0 -> case default (32 square, 64 disc)
    int degree = 5;
    std::string basis = "chebyshev";         // chebyshev | monomial
    double alpha = 1e-8;
    bool alpha_explicit = false;
    std::string regularizer = "l2h1";        // l2 | l2h1

    // [pso]
    PsoConfig pso;

    // [noise]
    std::vector<double> noise_levels = {0.0, 0.01, 0.02, 0.03};
    std::vector<std::uint64_t> noise_seeds = {1, 2, 3, 4, 5};

    // [sweep]
    std::vector<double> etas = {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};

    // [output]
    std::string out_dir = "out";

    int threads = 1;  // CLI flag, not a config key

    int effective_mesh_n() const;
    void validate() const;  // throws ConfigError on out-of-range values
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// Stable key/value view of every effective setting, echoed into summary
// files so no default stays hidden.
std::vector<std::pair<std::string, std::string>> effective_config(const ExperimentConfig& config);

}  // namespace helmrec
