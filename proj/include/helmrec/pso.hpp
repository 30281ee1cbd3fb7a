#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "helmrec/rng.hpp"

namespace helmrec {

struct PsoConfig {
    int swarm_size = 60;
    double c1 = 1.5;  // cognitive acceleration
    double c2 = 1.5;  // social acceleration
    double omega = 0.5;
    int max_iter = 200;
    double lb = -7.0;
    double ub = 7.0;
    double tolerance = 0.0;  // stop when |J(p_g) - J(p_g) previous| < tolerance; 0 disables
    std::uint64_t seed = 1;
    bool per_component_random = false;  // draw r1, r2 per coordinate instead of per particle
};

struct PsoTraceRow {
    int iter = 0;
    double best_cost = 0.0;
    double mean_cost = 0.0;
};

struct PsoTrace {
    std::vector<PsoTraceRow> rows;  // rows[0] is the post-initialization state
    std::vector<std::vector<double>> best_positions;
    long evaluations = 0;
    double wall_seconds = 0.0;
};

struct PsoResult {
    std::vector<double> best_position;
    double best_value = 0.0;
    PsoTrace trace;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

// Scalar velocity rule: inertia plus cognitive and social attraction.
inline double velocity_update(double omega, double c1, double c2, double r1, double r2, double v,
                              double x, double personal_best, double global_best) {
    return omega * v + c1 * r1 * (personal_best - x) + c2 * r2 * (global_best - x);
}

/**
 * Global-best particle swarm over a coordinate box.
 *
 * Particles are updated one at a time in index order; each particle is
 * evaluated right after it moves and the personal/global bests are updated
 * before the next particle's velocity draw, so improvements propagate
 * within the sweep. Runs are bit-reproducible for a fixed (config, seed,
 * objective). Velocities start at zero, positions uniform in the box;
 * positions are clamped back into the box with the clamped velocity
 * component zeroed.
 */
class Swarm {
public:
    Swarm(const PsoConfig& config, int dim, ObjectiveFn objective);

    // One full sweep over the swarm.
    void step();

    int iteration() const { return iteration_; }
    long evaluations() const { return evaluations_; }
    double best_value() const { return best_value_; }
    std::vector<double> best_position() const;
    double mean_cost() const;

    const Eigen::MatrixXd& positions() const { return positions_; }   // dim x N
    const Eigen::MatrixXd& velocities() const { return velocities_; }
    const Eigen::VectorXd& personal_best_values() const { return pbest_values_; }

private:
    double evaluate(int particle);

    PsoConfig config_;
    int dim_;
    ObjectiveFn objective_;
    Rng rng_;
    int iteration_ = 0;
    long evaluations_ = 0;
    Eigen::MatrixXd positions_;
    Eigen::MatrixXd velocities_;
    Eigen::MatrixXd pbest_positions_;
    Eigen::VectorXd pbest_values_;
    Eigen::VectorXd current_values_;
    Eigen::VectorXd best_position_;
    double best_value_ = 0.0;
};

// Full optimization loop with convergence tracing.
PsoResult run_pso(const PsoConfig& config, int dim, const ObjectiveFn& objective);

}  // namespace helmrec
