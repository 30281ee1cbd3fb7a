#include "helmrec/pso.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace helmrec {

Swarm::Swarm(const PsoConfig& config, int dim, ObjectiveFn objective)
    : config_(config), dim_(dim), objective_(std::move(objective)), rng_(config.seed) {
    if (dim < 1) throw std::invalid_argument("Swarm: dimension must be >= 1");
    if (config.swarm_size < 1) throw std::invalid_argument("Swarm: swarm size must be >= 1");
    if (!(config.lb < config.ub)) throw std::invalid_argument("Swarm: requires lb < ub");

    const int n = config.swarm_size;
    positions_.resize(dim_, n);
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d < dim_; ++d) positions_(d, i) = rng_.uniform(config.lb, config.ub);
    }
    velocities_ = Eigen::MatrixXd::Zero(dim_, n);
    pbest_positions_ = positions_;

    current_values_.resize(n);
    for (int i = 0; i < n; ++i) current_values_[i] = evaluate(i);
    pbest_values_ = current_values_;

    int best = 0;
    for (int i = 1; i < n; ++i) {
        if (pbest_values_[i] < pbest_values_[best]) best = i;
    }
    best_position_ = pbest_positions_.col(best);
    best_value_ = pbest_values_[best];
}

double Swarm::evaluate(int particle) {
    ++evaluations_;
    try {
        return objective_(std::span<const double>(positions_.col(particle).data(), dim_));
    } catch (const std::exception& e) {
        throw std::runtime_error("PSO objective evaluation failed at iteration " +
                                 std::to_string(iteration_) + ", particle " +
                                 std::to_string(particle) + ": " + e.what());
    }
}

void Swarm::step() {
    const int n = config_.swarm_size;
    ++iteration_;

    // Particles are processed strictly in index order and see the bests
    // already updated by lower-index particles of the same sweep, exactly
    // as in the sequential update loop of the reference method. Keeping the
    // sweep sequential is what makes runs bit-reproducible.
    for (int i = 0; i < n; ++i) {
        double r1 = 0.0, r2 = 0.0;
        if (!config_.per_component_random) {
            r1 = rng_.uniform01();
            r2 = rng_.uniform01();
        }
        for (int d = 0; d < dim_; ++d) {
            if (config_.per_component_random) {
                r1 = rng_.uniform01();
                r2 = rng_.uniform01();
            }
            double v = velocity_update(config_.omega, config_.c1, config_.c2, r1, r2,
                                       velocities_(d, i), positions_(d, i),
                                       pbest_positions_(d, i), best_position_[d]);
            double x = positions_(d, i) + v;
            if (x < config_.lb) {
                x = config_.lb;
                v = 0.0;
            } else if (x > config_.ub) {
                x = config_.ub;
                v = 0.0;
            }
            velocities_(d, i) = v;
            positions_(d, i) = x;
        }

        const double value = evaluate(i);
        current_values_[i] = value;
        // strict inequality keeps the incumbent on ties
        if (value < pbest_values_[i]) {
            pbest_values_[i] = value;
            pbest_positions_.col(i) = positions_.col(i);
        }
        if (value < best_value_) {
            best_value_ = value;
            best_position_ = positions_.col(i);
        }
    }
}

std::vector<double> Swarm::best_position() const {
    return {best_position_.data(), best_position_.data() + dim_};
}

double Swarm::mean_cost() const { return current_values_.mean(); }

PsoResult run_pso(const PsoConfig& config, int dim, const ObjectiveFn& objective) {
    const auto start = std::chrono::steady_clock::now();
    Swarm swarm(config, dim, objective);

    PsoResult result;
    auto record = [&result, &swarm](int iter) {
        result.trace.rows.push_back({iter, swarm.best_value(), swarm.mean_cost()});
        result.trace.best_positions.push_back(swarm.best_position());
    };
    record(0);

    for (int t = 1; t <= config.max_iter; ++t) {
        const double previous_best = swarm.best_value();
        swarm.step();
        record(t);
        if (config.tolerance > 0.0 && std::abs(swarm.best_value() - previous_best) < config.tolerance) {
            break;
        }
    }

    result.best_position = swarm.best_position();
    result.best_value = swarm.best_value();
    result.trace.evaluations = swarm.evaluations();
    result.trace.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace helmrec
