#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "polyq/polynomial.hpp"

namespace polyq {

enum class ObjectiveMode { Exact, Sampled };

struct OptimizerConfig {
    double tolerance = 1e-4;
    int max_iterations = 1000;
    /// Initial poll/trust scale, in parameter units.
    double initial_scale = 0.1;
    ObjectiveMode mode = ObjectiveMode::Exact;
    std::uint64_t shots = 1024;
    /// Scale of the ramp initialization used by train_qaoa.
    double ramp_scale = 1.0;

    void validate() const;
};

enum class TerminationReason { Converged, IterationCap };

std::string to_string(TerminationReason reason);

struct TrainingTrace {
    /// Best-seen objective after each polling cycle; non-increasing.
    std::vector<double> objective_values;
    std::vector<double> final_parameters;
    int iterations = 0; // == objective_values.size()
    TerminationReason reason = TerminationReason::IterationCap;
    double wall_clock_ms = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free coordinate/pattern search. One iteration is a full
/// polling cycle: evaluate +/- delta along every coordinate, move to the
/// best strict improvement, halving delta (down to a floor of `tolerance`)
/// whenever a poll round finds none. Terminates when a full cycle at the
/// floor improves the best-seen objective by less than `tolerance`, or at
/// the iteration cap. Returns best-seen parameters. Deterministic.
TrainingTrace minimize(const Objective& objective, std::span<const double> initial,
                       const OptimizerConfig& config);

struct RampSchedule {
    std::vector<double> gammas;
    std::vector<double> betas;
};

/// Linear annealing ramp over t_k = k/(P+1): gamma_k = scale * t_k / P
/// rising, beta_k = scale * (1 - t_k) / P falling.
RampSchedule ramp_init(std::uint32_t layers, double scale = 1.0);

struct TrainResult {
    std::vector<double> gammas;
    std::vector<double> betas;
    TrainingTrace trace;
};

/// Trains (gamma, beta) against the expectation of h's energy table, either
/// exactly or estimated from `config.shots` samples. In sampled mode
/// evaluation j draws with seed splitmix(master_seed, j), so the optimizer
/// sees one fixed noisy function per master seed.
TrainResult train_qaoa(const SpinPoly& h, std::uint32_t layers,
                       const OptimizerConfig& config, std::uint64_t master_seed);

/// Deterministic per-evaluation reseeding hash (splitmix64 over the pair).
std::uint64_t evaluation_seed(std::uint64_t master_seed, std::uint64_t evaluation_index);

} // namespace polyq
