#include "polyq/optimizer.hpp"

#include <chrono>
#include <cmath>

#include "polyq/simulator.hpp"
#include "polyq/spin.hpp"

namespace polyq {

namespace {

double checked_eval(const Objective& objective, std::span<const double> params) {
    const double value = objective(params);
    if (!std::isfinite(value)) {
        std::string where;
        for (double p : params) {
            where += (where.empty() ? "" : ", ") + std::to_string(p);
        }
        throw OptimizerError("objective returned a non-finite value at (" + where + ")");
    }
    return value;
}

} // namespace

void OptimizerConfig::validate() const {
    if (tolerance <= 0.0) {
        throw ConfigError("optimizer tolerance must be > 0");
    }
    if (max_iterations < 1) {
        throw ConfigError("optimizer max_iterations must be >= 1");
    }
    if (initial_scale <= 0.0) {
        throw ConfigError("optimizer initial_scale must be > 0");
    }
}

std::string to_string(TerminationReason reason) {
    return reason == TerminationReason::Converged ? "converged" : "cap";
}

TrainingTrace minimize(const Objective& objective, std::span<const double> initial,
                       const OptimizerConfig& config) {
    config.validate();
    if (initial.empty()) {
        throw InvalidArgument("minimize needs at least one parameter");
    }
    const auto start_time = std::chrono::steady_clock::now();

    const std::size_t n = initial.size();
    std::vector<double> incumbent(initial.begin(), initial.end());
    double incumbent_value = checked_eval(objective, incumbent);

    double delta = config.initial_scale;
    const double floor = config.tolerance;

    TrainingTrace trace;
    trace.reason = TerminationReason::IterationCap;

    std::vector<double> candidate(n);
    for (int iteration = 0; iteration < config.max_iterations; ++iteration) {
        const double before = incumbent_value;
        bool at_floor = false;

        // One polling cycle: poll every +/- coordinate direction at the
        // current scale, refining the scale until a point improves or the
        // floor is exhausted.
        while (true) {
            double best_value = incumbent_value;
            std::size_t best_coord = n;
            double best_step = 0.0;
            for (std::size_t d = 0; d < n; ++d) {
                for (const double sign : {1.0, -1.0}) {
                    candidate = incumbent;
                    candidate[d] += sign * delta;
                    const double value = checked_eval(objective, candidate);
                    if (value < best_value) {
                        best_value = value;
                        best_coord = d;
                        best_step = sign * delta;
                    }
                }
            }
            if (best_coord < n) {
                incumbent[best_coord] += best_step;
                incumbent_value = best_value;
                break;
            }
            if (delta / 2.0 >= floor) {
                delta /= 2.0;
            } else {
                at_floor = true;
                break;
            }
        }
        at_floor = at_floor || delta / 2.0 < floor;

        trace.objective_values.push_back(incumbent_value);
        if (at_floor && before - incumbent_value < config.tolerance) {
            trace.reason = TerminationReason::Converged;
            break;
        }
    }

    trace.iterations = static_cast<int>(trace.objective_values.size());
    trace.final_parameters = std::move(incumbent);
    trace.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start_time)
            .count();
    return trace;
}

RampSchedule ramp_init(std::uint32_t layers, double scale) {
    if (layers < 1) {
        throw InvalidArgument("ramp_init needs at least one layer");
    }
    RampSchedule schedule;
    schedule.gammas.reserve(layers);
    schedule.betas.reserve(layers);
    const double p = static_cast<double>(layers);
    for (std::uint32_t k = 1; k <= layers; ++k) {
        const double t = static_cast<double>(k) / (p + 1.0);
        schedule.gammas.push_back(scale * t / p);
        schedule.betas.push_back(scale * (1.0 - t) / p);
    }
    return schedule;
}

std::uint64_t evaluation_seed(std::uint64_t master_seed, std::uint64_t evaluation_index) {
    // splitmix64 over the combined pair.
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (evaluation_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TrainResult train_qaoa(const SpinPoly& h, std::uint32_t layers,
                       const OptimizerConfig& config, std::uint64_t master_seed) {
    config.validate();
    const std::vector<double> energy = spin_energy_table(h);

    std::uint64_t evaluation_index = 0;
    const Objective objective = [&](std::span<const double> params) {
        const std::span<const double> gammas = params.subspan(0, layers);
        const std::span<const double> betas = params.subspan(layers, layers);
        const StateVector state = simulate_fast(h, gammas, betas);
        if (config.mode == ObjectiveMode::Exact) {
            return expectation(state, energy);
        }
        const std::uint64_t seed = evaluation_seed(master_seed, evaluation_index++);
        const SampleSet samples = sample(state, config.shots, seed);
        double total = 0.0;
        for (const auto& [index, count] : samples.counts) {
            total += static_cast<double>(count) * energy[index];
        }
        return total / static_cast<double>(config.shots);
    };

    const RampSchedule ramp = ramp_init(layers, config.ramp_scale);
    std::vector<double> initial;
    initial.reserve(2 * layers);
    initial.insert(initial.end(), ramp.gammas.begin(), ramp.gammas.end());
    initial.insert(initial.end(), ramp.betas.begin(), ramp.betas.end());

    TrainingTrace trace = minimize(objective, initial, config);

    TrainResult result;
    result.gammas.assign(trace.final_parameters.begin(),
                         trace.final_parameters.begin() + layers);
    result.betas.assign(trace.final_parameters.begin() + layers,
                        trace.final_parameters.end());
    result.trace = std::move(trace);
    return result;
}

} // namespace polyq
