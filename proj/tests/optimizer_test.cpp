#include <cmath>

#include "doctest.h"
#include "polyq/encoding.hpp"
#include "polyq/optimizer.hpp"
#include "polyq/parser.hpp"
#include "polyq/simulator.hpp"
#include "polyq/spin.hpp"

using namespace polyq;

TEST_CASE("defaults follow the published protocol") {
    const OptimizerConfig config;
    CHECK(config.tolerance == 1e-4);
    CHECK(config.max_iterations == 1000);
    CHECK(config.initial_scale == 0.1);
}

TEST_CASE("ramp initialization") {
    const RampSchedule p1 = ramp_init(1);
    CHECK(p1.gammas == std::vector<double>{0.5});
    CHECK(p1.betas == std::vector<double>{0.5});

    const RampSchedule p3 = ramp_init(3);
    for (std::size_t i = 1; i < 3; ++i) {
        CHECK(p3.gammas[i] > p3.gammas[i - 1]);
        CHECK(p3.betas[i] < p3.betas[i - 1]);
    }

    const RampSchedule zero = ramp_init(4, 0.0);
    for (double g : zero.gammas) {
        CHECK(g == 0.0);
    }
    for (double b : zero.betas) {
        CHECK(b == 0.0);
    }
}

TEST_CASE("convex bowl converges to the minimizer") {
    const Objective bowl = [](std::span<const double> p) {
        return (p[0] - 1.0) * (p[0] - 1.0) + (p[1] + 2.0) * (p[1] + 2.0);
    };
    const std::vector<double> init{0.0, 0.0};
    const TrainingTrace trace = minimize(bowl, init, OptimizerConfig{});
    CHECK(trace.reason == TerminationReason::Converged);
    CHECK(trace.iterations <= 200);
    CHECK(std::abs(trace.final_parameters[0] - 1.0) < 1e-3);
    CHECK(std::abs(trace.final_parameters[1] + 2.0) < 1e-3);
}

TEST_CASE("iteration cap of one runs exactly one polling cycle") {
    int evaluations = 0;
    const Objective bowl = [&](std::span<const double> p) {
        ++evaluations;
        return p[0] * p[0];
    };
    OptimizerConfig config;
    config.max_iterations = 1;
    const std::vector<double> init{3.0};
    const TrainingTrace trace = minimize(bowl, init, config);
    CHECK(trace.iterations == 1);
    CHECK(trace.reason == TerminationReason::IterationCap);
    CHECK(trace.objective_values.size() == 1);
}

TEST_CASE("constant objective converges immediately") {
    const Objective flat = [](std::span<const double>) { return 4.0; };
    const std::vector<double> init{0.5, -0.5, 1.0};
    const TrainingTrace trace = minimize(flat, init, OptimizerConfig{});
    CHECK(trace.reason == TerminationReason::Converged);
    CHECK(trace.iterations == 1);
    CHECK(trace.final_parameters == init);
}

TEST_CASE("trace of best-seen values is non-increasing") {
    const Objective rosen = [](std::span<const double> p) {
        const double a = p[1] - p[0] * p[0];
        const double b = p[0] - 1.0;
        return 100.0 * a * a + b * b;
    };
    const std::vector<double> init{-1.0, 1.0};
    const TrainingTrace trace = minimize(rosen, init, OptimizerConfig{});
    for (std::size_t i = 1; i < trace.objective_values.size(); ++i) {
        CHECK(trace.objective_values[i] <= trace.objective_values[i - 1]);
    }
    CHECK(trace.iterations <= 1000);
}

TEST_CASE("non-finite objectives abort with a diagnostic") {
    const Objective bad = [](std::span<const double> p) {
        return p[0] > 0.05 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    };
    const std::vector<double> init{0.0};
    CHECK_THROWS_AS(minimize(bad, init, OptimizerConfig{}), OptimizerError);
}

TEST_CASE("looser tolerance never takes more polling cycles") {
    const Objective bowl = [](std::span<const double> p) {
        return p[0] * p[0] + p[1] * p[1];
    };
    const std::vector<double> init{1.0, 1.0};
    OptimizerConfig tight;
    OptimizerConfig loose;
    loose.tolerance = 1e-1;
    const int tight_iters = minimize(bowl, init, tight).iterations;
    const int loose_iters = minimize(bowl, init, loose).iterations;
    CHECK(loose_iters <= tight_iters);
}

TEST_CASE("training a single qubit never ends worse than it started") {
    const SpinPoly h(1, {{{0}, 1.0}});
    OptimizerConfig config;
    const TrainResult result = train_qaoa(h, 1, config, 5);
    const std::vector<double> table = spin_energy_table(h);
    const RampSchedule ramp = ramp_init(1, config.ramp_scale);
    const double initial =
        expectation(simulate_fast(h, ramp.gammas, ramp.betas), table);
    const double trained =
        expectation(simulate_fast(h, result.gammas, result.betas), table);
    CHECK(trained <= initial + 1e-12);
}

TEST_CASE("1D-ST training beats the uniform state") {
    const ContinuousPoly f = lower(parse("0.5*(x^4 - 16*x^2 + 5*x)"));
    const Discretization disc =
        discretize(f, DomainSpec{{VarSpec{"x", true, 2, 0}}});
    const SpinPoly h = to_spin(disc.pubo);
    const std::vector<double> table = spin_energy_table(h);
    const double uniform_expectation =
        expectation(make_uniform_state(h.num_qubits()), table);

    OptimizerConfig config;
    const TrainResult result = train_qaoa(h, 5, config, 1);
    const double trained =
        expectation(simulate_fast(h, result.gammas, result.betas), table);
    CHECK(trained < uniform_expectation);
}

TEST_CASE("training is deterministic per seed in both modes") {
    const SpinPoly h(2, {{{0, 1}, 2.0}, {{0}, -1.0}});
    for (ObjectiveMode mode : {ObjectiveMode::Exact, ObjectiveMode::Sampled}) {
        OptimizerConfig config;
        config.mode = mode;
        config.shots = 256;
        config.max_iterations = 60;
        const TrainResult a = train_qaoa(h, 2, config, 77);
        const TrainResult b = train_qaoa(h, 2, config, 77);
        CHECK(a.gammas == b.gammas);
        CHECK(a.betas == b.betas);
        CHECK(a.trace.objective_values == b.trace.objective_values);
        CHECK(a.trace.iterations == b.trace.iterations);
    }
}

TEST_CASE("exact mode objective equals the simulator expectation") {
    const SpinPoly h(3, {{{0, 1}, 1.0}, {{2}, -2.0}, {{0, 1, 2}, 0.5}});
    OptimizerConfig config;
    config.max_iterations = 5;
    const TrainResult result = train_qaoa(h, 2, config, 9);
    const std::vector<double> table = spin_energy_table(h);
    const double direct =
        expectation(simulate_fast(h, result.gammas, result.betas), table);
    CHECK(result.trace.objective_values.back() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("evaluation seeds are spread by the hash") {
    CHECK(evaluation_seed(1, 0) != evaluation_seed(1, 1));
    CHECK(evaluation_seed(1, 0) != evaluation_seed(2, 0));
    CHECK(evaluation_seed(7, 3) == evaluation_seed(7, 3));
}

TEST_CASE("config validation") {
    OptimizerConfig bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = OptimizerConfig{};
    bad.max_iterations = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
