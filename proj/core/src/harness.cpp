#include "polyq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "polyq/config.hpp"
#include "polyq/parser.hpp"
#include "polyq/simulator.hpp"
#include "polyq/spin.hpp"

namespace polyq {

std::string to_string(Formulation formulation) {
    return formulation == Formulation::Pubo ? "PUBO" : "QUBO";
}

Formulation formulation_from_string(const std::string& text) {
    std::string upper;
    for (char c : text) {
        upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (upper == "PUBO") {
        return Formulation::Pubo;
    }
    if (upper == "QUBO") {
        return Formulation::Qubo;
    }
    throw ConfigError("formulation must be PUBO or QUBO, got '" + text + "'");
}

std::string to_string(GateModel model) {
    return model == GateModel::Ladder ? "ladder" : "native-gadget";
}

GateModel gate_model_from_string(const std::string& text) {
    if (text == "ladder") {
        return GateModel::Ladder;
    }
    if (text == "native-gadget" || text == "native_gadget") {
        return GateModel::NativeGadget;
    }
    throw ConfigError("gate model must be 'ladder' or 'native-gadget', got '" + text + "'");
}

void SweepConfig::validate() const {
    if (objective.empty()) {
        throw ConfigError("objective expression is empty");
    }
    if (domain.empty()) {
        throw ConfigError("domain has no variables");
    }
    DomainSpec spec{domain};
    spec.validate();
    if (formulations.empty() || bit_resolutions.empty() || layer_counts.empty() ||
        seeds.empty()) {
        throw ConfigError("sweep lists must be non-empty");
    }
    for (int m : bit_resolutions) {
        if (m < 0) {
            throw ConfigError("bit resolutions must be >= 0");
        }
    }
    for (int layers : layer_counts) {
        if (layers < 1) {
            throw ConfigError("layer counts must be >= 1");
        }
    }
    if (shots < 1) {
        throw ConfigError("shots must be >= 1");
    }
    optimizer.validate();
    // The objective must parse and reference only declared variables.
    const ContinuousPoly poly = lower(parse(objective));
    for (const std::string& name : poly.variables()) {
        if (spec.find(name) == nullptr) {
            throw ConfigError("objective variable '" + name + "' missing from domain");
        }
    }
}

PipelineArtifacts build_pipeline(const std::string& objective_text, const DomainSpec& spec,
                                 Formulation formulation) {
    PipelineArtifacts artifacts;
    artifacts.objective = lower(parse(objective_text));
    artifacts.discretization = discretize(artifacts.objective, spec);
    if (formulation == Formulation::Qubo) {
        artifacts.quadratization = quadratize(artifacts.discretization.pubo);
    } else {
        artifacts.quadratization.qubo = artifacts.discretization.pubo;
        artifacts.quadratization.num_original_bits =
            artifacts.discretization.pubo.num_bits();
        artifacts.quadratization.num_ancilla = 0;
    }
    artifacts.training_poly = artifacts.quadratization.qubo;
    artifacts.hamiltonian = to_spin(artifacts.training_poly);
    return artifacts;
}

SampleSummary summarize_weighted(std::vector<std::pair<double, std::uint64_t>> values) {
    if (values.empty()) {
        throw InvalidArgument("cannot summarize an empty sample");
    }
    std::sort(values.begin(), values.end());
    std::uint64_t total = 0;
    for (const auto& [value, count] : values) {
        total += count;
    }
    // Value at 0-based position `pos` of the sorted expanded multiset.
    const auto value_at = [&](std::uint64_t pos) {
        std::uint64_t cumulative = 0;
        for (const auto& [value, count] : values) {
            cumulative += count;
            if (pos < cumulative) {
                return value;
            }
        }
        return values.back().first;
    };
    // Type-7 interpolated quantile.
    const auto quantile = [&](double p) {
        const double h = static_cast<double>(total - 1) * p;
        const auto lo = static_cast<std::uint64_t>(std::floor(h));
        const auto hi = static_cast<std::uint64_t>(std::ceil(h));
        const double vlo = value_at(lo);
        const double vhi = value_at(hi);
        return vlo + (h - static_cast<double>(lo)) * (vhi - vlo);
    };
    SampleSummary summary;
    summary.min = values.front().first;
    summary.q1 = quantile(0.25);
    summary.median = quantile(0.5);
    summary.q3 = quantile(0.75);
    summary.max = values.back().first;
    return summary;
}

SampleSummary summarize(std::vector<double> values) {
    std::vector<std::pair<double, std::uint64_t>> weighted;
    weighted.reserve(values.size());
    for (double value : values) {
        weighted.emplace_back(value, 1);
    }
    return summarize_weighted(std::move(weighted));
}

namespace {

DomainSpec domain_at_resolution(const std::vector<VarSpec>& domain, int bit_resolution) {
    DomainSpec spec{domain};
    for (VarSpec& var : spec.vars) {
        var.fraction_bits = bit_resolution;
    }
    return spec;
}

int resolve_workers(const SweepConfig& config, std::size_t points) {
    int workers = config.workers;
    if (const char* env = std::getenv(kWorkersEnvVar)) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || parsed < 1) {
            throw ConfigError(std::string(kWorkersEnvVar) + " must be a positive integer");
        }
        workers = static_cast<int>(parsed);
    }
    if (workers < 1) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) {
            workers = 1;
        }
    }
    return std::max(1, std::min<int>(workers, static_cast<int>(points)));
}

} // namespace

ExperimentRecord run_single(const SweepConfig& config, const ExperimentPoint& point) {
    ExperimentRecord record;
    record.objective = config.objective;
    record.formulation = to_string(point.formulation);
    record.bit_resolution = point.bit_resolution;
    record.layers = point.layers;
    record.seed = point.seed;
    record.gate_model = to_string(config.gate_model);
    record.shots = config.shots;
    try {
        const DomainSpec spec = domain_at_resolution(config.domain, point.bit_resolution);
        const PipelineArtifacts artifacts =
            build_pipeline(config.objective, spec, point.formulation);

        record.qubit_count = artifacts.hamiltonian.num_qubits();
        record.num_ancilla = artifacts.quadratization.num_ancilla;
        record.depth_ladder = depth(build_qaoa(
            artifacts.hamiltonian, static_cast<std::uint32_t>(point.layers),
            GateModel::Ladder));
        record.depth_native_gadget = depth(build_qaoa(
            artifacts.hamiltonian, static_cast<std::uint32_t>(point.layers),
            GateModel::NativeGadget));

        const TrainResult trained =
            train_qaoa(artifacts.hamiltonian, static_cast<std::uint32_t>(point.layers),
                       config.optimizer, point.seed);
        record.iterations = trained.trace.iterations;
        record.termination = to_string(trained.trace.reason);
        record.wall_clock_ms = trained.trace.wall_clock_ms;
        record.gammas = trained.gammas;
        record.betas = trained.betas;

        const StateVector state =
            simulate_fast(artifacts.hamiltonian, trained.gammas, trained.betas);
        const std::vector<double> training_table =
            spin_energy_table(artifacts.hamiltonian);
        record.training_expectation = expectation(state, training_table);

        // Reported metrics drop ancillae: index >> ancilla bits selects the
        // original-bit assignment, whose PUBO energy is f(decode(bits)).
        const std::vector<double> original_table =
            binary_energy_table(artifacts.discretization.pubo);
        const std::uint32_t ancilla_bits = record.num_ancilla;
        double reported = 0.0;
        for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
            reported += std::norm(state.amplitudes[k]) *
                        original_table[k >> ancilla_bits];
        }
        record.reported_expectation = reported;

        const SampleSet samples = sample(state, config.shots, point.seed);
        std::map<double, std::uint64_t> decoded_counts;
        for (const auto& [index, count] : samples.counts) {
            decoded_counts[original_table[index >> ancilla_bits]] += count;
        }
        std::vector<std::pair<double, std::uint64_t>> weighted(decoded_counts.begin(),
                                                               decoded_counts.end());
        record.best_sample_value = weighted.front().first;
        record.sample_summary = summarize_weighted(std::move(weighted));
    } catch (const std::exception& e) {
        record.status = "failed";
        record.error = e.what();
    }
    return record;
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();

    std::vector<ExperimentPoint> points;
    for (Formulation formulation : config.formulations) {
        for (int m : config.bit_resolutions) {
            for (int layers : config.layer_counts) {
                for (std::uint64_t seed : config.seeds) {
                    points.push_back({formulation, m, layers, seed});
                }
            }
        }
    }

    SweepResult result;
    result.records.resize(points.size());
    std::vector<char> done(points.size(), 0);
    std::mutex mutex;
    std::condition_variable record_ready;
    std::size_t next_point = 0;

    const int workers = resolve_workers(config, points.size());
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t index;
                {
                    std::lock_guard<std::mutex> lock(mutex);
                    if (next_point >= points.size()) {
                        return;
                    }
                    index = next_point++;
                }
                ExperimentRecord record = run_single(config, points[index]);
                {
                    std::lock_guard<std::mutex> lock(mutex);
                    result.records[index] = std::move(record);
                    done[index] = 1;
                }
                record_ready.notify_all();
            }
        });
    }

    // Stream records in deterministic point order as they complete.
    std::ofstream ndjson;
    if (!config.output.empty()) {
        const std::filesystem::path path(config.output + ".ndjson");
        if (path.has_parent_path()) {
            std::filesystem::create_directories(path.parent_path());
        }
        ndjson.open(path);
        if (!ndjson) {
            throw ConfigError("cannot open output file '" + path.string() + "'");
        }
        result.ndjson_path = path.string();
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::unique_lock<std::mutex> lock(mutex);
        record_ready.wait(lock, [&] { return done[i] != 0; });
        if (ndjson.is_open()) {
            ndjson << record_to_json_line(result.records[i]) << "\n";
            ndjson.flush();
        }
    }
    for (std::thread& thread : pool) {
        thread.join();
    }

    if (!config.output.empty()) {
        const std::string csv_path = config.output + ".csv";
        std::ofstream csv(csv_path);
        if (!csv) {
            throw ConfigError("cannot open output file '" + csv_path + "'");
        }
        csv << summary_csv(result.records);
        result.csv_path = csv_path;
    }
    return result;
}

BruteForceResult brute_force(const ContinuousPoly& objective, const DomainSpec& spec,
                             Formulation formulation) {
    constexpr double kTol = 1e-9;
    BruteForceResult result;
    const Discretization disc = discretize(objective, spec);
    result.layout = disc.layout;

    if (formulation == Formulation::Qubo) {
        const QuadratizationResult quad = quadratize(disc.pubo);
        result.num_ancilla = quad.num_ancilla;
        result.total_bits = quad.qubo.num_bits();
        const std::vector<double> full = binary_energy_table(quad.qubo);
        const std::size_t block = std::size_t{1} << quad.num_ancilla;
        result.table.resize(std::size_t{1} << disc.pubo.num_bits());
        for (std::size_t k = 0; k < result.table.size(); ++k) {
            double lowest = full[k * block];
            for (std::size_t a = 1; a < block; ++a) {
                lowest = std::min(lowest, full[k * block + a]);
            }
            result.table[k] = lowest;
        }
    } else {
        result.total_bits = disc.pubo.num_bits();
        result.table = binary_energy_table(disc.pubo);
    }

    result.min_value = *std::min_element(result.table.begin(), result.table.end());
    for (std::size_t k = 0; k < result.table.size(); ++k) {
        if (result.table[k] <= result.min_value + kTol) {
            result.argmin.push_back(k);
        }
    }
    return result;
}

} // namespace polyq
