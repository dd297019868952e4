#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyq/circuit.hpp"
#include "polyq/encoding.hpp"
#include "polyq/optimizer.hpp"
#include "polyq/polynomial.hpp"
#include "polyq/quadratize.hpp"

namespace polyq {

inline constexpr int kRecordSchemaVersion = 1;

/// Environment variable overriding the sweep worker count.
inline constexpr const char* kWorkersEnvVar = "POLYQ_WORKERS";

enum class Formulation { Pubo, Qubo };

std::string to_string(Formulation formulation);
Formulation formulation_from_string(const std::string& text);

std::string to_string(GateModel model);
GateModel gate_model_from_string(const std::string& text);

/// Sweep definition: the Cartesian product of formulation, bit resolution,
/// layer count and seed, over one objective.
struct SweepConfig {
    std::string objective;
    /// Per-variable name/sign/n; fraction bits are supplied per sweep point.
    std::vector<VarSpec> domain;
    std::vector<Formulation> formulations{Formulation::Pubo, Formulation::Qubo};
    std::vector<int> bit_resolutions{0};
    std::vector<int> layer_counts{1};
    std::vector<std::uint64_t> seeds{1};
    OptimizerConfig optimizer;
    std::uint64_t shots = 1024;
    GateModel gate_model = GateModel::Ladder;
    std::string output; // path prefix; records at <output>.ndjson, summary at <output>.csv
    int workers = 0;    // 0 = automatic

    void validate() const;
};

struct ExperimentPoint {
    Formulation formulation = Formulation::Pubo;
    int bit_resolution = 0;
    int layers = 1;
    std::uint64_t seed = 1;
};

/// Five-number summary (type-7 interpolated quartiles).
struct SampleSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

struct ExperimentRecord {
    int schema_version = kRecordSchemaVersion;
    std::string status = "ok"; // "ok" | "failed"
    std::string error;         // diagnostics when failed

    std::string objective;
    std::string formulation;
    int bit_resolution = 0;
    int layers = 0;
    std::uint64_t seed = 0;
    std::string gate_model;
    std::uint64_t shots = 0;

    std::uint32_t qubit_count = 0;
    std::uint32_t num_ancilla = 0;
    int depth_ladder = 0;
    int depth_native_gadget = 0;

    int iterations = 0;
    std::string termination;
    double wall_clock_ms = 0.0;
    std::vector<double> gammas;
    std::vector<double> betas;

    /// Expectation of the trained state against the training table
    /// (penalty-inclusive for QUBO).
    double training_expectation = 0.0;
    /// Expectation of the original objective, ancillae ignored.
    double reported_expectation = 0.0;
    /// Best per-shot decoded objective value.
    double best_sample_value = 0.0;
    /// Five-number summary of the per-shot decoded objective values.
    SampleSummary sample_summary;
};

/// Compiled front half of the pipeline, shared by run_single and the CLI
/// inspection subcommands.
struct PipelineArtifacts {
    ContinuousPoly objective;
    Discretization discretization;
    QuadratizationResult quadratization; // identity (zero ancillae) for PUBO
    BinaryPoly training_poly;            // penalties included for QUBO
    SpinPoly hamiltonian;
};

PipelineArtifacts build_pipeline(const std::string& objective_text, const DomainSpec& spec,
                                 Formulation formulation);

/// Runs the full pipeline for one sweep point: parse, discretize,
/// quadratize (QUBO only), spin translation, circuit synthesis, training,
/// final sampling and decoded-objective metrics. Stage failures come back
/// as a failed record rather than an exception.
ExperimentRecord run_single(const SweepConfig& config, const ExperimentPoint& point);

struct SweepResult {
    std::vector<ExperimentRecord> records;
    std::string ndjson_path;
    std::string csv_path;
};

/// Runs every sweep point (concurrently up to the worker count), streaming
/// records to <output>.ndjson in deterministic point order, then writes the
/// aggregated summary CSV.
SweepResult run_sweep(const SweepConfig& config);

struct BruteForceResult {
    BitLayout layout;
    std::uint32_t num_ancilla = 0;
    std::uint32_t total_bits = 0;
    /// Objective value per original-bit assignment; for QUBO this is the
    /// minimum of the penalized polynomial over the ancillae.
    std::vector<double> table;
    double min_value = 0.0;
    std::vector<std::uint64_t> argmin; // original-bit basis indices
};

/// Exhaustive grid enumeration (the oracle the acceptance tests lean on).
BruteForceResult brute_force(const ContinuousPoly& objective, const DomainSpec& spec,
                             Formulation formulation);

/// Interpolated quartile summary of weighted values (value, multiplicity).
SampleSummary summarize_weighted(std::vector<std::pair<double, std::uint64_t>> values);
SampleSummary summarize(std::vector<double> values);

} // namespace polyq
