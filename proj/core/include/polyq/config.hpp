#pragma once

#include <string>
#include <vector>

#include "polyq/harness.hpp"

namespace polyq {

/// Parses a sweep configuration from its JSON text. Schema (see README):
/// objective, domain (array of {name, signed, n, m}), formulation (string
/// or array), sweep {bit_resolution, layers, seeds}, optimizer {tolerance,
/// max_iterations, initial_scale, mode, shots, ramp_scale}, shots,
/// gate_model, output, workers. Raises ConfigError on malformed input.
SweepConfig load_config_json(const std::string& json_text);
SweepConfig load_config_file(const std::string& path);

/// One newline-free JSON object per record; keys are emitted in sorted
/// order so identical records serialize byte-identically.
std::string record_to_json_line(const ExperimentRecord& record);
ExperimentRecord record_from_json_line(const std::string& line);

std::vector<ExperimentRecord> load_records_file(const std::string& path);

/// Boxplot-ready aggregation: one CSV row per (formulation, bit_resolution,
/// layers) group with five-number summaries across seeds.
std::string summary_csv(const std::vector<ExperimentRecord>& records);

} // namespace polyq
