#include "polyq/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace polyq {

namespace {

using nlohmann::json;

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::vector<Formulation> parse_formulations(const json& value) {
    std::vector<Formulation> result;
    if (value.is_string()) {
        result.push_back(formulation_from_string(value.get<std::string>()));
    } else if (value.is_array()) {
        for (const auto& item : value) {
            result.push_back(formulation_from_string(item.get<std::string>()));
        }
    } else {
        throw ConfigError("'formulation' must be a string or an array of strings");
    }
    return result;
}

OptimizerConfig parse_optimizer(const json& value) {
    OptimizerConfig config;
    config.tolerance = value.value("tolerance", config.tolerance);
    config.max_iterations = value.value("max_iterations", config.max_iterations);
    config.initial_scale = value.value("initial_scale", config.initial_scale);
    config.shots = value.value("shots", config.shots);
    config.ramp_scale = value.value("ramp_scale", config.ramp_scale);
    const std::string mode = value.value("mode", std::string("exact"));
    if (mode == "exact") {
        config.mode = ObjectiveMode::Exact;
    } else if (mode == "sampled") {
        config.mode = ObjectiveMode::Sampled;
    } else {
        throw ConfigError("optimizer mode must be 'exact' or 'sampled', got '" + mode + "'");
    }
    return config;
}

std::vector<VarSpec> parse_domain(const json& value) {
    if (!value.is_array() || value.empty()) {
        throw ConfigError("'domain' must be a non-empty array of variable entries");
    }
    std::vector<VarSpec> domain;
    for (const auto& entry : value) {
        VarSpec var;
        if (!entry.contains("name")) {
            throw ConfigError("domain entry is missing 'name'");
        }
        var.name = entry.at("name").get<std::string>();
        var.is_signed = entry.value("signed", true);
        var.magnitude_bits = entry.value("n", 1);
        var.fraction_bits = entry.value("m", 0);
        var.validate();
        domain.push_back(std::move(var));
    }
    return domain;
}

} // namespace

SweepConfig load_config_json(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        SweepConfig config;
        if (!root.contains("objective")) {
            throw ConfigError("config is missing 'objective'");
        }
        config.objective = root.at("objective").get<std::string>();
        if (!root.contains("domain")) {
            throw ConfigError("config is missing 'domain'");
        }
        config.domain = parse_domain(root.at("domain"));
        if (root.contains("formulation")) {
            config.formulations = parse_formulations(root.at("formulation"));
        }
        if (root.contains("sweep")) {
            const json& sweep = root.at("sweep");
            if (sweep.contains("bit_resolution")) {
                config.bit_resolutions = sweep.at("bit_resolution").get<std::vector<int>>();
            }
            if (sweep.contains("layers")) {
                config.layer_counts = sweep.at("layers").get<std::vector<int>>();
            }
            if (sweep.contains("seeds")) {
                config.seeds = sweep.at("seeds").get<std::vector<std::uint64_t>>();
            }
        }
        if (root.contains("optimizer")) {
            config.optimizer = parse_optimizer(root.at("optimizer"));
        }
        config.shots = root.value("shots", config.shots);
        if (root.contains("gate_model")) {
            config.gate_model = gate_model_from_string(root.at("gate_model").get<std::string>());
        }
        config.output = root.value("output", std::string());
        config.workers = root.value("workers", 0);
        config.validate();
        return config;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config field: ") + e.what());
    }
}

SweepConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_config_json(buffer.str());
}

std::string record_to_json_line(const ExperimentRecord& record) {
    json j;
    j["schema_version"] = record.schema_version;
    j["status"] = record.status;
    j["error"] = record.error;
    j["objective"] = record.objective;
    j["formulation"] = record.formulation;
    j["bit_resolution"] = record.bit_resolution;
    j["layers"] = record.layers;
    j["seed"] = record.seed;
    j["gate_model"] = record.gate_model;
    j["shots"] = record.shots;
    j["qubit_count"] = record.qubit_count;
    j["num_ancilla"] = record.num_ancilla;
    j["depth_ladder"] = record.depth_ladder;
    j["depth_native_gadget"] = record.depth_native_gadget;
    j["iterations"] = record.iterations;
    j["termination"] = record.termination;
    j["wall_clock_ms"] = record.wall_clock_ms;
    j["gammas"] = record.gammas;
    j["betas"] = record.betas;
    j["training_expectation"] = record.training_expectation;
    j["reported_expectation"] = record.reported_expectation;
    j["best_sample_value"] = record.best_sample_value;
    j["sample_summary"] = {{"min", record.sample_summary.min},
                           {"q1", record.sample_summary.q1},
                           {"median", record.sample_summary.median},
                           {"q3", record.sample_summary.q3},
                           {"max", record.sample_summary.max}};
    return j.dump();
}

ExperimentRecord record_from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("record line is not valid JSON: ") + e.what());
    }
    ExperimentRecord record;
    record.schema_version = j.value("schema_version", 0);
    record.status = j.value("status", std::string("ok"));
    record.error = j.value("error", std::string());
    record.objective = j.value("objective", std::string());
    record.formulation = j.value("formulation", std::string("PUBO"));
    record.bit_resolution = j.value("bit_resolution", 0);
    record.layers = j.value("layers", 0);
    record.seed = j.value("seed", std::uint64_t{0});
    record.gate_model = j.value("gate_model", std::string());
    record.shots = j.value("shots", std::uint64_t{0});
    record.qubit_count = j.value("qubit_count", 0U);
    record.num_ancilla = j.value("num_ancilla", 0U);
    record.depth_ladder = j.value("depth_ladder", 0);
    record.depth_native_gadget = j.value("depth_native_gadget", 0);
    record.iterations = j.value("iterations", 0);
    record.termination = j.value("termination", std::string());
    record.wall_clock_ms = j.value("wall_clock_ms", 0.0);
    record.gammas = j.value("gammas", std::vector<double>());
    record.betas = j.value("betas", std::vector<double>());
    record.training_expectation = j.value("training_expectation", 0.0);
    record.reported_expectation = j.value("reported_expectation", 0.0);
    record.best_sample_value = j.value("best_sample_value", 0.0);
    if (j.contains("sample_summary")) {
        const json& s = j.at("sample_summary");
        record.sample_summary.min = s.value("min", 0.0);
        record.sample_summary.q1 = s.value("q1", 0.0);
        record.sample_summary.median = s.value("median", 0.0);
        record.sample_summary.q3 = s.value("q3", 0.0);
        record.sample_summary.max = s.value("max", 0.0);
    }
    return record;
}

std::vector<ExperimentRecord> load_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open records file '" + path + "'");
    }
    std::vector<ExperimentRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        records.push_back(record_from_json_line(line));
    }
    return records;
}

std::string summary_csv(const std::vector<ExperimentRecord>& records) {
    struct Group {
        std::vector<const ExperimentRecord*> ok;
        std::size_t failed = 0;
    };
    using Key = std::tuple<std::string, int, int>;
    std::vector<Key> order;
    std::map<Key, Group> groups;
    for (const ExperimentRecord& record : records) {
        Key key{record.formulation, record.bit_resolution, record.layers};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            order.push_back(key);
        }
        if (record.status == "ok") {
            it->second.ok.push_back(&record);
        } else {
            ++it->second.failed;
        }
    }

    std::ostringstream out;
    out << "schema_version,formulation,bit_resolution,layers,records,failed,"
           "qubit_count,num_ancilla,depth_ladder,depth_native_gadget";
    const char* metrics[] = {"best_sample", "reported_expectation", "training_expectation",
                             "iterations", "wall_clock_ms"};
    for (const char* metric : metrics) {
        for (const char* stat : {"min", "q1", "median", "q3", "max"}) {
            out << "," << metric << "_" << stat;
        }
    }
    out << "\n";

    for (const Key& key : order) {
        const Group& group = groups.at(key);
        out << kRecordSchemaVersion << "," << std::get<0>(key) << "," << std::get<1>(key)
            << "," << std::get<2>(key) << "," << (group.ok.size() + group.failed) << ","
            << group.failed;
        if (group.ok.empty()) {
            out << ",0,0,0,0";
            for (int i = 0; i < 25; ++i) {
                out << ",";
            }
            out << "\n";
            continue;
        }
        const ExperimentRecord& first = *group.ok.front();
        out << "," << first.qubit_count << "," << first.num_ancilla << ","
            << first.depth_ladder << "," << first.depth_native_gadget;

        const auto emit = [&](auto getter) {
            std::vector<double> values;
            values.reserve(group.ok.size());
            for (const ExperimentRecord* record : group.ok) {
                values.push_back(getter(*record));
            }
            const SampleSummary s = summarize(std::move(values));
            out << "," << format_number(s.min) << "," << format_number(s.q1) << ","
                << format_number(s.median) << "," << format_number(s.q3) << ","
                << format_number(s.max);
        };
        emit([](const ExperimentRecord& r) { return r.best_sample_value; });
        emit([](const ExperimentRecord& r) { return r.reported_expectation; });
        emit([](const ExperimentRecord& r) { return r.training_expectation; });
        emit([](const ExperimentRecord& r) { return static_cast<double>(r.iterations); });
        emit([](const ExperimentRecord& r) { return r.wall_clock_ms; });
        out << "\n";
    }
    return out.str();
}

} // namespace polyq
