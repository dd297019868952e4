#include "polyq/quadratize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "polyq/spin.hpp"

namespace polyq {

namespace {

constexpr double kTol = 1e-9;

using BitPair = std::pair<std::uint32_t, std::uint32_t>;

bool term_contains_pair(const IndexSet& indices, BitPair pair) {
    return std::binary_search(indices.begin(), indices.end(), pair.first) &&
           std::binary_search(indices.begin(), indices.end(), pair.second);
}

} // namespace

std::vector<double> QuadratizationResult::penalty_weights() const {
    std::vector<double> weights;
    weights.reserve(substitutions.size());
    for (const Substitution& s : substitutions) {
        weights.push_back(s.penalty_weight);
    }
    return weights;
}

QuadratizationResult quadratize(const BinaryPoly& p) {
    BinaryPoly current = p;
    std::vector<Substitution> substitutions;

    while (true) {
        // Count pair occurrences across terms that still need reduction.
        std::map<BitPair, std::size_t> pair_counts;
        for (const auto& [indices, coefficient] : current.terms()) {
            if (indices.size() < 3) {
                continue;
            }
            for (std::size_t a = 0; a < indices.size(); ++a) {
                for (std::size_t b = a + 1; b < indices.size(); ++b) {
                    ++pair_counts[{indices[a], indices[b]}];
                }
            }
        }
        if (pair_counts.empty()) {
            break;
        }
        // Most frequent pair; map order makes the tie-break the
        // lexicographically smallest pair.
        BitPair best{};
        std::size_t best_count = 0;
        for (const auto& [pair, count] : pair_counts) {
            if (count > best_count) {
                best = pair;
                best_count = count;
            }
        }

        double sum_abs = 0.0;
        for (const auto& [indices, coefficient] : current.terms()) {
            if (indices.size() >= 3 && term_contains_pair(indices, best)) {
                sum_abs += std::abs(coefficient);
            }
        }
        const double penalty = 1.0 + 2.0 * sum_abs;
        const std::uint32_t ancilla = current.num_bits();

        BinaryPoly next(ancilla + 1);
        for (const auto& [indices, coefficient] : current.terms()) {
            if (indices.size() >= 3 && term_contains_pair(indices, best)) {
                IndexSet replaced;
                replaced.reserve(indices.size() - 1);
                for (std::uint32_t index : indices) {
                    if (index != best.first && index != best.second) {
                        replaced.push_back(index);
                    }
                }
                replaced.push_back(ancilla);
                next.add_term(std::move(replaced), coefficient);
            } else {
                next.add_term(indices, coefficient);
            }
        }
        next.add_term({best.first, best.second}, penalty);
        next.add_term({best.first, ancilla}, -2.0 * penalty);
        next.add_term({best.second, ancilla}, -2.0 * penalty);
        next.add_term({ancilla}, 3.0 * penalty);

        substitutions.push_back({ancilla, best.first, best.second, penalty});
        current = std::move(next);
    }

    QuadratizationResult result;
    result.qubo = std::move(current);
    result.num_original_bits = p.num_bits();
    result.num_ancilla = static_cast<std::uint32_t>(substitutions.size());
    result.substitutions = std::move(substitutions);
    return result;
}

QuadratizationReport verify_quadratization(const BinaryPoly& original,
                                           const QuadratizationResult& result) {
    if (result.num_original_bits != original.num_bits()) {
        throw InvalidArgument("quadratization result does not match the original bit count");
    }
    const std::uint32_t total = result.qubo.num_bits();
    const std::uint32_t ancilla = total - original.num_bits();

    const std::vector<double> original_table = binary_energy_table(original);
    const std::vector<double> qubo_table = binary_energy_table(result.qubo);
    const std::size_t block = std::size_t{1} << ancilla;

    QuadratizationReport report;
    report.min_equivalence = true;
    report.states_checked = qubo_table.size();

    // Ancillae occupy the low-order index bits, so the minimization over
    // ancillae is a per-block reduction.
    std::vector<double> block_min(original_table.size());
    for (std::size_t k = 0; k < original_table.size(); ++k) {
        double lowest = qubo_table[k * block];
        for (std::size_t a = 1; a < block; ++a) {
            lowest = std::min(lowest, qubo_table[k * block + a]);
        }
        block_min[k] = lowest;
        const double gap = std::abs(lowest - original_table[k]);
        report.max_abs_gap = std::max(report.max_abs_gap, gap);
        if (gap > kTol && report.detail.empty()) {
            report.detail = "mismatch at original assignment index " + std::to_string(k) +
                            ": qubo min " + std::to_string(lowest) + " vs " +
                            std::to_string(original_table[k]);
        }
    }
    report.min_equivalence = report.max_abs_gap <= kTol;

    const double original_min =
        *std::min_element(original_table.begin(), original_table.end());
    const double qubo_min = *std::min_element(block_min.begin(), block_min.end());
    report.argmin_match = true;
    for (std::size_t k = 0; k < original_table.size(); ++k) {
        const bool in_original = original_table[k] <= original_min + kTol;
        const bool in_qubo = block_min[k] <= qubo_min + kTol;
        if (in_original != in_qubo) {
            report.argmin_match = false;
            if (report.detail.empty()) {
                report.detail = "argmin sets differ at index " + std::to_string(k);
            }
            break;
        }
    }
    return report;
}

QuadratizationReport verify_quadratization_sampled(const BinaryPoly& original,
                                                   const QuadratizationResult& result,
                                                   std::uint64_t samples,
                                                   std::uint64_t seed,
                                                   int probes) {
    if (result.num_original_bits != original.num_bits()) {
        throw InvalidArgument("quadratization result does not match the original bit count");
    }
    const std::uint32_t n_orig = original.num_bits();
    const std::uint32_t total = result.qubo.num_bits();

    std::mt19937_64 rng(seed);
    QuadratizationReport report;
    report.min_equivalence = true;
    report.argmin_match = true; // not applicable in sampled mode
    report.states_checked = samples;

    std::vector<int> bits(total, 0);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::uint32_t i = 0; i < n_orig; ++i) {
            bits[i] = static_cast<int>(rng() & 1);
        }
        // Greedy chain: each ancilla takes the product of its pair, which
        // may reference earlier ancillae.
        for (const Substitution& sub : result.substitutions) {
            bits[sub.ancilla] = bits[sub.bit_i] & bits[sub.bit_j];
        }
        const double expected = original.evaluate(std::span<const int>(bits.data(), n_orig));
        const double at_chain = result.qubo.evaluate(bits);
        const double gap = std::abs(at_chain - expected);
        report.max_abs_gap = std::max(report.max_abs_gap, gap);
        if (gap > kTol) {
            report.min_equivalence = false;
            if (report.detail.empty()) {
                report.detail = "greedy ancilla chain does not reproduce the original value";
            }
        }
        for (int probe = 0; probe < probes; ++probe) {
            std::vector<int> perturbed = bits;
            for (std::uint32_t a = n_orig; a < total; ++a) {
                if (rng() & 1) {
                    perturbed[a] ^= 1;
                }
            }
            if (result.qubo.evaluate(perturbed) < at_chain - kTol) {
                report.min_equivalence = false;
                if (report.detail.empty()) {
                    report.detail = "found an ancilla assignment below the greedy chain";
                }
            }
        }
    }
    return report;
}

} // namespace polyq
