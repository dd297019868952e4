#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyq/polynomial.hpp"

namespace polyq {

/// One ancilla introduction: `ancilla` stands in for the product
/// x_{bit_i} * x_{bit_j}, enforced by a penalty of weight `penalty_weight`.
struct Substitution {
    std::uint32_t ancilla = 0;
    std::uint32_t bit_i = 0;
    std::uint32_t bit_j = 0;
    double penalty_weight = 0.0;

    bool operator==(const Substitution&) const = default;
};

struct QuadratizationResult {
    BinaryPoly qubo;
    std::uint32_t num_original_bits = 0;
    std::uint32_t num_ancilla = 0;
    std::vector<Substitution> substitutions;

    std::vector<double> penalty_weights() const;
};

/// Degree-reduces a multilinear polynomial to degree <= 2. Repeatedly picks
/// the bit pair occurring in the most terms of degree >= 3 (ties broken by
/// the lexicographically smallest pair), replaces the pair by a fresh
/// ancilla in those terms, and adds the Rosenberg penalty
/// M * (x_i x_j - 2 (x_i + x_j) z + 3 z) with
/// M = 1 + 2 * sum |c| over the replaced terms, which dominates any energy
/// gain from violating z = x_i x_j regardless of coefficient signs.
/// Soundness: for every assignment of the original bits,
/// min over ancilla assignments of the QUBO equals the input polynomial.
QuadratizationResult quadratize(const BinaryPoly& p);

struct QuadratizationReport {
    bool min_equivalence = false;
    bool argmin_match = false;
    double max_abs_gap = 0.0;
    std::uint64_t states_checked = 0;
    std::string detail;

    bool passed() const noexcept { return min_equivalence && argmin_match; }
};

/// Exhaustive check of the soundness invariant plus agreement of the argmin
/// sets over original bits. Guarded to <= 24 total bits.
QuadratizationReport verify_quadratization(const BinaryPoly& original,
                                           const QuadratizationResult& result);

/// Sampled fallback for instances too large to enumerate: checks, for
/// `samples` random original assignments, that the QUBO at the greedy
/// ancilla chain (each z = product of its pair) reproduces the original
/// value and that `probes` random ancilla perturbations never go lower.
QuadratizationReport verify_quadratization_sampled(const BinaryPoly& original,
                                                   const QuadratizationResult& result,
                                                   std::uint64_t samples,
                                                   std::uint64_t seed,
                                                   int probes = 8);

} // namespace polyq
