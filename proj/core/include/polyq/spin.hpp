#pragma once

#include <cstdint>
#include <vector>

#include "polyq/polynomial.hpp"

namespace polyq {

/// Largest qubit/bit count for which dense 2^n tables are built.
inline constexpr std::uint32_t kMaxTableQubits = 24;

/// Binary-to-spin translation under x_i = (1 - s_i)/2, so a measured bit 1
/// corresponds to sigma-z eigenvalue -1. For all bit vectors b and spins
/// s_i = 1 - 2 b_i: evaluate(to_spin(p), s) == evaluate(p, b) exactly.
SpinPoly to_spin(const BinaryPoly& p);

/// Inverse translation under s_i = 1 - 2 x_i; to_binary(to_spin(p)) == p.
BinaryPoly to_binary(const SpinPoly& h);

/// Dense diagonal of the cost Hamiltonian: entry k equals evaluate(h, s)
/// with s_i = 1 - 2 * bit_i(k), where bit 0 of the index is the most
/// significant position. Fast Walsh-Hadamard transform, O(n 2^n).
std::vector<double> spin_energy_table(const SpinPoly& h);

/// Dense table of a BinaryPoly over all bit assignments, same index
/// convention. Subset-sum (zeta) transform, O(n 2^n).
std::vector<double> binary_energy_table(const BinaryPoly& p);

/// Index mask of a term's support under the qubit-0-is-most-significant
/// convention.
std::uint64_t support_mask(const IndexSet& indices, std::uint32_t num_bits);

} // namespace polyq
