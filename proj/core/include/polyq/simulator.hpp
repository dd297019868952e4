#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "polyq/circuit.hpp"
#include "polyq/polynomial.hpp"

namespace polyq {

/// Dense statevector. Basis index bit convention matches the energy tables:
/// qubit 0 is the most significant index bit.
struct StateVector {
    std::uint32_t num_qubits = 0;
    std::vector<std::complex<double>> amplitudes;
};

StateVector make_basis_state(std::uint32_t num_qubits, std::uint64_t index = 0);
StateVector make_uniform_state(std::uint32_t num_qubits);

double norm(const StateVector& state);

/// Evolves |0...0> through a fully bound gate list. Guarded to 24 qubits.
StateVector simulate_gates(const GateCircuit& circuit);

/// Diagonal fast path: uniform start, then per layer a phase multiply
/// exp(-i gamma_k E[k]) from the spin energy table (constant term included;
/// a global phase) and an RX(2 beta_k) butterfly per qubit.
StateVector simulate_fast(const SpinPoly& h, std::span<const double> gammas,
                          std::span<const double> betas);

/// <E> = sum_k |amp_k|^2 energy[k].
double expectation(const StateVector& state, std::span<const double> energy);

/// Multinomial draw from |amp|^2. `counts` maps basis index to hit count.
/// The generator is std::mt19937_64 (bit-exact across platforms) combined
/// with 53-bit uniform doubles and an inverse-CDF search, so a SampleSet is
/// fully determined by (state, shots, seed).
struct SampleSet {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
};

SampleSet sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

} // namespace polyq
