#include "polyq/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "polyq/spin.hpp"

namespace polyq {

namespace {

using cplx = std::complex<double>;

void check_qubit_capacity(std::uint32_t num_qubits) {
    if (num_qubits > kMaxTableQubits) {
        throw CapacityError("statevector over " + std::to_string(num_qubits) +
                            " qubits exceeds the " + std::to_string(kMaxTableQubits) +
                            "-qubit guard");
    }
}

// Stride of qubit q under the qubit-0-is-most-significant convention.
std::size_t qubit_mask(std::uint32_t q, std::uint32_t num_qubits) {
    return std::size_t{1} << (num_qubits - 1 - q);
}

template <typename PairOp>
void for_each_pair(StateVector& state, std::uint32_t qubit, PairOp&& op) {
    const std::size_t mask = qubit_mask(qubit, state.num_qubits);
    const std::size_t size = state.amplitudes.size();
    for (std::size_t base = 0; base < size; ++base) {
        if ((base & mask) == 0) {
            op(state.amplitudes[base], state.amplitudes[base | mask]);
        }
    }
}

void apply_hadamard(StateVector& state, std::uint32_t qubit) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for_each_pair(state, qubit, [](cplx& a0, cplx& a1) {
        const cplx u = a0;
        const cplx v = a1;
        a0 = (u + v) * inv_sqrt2;
        a1 = (u - v) * inv_sqrt2;
    });
}

void apply_rx(StateVector& state, std::uint32_t qubit, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx minus_i_s(0.0, -s);
    for_each_pair(state, qubit, [&](cplx& a0, cplx& a1) {
        const cplx u = a0;
        const cplx v = a1;
        a0 = c * u + minus_i_s * v;
        a1 = minus_i_s * u + c * v;
    });
}

void apply_rz(StateVector& state, std::uint32_t qubit, double theta) {
    const cplx phase0 = std::polar(1.0, -theta / 2.0);
    const cplx phase1 = std::polar(1.0, theta / 2.0);
    for_each_pair(state, qubit, [&](cplx& a0, cplx& a1) {
        a0 *= phase0;
        a1 *= phase1;
    });
}

void apply_cnot(StateVector& state, std::uint32_t control, std::uint32_t target) {
    const std::size_t cmask = qubit_mask(control, state.num_qubits);
    const std::size_t tmask = qubit_mask(target, state.num_qubits);
    const std::size_t size = state.amplitudes.size();
    for (std::size_t idx = 0; idx < size; ++idx) {
        if ((idx & cmask) != 0 && (idx & tmask) == 0) {
            std::swap(state.amplitudes[idx], state.amplitudes[idx | tmask]);
        }
    }
}

// Diagonal action of exp(-i theta/2 * Z_support): each basis state picks up
// the phase of its spin parity over the support.
void apply_phase_gadget(StateVector& state, const std::vector<std::uint32_t>& support,
                        double theta) {
    std::size_t mask = 0;
    for (std::uint32_t q : support) {
        mask |= qubit_mask(q, state.num_qubits);
    }
    const cplx even = std::polar(1.0, -theta / 2.0);
    const cplx odd = std::polar(1.0, theta / 2.0);
    const std::size_t size = state.amplitudes.size();
    for (std::size_t idx = 0; idx < size; ++idx) {
        const bool odd_parity = std::popcount(idx & mask) & 1;
        state.amplitudes[idx] *= odd_parity ? odd : even;
    }
}

} // namespace

StateVector make_basis_state(std::uint32_t num_qubits, std::uint64_t index) {
    check_qubit_capacity(num_qubits);
    StateVector state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(std::size_t{1} << num_qubits, cplx(0.0, 0.0));
    state.amplitudes.at(index) = cplx(1.0, 0.0);
    return state;
}

StateVector make_uniform_state(std::uint32_t num_qubits) {
    check_qubit_capacity(num_qubits);
    StateVector state;
    state.num_qubits = num_qubits;
    const std::size_t size = std::size_t{1} << num_qubits;
    state.amplitudes.assign(size, cplx(1.0 / std::sqrt(static_cast<double>(size)), 0.0));
    return state;
}

double norm(const StateVector& state) {
    double total = 0.0;
    for (const cplx& amp : state.amplitudes) {
        total += std::norm(amp);
    }
    return std::sqrt(total);
}

StateVector simulate_gates(const GateCircuit& circuit) {
    check_qubit_capacity(circuit.width);
    if (!circuit.is_bound()) {
        throw InvalidArgument("circuit has unbound parameters");
    }
    StateVector state = make_basis_state(circuit.width, 0);
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
        case GateKind::H:
            apply_hadamard(state, gate.qubits[0]);
            break;
        case GateKind::RX:
            apply_rx(state, gate.qubits[0], gate.angle.literal_value());
            break;
        case GateKind::RZ:
            apply_rz(state, gate.qubits[0], gate.angle.literal_value());
            break;
        case GateKind::CNOT:
            apply_cnot(state, gate.qubits[0], gate.qubits[1]);
            break;
        case GateKind::PhaseGadget:
            apply_phase_gadget(state, gate.qubits, gate.angle.literal_value());
            break;
        }
    }
    return state;
}

StateVector simulate_fast(const SpinPoly& h, std::span<const double> gammas,
                          std::span<const double> betas) {
    if (gammas.size() != betas.size()) {
        throw DimensionError("gamma and beta vectors differ in length");
    }
    const std::vector<double> energy = spin_energy_table(h);
    StateVector state = make_uniform_state(h.num_qubits());
    const std::size_t size = state.amplitudes.size();
    for (std::size_t layer = 0; layer < gammas.size(); ++layer) {
        const double gamma = gammas[layer];
        for (std::size_t k = 0; k < size; ++k) {
            state.amplitudes[k] *= std::polar(1.0, -gamma * energy[k]);
        }
        const double beta = betas[layer];
        const double c = std::cos(beta);
        const cplx minus_i_s(0.0, -std::sin(beta));
        for (std::uint32_t q = 0; q < state.num_qubits; ++q) {
            for_each_pair(state, q, [&](cplx& a0, cplx& a1) {
                const cplx u = a0;
                const cplx v = a1;
                a0 = c * u + minus_i_s * v;
                a1 = minus_i_s * u + c * v;
            });
        }
    }
    return state;
}

double expectation(const StateVector& state, std::span<const double> energy) {
    if (energy.size() != state.amplitudes.size()) {
        throw DimensionError("energy table size does not match the statevector");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < energy.size(); ++k) {
        total += std::norm(state.amplitudes[k]) * energy[k];
    }
    return total;
}

SampleSet sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw InvalidArgument("shot count must be >= 1");
    }
    std::vector<double> cumulative(state.amplitudes.size());
    double running = 0.0;
    for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
        running += std::norm(state.amplitudes[k]);
        cumulative[k] = running;
    }
    const double total = running;

    std::mt19937_64 rng(seed);
    SampleSet samples;
    samples.shots = shots;
    samples.seed = seed;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        // 53-bit uniform in [0, 1); portable given mt19937_64.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto it =
            std::upper_bound(cumulative.begin(), cumulative.end(), u * total);
        const std::size_t index =
            std::min(static_cast<std::size_t>(it - cumulative.begin()),
                     cumulative.size() - 1);
        ++samples.counts[index];
    }
    return samples;
}

} // namespace polyq
