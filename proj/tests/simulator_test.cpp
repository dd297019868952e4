#include <cmath>
#include <random>

#include "doctest.h"
#include "polyq/encoding.hpp"
#include "polyq/parser.hpp"
#include "polyq/simulator.hpp"
#include "polyq/spin.hpp"

using namespace polyq;

namespace {

SpinPoly random_spin(std::mt19937_64& rng, std::uint32_t qubits, int terms) {
    SpinPoly h(qubits);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    for (int t = 0; t < terms; ++t) {
        IndexSet support;
        for (std::uint32_t i = 0; i < qubits; ++i) {
            if (rng() & 1) {
                support.push_back(i);
            }
        }
        h.add_term(std::move(support), coeff(rng));
    }
    return h;
}

// simulate_gates omits constant spin terms (pure global phase); align it
// with the fast path by multiplying in the analytically known phase
// exp(-i gamma_k c0) per layer before comparing.
double aligned_distance(const StateVector& gate_path, const StateVector& fast_path,
                        double constant, std::span<const double> gammas) {
    double phase = 0.0;
    for (double gamma : gammas) {
        phase -= gamma * constant;
    }
    const std::complex<double> correction = std::polar(1.0, phase);
    double worst = 0.0;
    for (std::size_t k = 0; k < gate_path.amplitudes.size(); ++k) {
        worst = std::max(worst,
                         std::abs(gate_path.amplitudes[k] * correction -
                                  fast_path.amplitudes[k]));
    }
    return worst;
}

} // namespace

TEST_CASE("Hadamard on |0>") {
    GateCircuit circuit;
    circuit.width = 1;
    circuit.gates = {{GateKind::H, {0}, Angle::literal(0.0)}};
    const StateVector state = simulate_gates(circuit);
    CHECK(std::abs(state.amplitudes[0] - std::complex<double>(M_SQRT1_2, 0.0)) < 1e-12);
    CHECK(std::abs(state.amplitudes[1] - std::complex<double>(M_SQRT1_2, 0.0)) < 1e-12);
}

TEST_CASE("gamma = 0 leaves the uniform distribution untouched") {
    const SpinPoly h(3, {{{0, 1}, 2.0}, {{2}, -1.0}});
    const GateCircuit circuit = build_qaoa(h, 1, GateModel::Ladder);
    const std::vector<double> gammas{0.0};
    const std::vector<double> betas{0.37};
    const StateVector state = simulate_gates(bind(circuit, gammas, betas));
    for (const auto& amp : state.amplitudes) {
        CHECK(std::norm(amp) == doctest::Approx(1.0 / 8.0).epsilon(1e-9));
    }
}

TEST_CASE("beta = 0 keeps probabilities uniform in the fast path") {
    const SpinPoly h(4, {{{0, 1, 2}, 1.0}, {{3}, 2.0}});
    const std::vector<double> gammas{0.81, -0.33};
    const std::vector<double> betas{0.0, 0.0};
    const StateVector state = simulate_fast(h, gammas, betas);
    for (const auto& amp : state.amplitudes) {
        CHECK(std::norm(amp) == doctest::Approx(1.0 / 16.0).epsilon(1e-9));
    }
}

TEST_CASE("gate path and fast path agree on random instances") {
    std::mt19937_64 rng(20240903);
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    std::uniform_int_distribution<std::uint32_t> qubit_count(1, 6);
    std::uniform_int_distribution<int> layer_count(1, 3);
    for (int round = 0; round < 25; ++round) {
        const std::uint32_t n = qubit_count(rng);
        const SpinPoly h = random_spin(rng, n, 5);
        const int layers = layer_count(rng);
        std::vector<double> gammas(layers);
        std::vector<double> betas(layers);
        for (int i = 0; i < layers; ++i) {
            gammas[i] = angle(rng);
            betas[i] = angle(rng);
        }
        const StateVector fast = simulate_fast(h, gammas, betas);
        for (GateModel model : {GateModel::Ladder, GateModel::NativeGadget}) {
            const GateCircuit circuit =
                bind(build_qaoa(h, static_cast<std::uint32_t>(layers), model), gammas,
                     betas);
            const StateVector gate = simulate_gates(circuit);
            CHECK(aligned_distance(gate, fast, h.constant_term(), gammas) < 1e-9);
        }
    }
}

TEST_CASE("gadgets act diagonally with the spin parity phase") {
    // A ladder or native gadget applied to |x> multiplies its amplitude by
    // exp(-i theta/2 * prod_{i in T}(1 - 2 x_i)). Basis states are prepared
    // with X = H RZ(pi) H, which carries a known global phase of -i each.
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const SpinPoly term(3, {{{0, 1, 2}, 1.0}});
    const std::vector<double> table = spin_energy_table(term);
    for (int round = 0; round < 8; ++round) {
        const double theta = angle(rng);
        for (const bool native : {false, true}) {
            for (std::uint64_t basis = 0; basis < 8; ++basis) {
                GateCircuit circuit;
                circuit.width = 3;
                int x_count = 0;
                for (std::uint32_t q = 0; q < 3; ++q) {
                    if ((basis >> (2 - q)) & 1) {
                        circuit.gates.push_back({GateKind::H, {q}, Angle::literal(0.0)});
                        circuit.gates.push_back({GateKind::RZ, {q}, Angle::literal(M_PI)});
                        circuit.gates.push_back({GateKind::H, {q}, Angle::literal(0.0)});
                        ++x_count;
                    }
                }
                if (native) {
                    circuit.gates.push_back(
                        {GateKind::PhaseGadget, {0, 1, 2}, Angle::literal(theta)});
                } else {
                    circuit.gates.push_back({GateKind::CNOT, {0, 1}, Angle::literal(0.0)});
                    circuit.gates.push_back({GateKind::CNOT, {1, 2}, Angle::literal(0.0)});
                    circuit.gates.push_back({GateKind::RZ, {2}, Angle::literal(theta)});
                    circuit.gates.push_back({GateKind::CNOT, {1, 2}, Angle::literal(0.0)});
                    circuit.gates.push_back({GateKind::CNOT, {0, 1}, Angle::literal(0.0)});
                }
                const StateVector out = simulate_gates(circuit);
                std::complex<double> expected = std::polar(1.0, -theta / 2.0 * table[basis]);
                for (int i = 0; i < x_count; ++i) {
                    expected *= std::complex<double>(0.0, -1.0);
                }
                CHECK(std::abs(out.amplitudes[basis] - expected) < 1e-9);
                for (std::uint64_t k = 0; k < 8; ++k) {
                    if (k != basis) {
                        CHECK(std::abs(out.amplitudes[k]) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("expectation against the energy table") {
    const ContinuousPoly f = lower(parse("0.5*(x^4 - 16*x^2 + 5*x)"));
    const Discretization disc =
        discretize(f, DomainSpec{{VarSpec{"x", true, 2, 0}}});
    const SpinPoly h = to_spin(disc.pubo);
    const std::vector<double> table = spin_energy_table(h);

    const StateVector uniform = make_uniform_state(3);
    // mean of the eight grid energies, +/-0 both decoding to 0
    CHECK(expectation(uniform, table) == doctest::Approx(-15.75));

    const StateVector basis = make_basis_state(3, 5);
    CHECK(expectation(basis, table) == doctest::Approx(table[5]));

    const std::vector<double> constant(8, 2.5);
    CHECK(expectation(uniform, constant) == doctest::Approx(2.5));
    CHECK(expectation(basis, constant) == doctest::Approx(2.5));
}

TEST_CASE("norm stays 1 through deep circuits") {
    std::mt19937_64 rng(321);
    const SpinPoly h = random_spin(rng, 5, 6);
    const std::vector<double> gammas{0.4, -0.2, 0.9};
    const std::vector<double> betas{0.1, 0.5, -0.7};
    const GateCircuit circuit =
        bind(build_qaoa(h, 3, GateModel::Ladder), gammas, betas);
    const StateVector state = simulate_gates(circuit);
    CHECK(norm(state) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(norm(simulate_fast(h, gammas, betas)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sampling a basis state concentrates all shots") {
    const StateVector basis = make_basis_state(3, 6);
    const SampleSet samples = sample(basis, 500, 42);
    REQUIRE(samples.counts.size() == 1);
    CHECK(samples.counts.at(6) == 500);
}

TEST_CASE("uniform sampling stays within 5 sigma per index") {
    const StateVector uniform = make_uniform_state(3);
    const std::uint64_t shots = 8000;
    const SampleSet samples = sample(uniform, shots, 7);
    const double expected = 1000.0;
    const double sigma = std::sqrt(8000.0 * (1.0 / 8.0) * (7.0 / 8.0));
    for (std::uint64_t index = 0; index < 8; ++index) {
        const auto it = samples.counts.find(index);
        REQUIRE(it != samples.counts.end());
        CHECK(std::abs(static_cast<double>(it->second) - expected) < 5.0 * sigma);
    }
}

TEST_CASE("sampling is deterministic per seed") {
    const SpinPoly h(4, {{{0, 2}, 1.0}, {{1, 3}, -0.5}});
    const std::vector<double> gammas{0.3};
    const std::vector<double> betas{0.6};
    const StateVector state = simulate_fast(h, gammas, betas);
    const SampleSet a = sample(state, 1024, 99);
    const SampleSet b = sample(state, 1024, 99);
    CHECK(a.counts == b.counts);
    const SampleSet c = sample(state, 1024, 100);
    CHECK(a.counts != c.counts);
}

TEST_CASE("simulation guards") {
    const SpinPoly h(1, {{{0}, 1.0}});
    const GateCircuit symbolic = build_qaoa(h, 1, GateModel::Ladder);
    CHECK_THROWS_AS(simulate_gates(symbolic), InvalidArgument);
    GateCircuit oversized;
    oversized.width = 25;
    CHECK_THROWS_AS(simulate_gates(oversized), CapacityError);
}
