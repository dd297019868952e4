#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polyq/polynomial.hpp"

namespace polyq {

enum class GateKind { H, RX, RZ, CNOT, PhaseGadget };

/// Two lowerings of a multi-qubit Z-product rotation: a CNOT ladder around a
/// single RZ, or one native multi-qubit phase gadget.
enum class GateModel { Ladder, NativeGadget };

enum class AngleKind { Literal, Gamma, Beta };

/// Either a literal angle or a symbolic slot `multiplier * family[layer]`.
struct Angle {
    AngleKind kind = AngleKind::Literal;
    double multiplier = 0.0; // the literal value when kind == Literal
    std::uint32_t layer = 0; // 1-based, symbolic slots only

    static Angle literal(double value) { return {AngleKind::Literal, value, 0}; }
    static Angle gamma(std::uint32_t layer, double multiplier) {
        return {AngleKind::Gamma, multiplier, layer};
    }
    static Angle beta(std::uint32_t layer, double multiplier) {
        return {AngleKind::Beta, multiplier, layer};
    }

    bool is_literal() const noexcept { return kind == AngleKind::Literal; }
    double literal_value() const;

    bool operator==(const Angle&) const = default;
};

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<std::uint32_t> qubits; // 1 for H/RX/RZ, 2 for CNOT (control,
                                       // target), sorted support for gadgets
    Angle angle;                       // unused for H and CNOT

    bool operator==(const Gate&) const = default;
};

/// Ordered gate list with a P-layer {gamma_k, beta_k} parameter schema.
struct GateCircuit {
    std::uint32_t width = 0;
    std::uint32_t num_layers = 0;
    std::vector<Gate> gates;

    bool is_bound() const noexcept;

    bool operator==(const GateCircuit&) const = default;
};

/// Synthesizes the QAOA circuit for a diagonal cost Hamiltonian: Hadamards,
/// then per layer k the phase gadget of every spin term (angle 2*c*gamma_k,
/// since RZ(theta) implements exp(-i theta/2 Z)) followed by the mixer
/// RX(2*beta_k) on every qubit. Constant terms contribute only a global
/// phase and are omitted.
GateCircuit build_qaoa(const SpinPoly& h, std::uint32_t layers, GateModel model);

/// Replaces every symbolic angle slot by its literal value.
GateCircuit bind(const GateCircuit& circuit, std::span<const double> gammas,
                 std::span<const double> betas);

/// Greedy as-soon-as-possible layering; a phase gadget occupies its support
/// for 3 layers (one rotation plus the two-operation overhead of its
/// ancilla-mediated implementation).
int depth(const GateCircuit& circuit);

std::uint32_t width(const GateCircuit& circuit);

struct GateCounts {
    std::size_t hadamard = 0;
    std::size_t rx = 0;
    std::size_t rz = 0;
    std::size_t cnot = 0;
    std::size_t phase_gadget = 0;

    std::size_t total() const noexcept { return hadamard + rx + rz + cnot + phase_gadget; }
};

GateCounts count_gates(const GateCircuit& circuit);

std::string to_string(const Angle& angle);
std::string to_string(const Gate& gate);
/// Plain-text listing, one gate per line: kind, operands, angle expression.
std::string to_text(const GateCircuit& circuit);

} // namespace polyq
