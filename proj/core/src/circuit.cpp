#include "polyq/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace polyq {

double Angle::literal_value() const {
    if (!is_literal()) {
        throw InvalidArgument("angle is symbolic; bind the circuit first");
    }
    return multiplier;
}

bool GateCircuit::is_bound() const noexcept {
    return std::all_of(gates.begin(), gates.end(),
                       [](const Gate& g) { return g.angle.is_literal(); });
}

GateCircuit build_qaoa(const SpinPoly& h, std::uint32_t layers, GateModel model) {
    if (layers < 1) {
        throw InvalidArgument("QAOA needs at least one layer");
    }
    if (h.num_qubits() < 1) {
        throw InvalidArgument("cost Hamiltonian must act on at least one qubit");
    }
    GateCircuit circuit;
    circuit.width = h.num_qubits();
    circuit.num_layers = layers;

    for (std::uint32_t q = 0; q < circuit.width; ++q) {
        circuit.gates.push_back({GateKind::H, {q}, Angle::literal(0.0)});
    }
    for (std::uint32_t layer = 1; layer <= layers; ++layer) {
        for (const auto& [support, coefficient] : h.terms()) {
            if (support.empty()) {
                continue; // global phase
            }
            const Angle angle = Angle::gamma(layer, 2.0 * coefficient);
            if (support.size() == 1) {
                circuit.gates.push_back({GateKind::RZ, {support[0]}, angle});
            } else if (model == GateModel::NativeGadget) {
                circuit.gates.push_back({GateKind::PhaseGadget, support, angle});
            } else {
                // CNOT ladder: parity onto the highest index, rotate, undo.
                for (std::size_t i = 0; i + 1 < support.size(); ++i) {
                    circuit.gates.push_back(
                        {GateKind::CNOT, {support[i], support[i + 1]}, Angle::literal(0.0)});
                }
                circuit.gates.push_back({GateKind::RZ, {support.back()}, angle});
                for (std::size_t i = support.size() - 1; i-- > 0;) {
                    circuit.gates.push_back(
                        {GateKind::CNOT, {support[i], support[i + 1]}, Angle::literal(0.0)});
                }
            }
        }
        for (std::uint32_t q = 0; q < circuit.width; ++q) {
            circuit.gates.push_back({GateKind::RX, {q}, Angle::beta(layer, 2.0)});
        }
    }
    return circuit;
}

GateCircuit bind(const GateCircuit& circuit, std::span<const double> gammas,
                 std::span<const double> betas) {
    if (gammas.size() != circuit.num_layers || betas.size() != circuit.num_layers) {
        throw DimensionError("expected " + std::to_string(circuit.num_layers) +
                             " gamma and beta values");
    }
    GateCircuit bound = circuit;
    for (Gate& gate : bound.gates) {
        switch (gate.angle.kind) {
        case AngleKind::Literal:
            break;
        case AngleKind::Gamma:
            gate.angle = Angle::literal(gate.angle.multiplier * gammas[gate.angle.layer - 1]);
            break;
        case AngleKind::Beta:
            gate.angle = Angle::literal(gate.angle.multiplier * betas[gate.angle.layer - 1]);
            break;
        }
    }
    return bound;
}

int depth(const GateCircuit& circuit) {
    std::vector<int> busy_until(circuit.width, 0);
    int depth = 0;
    for (const Gate& gate : circuit.gates) {
        const int duration = gate.kind == GateKind::PhaseGadget ? 3 : 1;
        int start = 0;
        for (std::uint32_t q : gate.qubits) {
            start = std::max(start, busy_until[q]);
        }
        const int finish = start + duration;
        for (std::uint32_t q : gate.qubits) {
            busy_until[q] = finish;
        }
        depth = std::max(depth, finish);
    }
    return depth;
}

std::uint32_t width(const GateCircuit& circuit) {
    return circuit.width;
}

GateCounts count_gates(const GateCircuit& circuit) {
    GateCounts counts;
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
        case GateKind::H: ++counts.hadamard; break;
        case GateKind::RX: ++counts.rx; break;
        case GateKind::RZ: ++counts.rz; break;
        case GateKind::CNOT: ++counts.cnot; break;
        case GateKind::PhaseGadget: ++counts.phase_gadget; break;
        }
    }
    return counts;
}

std::string to_string(const Angle& angle) {
    std::ostringstream out;
    out.precision(12);
    switch (angle.kind) {
    case AngleKind::Literal:
        out << angle.multiplier;
        break;
    case AngleKind::Gamma:
        out << angle.multiplier << "*gamma" << angle.layer;
        break;
    case AngleKind::Beta:
        out << angle.multiplier << "*beta" << angle.layer;
        break;
    }
    return out.str();
}

std::string to_string(const Gate& gate) {
    std::ostringstream out;
    switch (gate.kind) {
    case GateKind::H: out << "H"; break;
    case GateKind::RX: out << "RX"; break;
    case GateKind::RZ: out << "RZ"; break;
    case GateKind::CNOT: out << "CNOT"; break;
    case GateKind::PhaseGadget: out << "PHASE"; break;
    }
    for (std::uint32_t q : gate.qubits) {
        out << " " << q;
    }
    if (gate.kind != GateKind::H && gate.kind != GateKind::CNOT) {
        out << " " << to_string(gate.angle);
    }
    return out.str();
}

std::string to_text(const GateCircuit& circuit) {
    std::ostringstream out;
    for (const Gate& gate : circuit.gates) {
        out << to_string(gate) << "\n";
    }
    return out.str();
}

} // namespace polyq
