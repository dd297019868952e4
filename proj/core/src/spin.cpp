#include "polyq/spin.hpp"

namespace polyq {

namespace {

void check_table_capacity(std::uint32_t num_bits) {
    if (num_bits > kMaxTableQubits) {
        throw CapacityError("dense table over " + std::to_string(num_bits) +
                            " bits exceeds the " + std::to_string(kMaxTableQubits) +
                            "-qubit guard");
    }
}

} // namespace

SpinPoly to_spin(const BinaryPoly& p) {
    SpinPoly result(p.num_bits());
    for (const auto& [indices, coefficient] : p.terms()) {
        // c * prod x_i = c * 2^-|S| * prod (1 - s_i): expand over subsets.
        const std::size_t size = indices.size();
        const double scale = std::ldexp(coefficient, -static_cast<int>(size));
        for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << size); ++subset) {
            IndexSet support;
            int sign = 1;
            for (std::size_t i = 0; i < size; ++i) {
                if ((subset >> i) & 1) {
                    support.push_back(indices[i]);
                    sign = -sign;
                }
            }
            result.add_term(std::move(support), sign * scale);
        }
    }
    return result;
}

BinaryPoly to_binary(const SpinPoly& h) {
    BinaryPoly result(h.num_qubits());
    for (const auto& [indices, coefficient] : h.terms()) {
        // c * prod s_i = c * prod (1 - 2 x_i): expand over subsets.
        const std::size_t size = indices.size();
        for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << size); ++subset) {
            IndexSet support;
            double factor = coefficient;
            for (std::size_t i = 0; i < size; ++i) {
                if ((subset >> i) & 1) {
                    support.push_back(indices[i]);
                    factor *= -2.0;
                }
            }
            result.add_term(std::move(support), factor);
        }
    }
    return result;
}

std::uint64_t support_mask(const IndexSet& indices, std::uint32_t num_bits) {
    std::uint64_t mask = 0;
    for (std::uint32_t index : indices) {
        mask |= std::uint64_t{1} << (num_bits - 1 - index);
    }
    return mask;
}

std::vector<double> spin_energy_table(const SpinPoly& h) {
    const std::uint32_t n = h.num_qubits();
    check_table_capacity(n);
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> table(size, 0.0);
    for (const auto& [indices, coefficient] : h.terms()) {
        table[support_mask(indices, n)] += coefficient;
    }
    // In-place Walsh-Hadamard transform: result[k] = sum_j a[j] (-1)^{|j&k|}.
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += half << 1) {
            for (std::size_t i = block; i < block + half; ++i) {
                const double u = table[i];
                const double v = table[i + half];
                table[i] = u + v;
                table[i + half] = u - v;
            }
        }
    }
    return table;
}

std::vector<double> binary_energy_table(const BinaryPoly& p) {
    const std::uint32_t n = p.num_bits();
    check_table_capacity(n);
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> table(size, 0.0);
    for (const auto& [indices, coefficient] : p.terms()) {
        table[support_mask(indices, n)] += coefficient;
    }
    // Subset-sum transform: result[k] = sum_{j subset of k} a[j].
    for (std::uint32_t bit = 0; bit < n; ++bit) {
        const std::size_t mask = std::size_t{1} << bit;
        for (std::size_t k = 0; k < size; ++k) {
            if (k & mask) {
                table[k] += table[k ^ mask];
            }
        }
    }
    return table;
}

} // namespace polyq
