#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "polyq/polynomial.hpp"

namespace polyq {

/// Sign-magnitude layout of one continuous variable: an optional sign bit,
/// n magnitude bits (domain ]-2^n, 2^n[ signed, [0, 2^n[ unsigned) and m
/// fractional bits of pitch 2^-m.
struct VarSpec {
    std::string name;
    bool is_signed = true;
    int magnitude_bits = 1; // n >= 1
    int fraction_bits = 0;  // m >= 0

    int width() const noexcept {
        return (is_signed ? 1 : 0) + magnitude_bits + fraction_bits;
    }

    void validate() const;
};

/// Ordered set of variable layouts; order fixes the bit concatenation.
struct DomainSpec {
    std::vector<VarSpec> vars;

    const VarSpec* find(const std::string& name) const noexcept;
    void validate() const;
};

/// Variables mapped to contiguous bit ranges, in declaration order. Within a
/// variable: sign bit first (if signed), magnitude bits most significant
/// first, then fraction bits.
struct BitLayout {
    std::vector<VarSpec> vars;
    std::vector<std::uint32_t> offsets;
    std::uint32_t total_bits = 0;

    std::size_t var_index(const std::string& name) const;
};

BitLayout make_layout(const DomainSpec& spec);

/// Sign-magnitude encoding of `value`: sign bit 1 iff value < 0, magnitude
/// truncated toward zero at 2^-m. Requires |value| < 2^n (value >= 0 when
/// unsigned).
std::vector<int> encode(double value, const VarSpec& spec);

/// Inverse of encode on the representable grid:
/// (1 - 2*sign) * (sum 2^{n-i} x_i + sum 2^{-i} x_{n+i}).
double decode(std::span<const int> bits, const VarSpec& spec);

/// Log rendering: "1 10,110" (sign, space, magnitude, comma, fraction).
std::string render_bits(std::span<const int> bits, const VarSpec& spec);

/// The BinaryPoly over `total_bits` bits equal to decode() as a function of
/// the variable's bits placed at `offset`.
BinaryPoly bit_substitution(const VarSpec& spec, std::uint32_t offset,
                            std::uint32_t total_bits);

struct Discretization {
    BinaryPoly pubo;
    BitLayout layout;
};

/// Substitutes every variable of `f` by its bit polynomial. Defining
/// contract: evaluate(pubo, b) == f(decode(b)) for every bit assignment b.
Discretization discretize(const ContinuousPoly& f, const DomainSpec& spec);

/// Bits of a basis index under the global convention: bit/qubit 0 is the
/// most significant position.
std::vector<int> bits_of_index(std::uint64_t index, std::uint32_t num_bits);
std::uint64_t index_of_bits(std::span<const int> bits);

/// Decodes a full basis index into per-variable values.
std::map<std::string, double> decode_index(const BitLayout& layout, std::uint64_t index);

} // namespace polyq
