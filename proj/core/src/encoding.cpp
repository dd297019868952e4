#include "polyq/encoding.hpp"

#include <cmath>
#include <set>

namespace polyq {

namespace {

double pow2(int exponent) {
    return std::ldexp(1.0, exponent);
}

} // namespace

void VarSpec::validate() const {
    if (name.empty()) {
        throw ConfigError("variable name must not be empty");
    }
    if (magnitude_bits < 1) {
        throw ConfigError("variable '" + name + "': magnitude bit count n must be >= 1");
    }
    if (fraction_bits < 0) {
        throw ConfigError("variable '" + name + "': bit resolution m must be >= 0");
    }
    if (magnitude_bits + fraction_bits > 40) {
        throw CapacityError("variable '" + name + "': n + m too large for exact decoding");
    }
}

const VarSpec* DomainSpec::find(const std::string& name) const noexcept {
    for (const VarSpec& var : vars) {
        if (var.name == name) {
            return &var;
        }
    }
    return nullptr;
}

void DomainSpec::validate() const {
    std::set<std::string> seen;
    for (const VarSpec& var : vars) {
        var.validate();
        if (!seen.insert(var.name).second) {
            throw ConfigError("duplicate variable '" + var.name + "' in domain");
        }
    }
}

std::size_t BitLayout::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].name == name) {
            return i;
        }
    }
    throw DomainError("variable '" + name + "' not present in layout");
}

BitLayout make_layout(const DomainSpec& spec) {
    spec.validate();
    BitLayout layout;
    std::uint32_t offset = 0;
    for (const VarSpec& var : spec.vars) {
        layout.vars.push_back(var);
        layout.offsets.push_back(offset);
        offset += static_cast<std::uint32_t>(var.width());
    }
    layout.total_bits = offset;
    return layout;
}

std::vector<int> encode(double value, const VarSpec& spec) {
    spec.validate();
    const double bound = pow2(spec.magnitude_bits);
    if (!spec.is_signed && value < 0.0) {
        throw DomainError("variable '" + spec.name + "' is unsigned, got " +
                          std::to_string(value));
    }
    if (std::abs(value) >= bound) {
        throw DomainError("value " + std::to_string(value) + " outside domain of '" +
                          spec.name + "'");
    }
    const int n = spec.magnitude_bits;
    const int m = spec.fraction_bits;
    // Magnitude truncated toward zero on the 2^-m grid.
    const auto scaled =
        static_cast<std::uint64_t>(std::floor(std::abs(value) * pow2(m)));
    std::vector<int> bits;
    bits.reserve(spec.width());
    if (spec.is_signed) {
        bits.push_back(value < 0.0 ? 1 : 0);
    }
    for (int i = n + m - 1; i >= 0; --i) {
        bits.push_back(static_cast<int>((scaled >> i) & 1));
    }
    return bits;
}

double decode(std::span<const int> bits, const VarSpec& spec) {
    if (bits.size() != static_cast<std::size_t>(spec.width())) {
        throw DimensionError("bit vector for '" + spec.name + "' has " +
                             std::to_string(bits.size()) + " bits, expected " +
                             std::to_string(spec.width()));
    }
    const int n = spec.magnitude_bits;
    const int m = spec.fraction_bits;
    const std::size_t base = spec.is_signed ? 1 : 0;
    double magnitude = 0.0;
    for (int i = 0; i < n + m; ++i) {
        if (bits[base + i] != 0) {
            magnitude += pow2(n - 1 - i);
        }
    }
    if (spec.is_signed && bits[0] != 0) {
        return -magnitude;
    }
    return magnitude;
}

std::string render_bits(std::span<const int> bits, const VarSpec& spec) {
    if (bits.size() != static_cast<std::size_t>(spec.width())) {
        throw DimensionError("bit vector length mismatch for '" + spec.name + "'");
    }
    std::string out;
    std::size_t pos = 0;
    if (spec.is_signed) {
        out += static_cast<char>('0' + bits[pos++]);
        out += ' ';
    }
    for (int i = 0; i < spec.magnitude_bits; ++i) {
        out += static_cast<char>('0' + bits[pos++]);
    }
    if (spec.fraction_bits > 0) {
        out += ',';
        for (int i = 0; i < spec.fraction_bits; ++i) {
            out += static_cast<char>('0' + bits[pos++]);
        }
    }
    return out;
}

BinaryPoly bit_substitution(const VarSpec& spec, std::uint32_t offset,
                            std::uint32_t total_bits) {
    spec.validate();
    const int n = spec.magnitude_bits;
    const int m = spec.fraction_bits;
    const std::uint32_t base = offset + (spec.is_signed ? 1 : 0);
    BinaryPoly poly(total_bits);
    for (int i = 0; i < n + m; ++i) {
        const double weight = pow2(n - 1 - i);
        const std::uint32_t bit = base + static_cast<std::uint32_t>(i);
        poly.add_term({bit}, weight);
        if (spec.is_signed) {
            // (1 - 2*x_sign) * weight * x_bit, expanded to multilinear form.
            poly.add_term({offset, bit}, -2.0 * weight);
        }
    }
    return poly;
}

Discretization discretize(const ContinuousPoly& f, const DomainSpec& spec) {
    BitLayout layout = make_layout(spec);
    for (const std::string& name : f.variables()) {
        if (spec.find(name) == nullptr) {
            throw DomainError("objective variable '" + name + "' missing from domain");
        }
    }
    std::map<std::string, BinaryPoly> replacements;
    for (std::size_t i = 0; i < layout.vars.size(); ++i) {
        replacements.emplace(layout.vars[i].name,
                             bit_substitution(layout.vars[i], layout.offsets[i],
                                              layout.total_bits));
    }
    Discretization result{substitute(f, replacements), std::move(layout)};
    return result;
}

std::vector<int> bits_of_index(std::uint64_t index, std::uint32_t num_bits) {
    std::vector<int> bits(num_bits);
    for (std::uint32_t i = 0; i < num_bits; ++i) {
        bits[i] = static_cast<int>((index >> (num_bits - 1 - i)) & 1);
    }
    return bits;
}

std::uint64_t index_of_bits(std::span<const int> bits) {
    std::uint64_t index = 0;
    for (int bit : bits) {
        index = (index << 1) | static_cast<std::uint64_t>(bit != 0);
    }
    return index;
}

std::map<std::string, double> decode_index(const BitLayout& layout, std::uint64_t index) {
    const std::vector<int> bits = bits_of_index(index, layout.total_bits);
    std::map<std::string, double> values;
    for (std::size_t i = 0; i < layout.vars.size(); ++i) {
        const VarSpec& var = layout.vars[i];
        const std::span<const int> slice(bits.data() + layout.offsets[i],
                                         static_cast<std::size_t>(var.width()));
        values[var.name] = decode(slice, var);
    }
    return values;
}

} // namespace polyq
