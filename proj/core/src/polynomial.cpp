#include "polyq/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polyq {

namespace {

void check_capacity(std::size_t size) {
    if (size > kMaxPolyTerms) {
        throw CapacityError("polynomial expansion exceeds " + std::to_string(kMaxPolyTerms) +
                            " terms");
    }
}

// Rejects a product whose distributed expansion would blow the term cap
// before any memory is committed to it.
void check_product_capacity(std::size_t lhs_terms, std::size_t rhs_terms) {
    if (lhs_terms != 0 && rhs_terms > kMaxPolyTerms / lhs_terms) {
        throw CapacityError("product expansion exceeds " + std::to_string(kMaxPolyTerms) +
                            " terms");
    }
}

// Exact integer power by repeated multiplication.
double int_pow(double base, int exponent) {
    double result = 1.0;
    for (int i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

std::string format_coefficient(double value) {
    std::ostringstream out;
    out.precision(12);
    out << value;
    return out.str();
}

// Canonicalizes an index multiset under x_i^2 = x_i: sort and deduplicate.
IndexSet binary_normalize(IndexSet indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

// Canonicalizes an index multiset under s_i^2 = 1: indices appearing an even
// number of times cancel.
IndexSet spin_normalize(IndexSet indices) {
    std::sort(indices.begin(), indices.end());
    IndexSet result;
    std::size_t i = 0;
    while (i < indices.size()) {
        std::size_t j = i;
        while (j < indices.size() && indices[j] == indices[i]) {
            ++j;
        }
        if ((j - i) % 2 == 1) {
            result.push_back(indices[i]);
        }
        i = j;
    }
    return result;
}

// Merged union of two sorted duplicate-free sets (binary product).
IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet result;
    result.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(result));
    return result;
}

// Symmetric difference of two sorted duplicate-free sets (spin product).
IndexSet set_symmetric_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet result;
    result.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(result));
    return result;
}

template <typename TermMap, typename Key>
void merge_term(TermMap& terms, const Key& key, double coefficient) {
    if (coefficient == 0.0) {
        return;
    }
    auto [it, inserted] = terms.emplace(key, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0.0) {
            terms.erase(it);
            return;
        }
    }
    check_capacity(terms.size());
}

} // namespace

// ---------------------------------------------------------------------------
// ContinuousPoly

ContinuousPoly ContinuousPoly::constant(double value) {
    ContinuousPoly p;
    p.add_term({}, value);
    return p;
}

ContinuousPoly ContinuousPoly::variable(const std::string& name) {
    ContinuousPoly p;
    p.add_term({{name, 1}}, 1.0);
    return p;
}

int ContinuousPoly::degree() const noexcept {
    int degree = 0;
    for (const auto& [monomial, coefficient] : terms_) {
        int total = 0;
        for (const auto& [name, exponent] : monomial) {
            total += exponent;
        }
        degree = std::max(degree, total);
    }
    return degree;
}

std::set<std::string> ContinuousPoly::variables() const {
    std::set<std::string> names;
    for (const auto& [monomial, coefficient] : terms_) {
        for (const auto& [name, exponent] : monomial) {
            names.insert(name);
        }
    }
    return names;
}

void ContinuousPoly::add_term(const Monomial& monomial, double coefficient) {
    for (const auto& [name, exponent] : monomial) {
        if (exponent < 1) {
            throw InvalidArgument("monomial exponents must be >= 1");
        }
    }
    merge_term(terms_, monomial, coefficient);
}

ContinuousPoly ContinuousPoly::operator+(const ContinuousPoly& other) const {
    ContinuousPoly result = *this;
    for (const auto& [monomial, coefficient] : other.terms_) {
        merge_term(result.terms_, monomial, coefficient);
    }
    return result;
}

ContinuousPoly ContinuousPoly::operator-(const ContinuousPoly& other) const {
    ContinuousPoly result = *this;
    for (const auto& [monomial, coefficient] : other.terms_) {
        merge_term(result.terms_, monomial, -coefficient);
    }
    return result;
}

ContinuousPoly ContinuousPoly::operator*(const ContinuousPoly& other) const {
    check_product_capacity(terms_.size(), other.terms_.size());
    ContinuousPoly result;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            Monomial product = ma;
            for (const auto& [name, exponent] : mb) {
                product[name] += exponent;
            }
            merge_term(result.terms_, product, ca * cb);
        }
    }
    return result;
}

ContinuousPoly ContinuousPoly::operator-() const {
    ContinuousPoly result;
    for (const auto& [monomial, coefficient] : terms_) {
        result.terms_.emplace(monomial, -coefficient);
    }
    return result;
}

ContinuousPoly ContinuousPoly::pow(unsigned exponent) const {
    ContinuousPoly result = constant(1.0);
    for (unsigned i = 0; i < exponent; ++i) {
        result = result * *this;
    }
    return result;
}

double ContinuousPoly::evaluate(const std::map<std::string, double>& assignment) const {
    double total = 0.0;
    for (const auto& [monomial, coefficient] : terms_) {
        double value = coefficient;
        for (const auto& [name, exponent] : monomial) {
            auto it = assignment.find(name);
            if (it == assignment.end()) {
                throw DomainError("assignment is missing variable '" + name + "'");
            }
            value *= int_pow(it->second, exponent);
        }
        total += value;
    }
    return total;
}

std::string ContinuousPoly::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [monomial, coefficient] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << format_coefficient(coefficient);
        for (const auto& [name, exponent] : monomial) {
            out << "*" << name;
            if (exponent > 1) {
                out << "^" << exponent;
            }
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// BinaryPoly

BinaryPoly::BinaryPoly(std::uint32_t num_bits,
                       std::initializer_list<std::pair<IndexSet, double>> terms)
    : num_bits_(num_bits) {
    for (const auto& [indices, coefficient] : terms) {
        add_term(indices, coefficient);
    }
}

BinaryPoly BinaryPoly::constant(std::uint32_t num_bits, double value) {
    BinaryPoly p(num_bits);
    p.add_term({}, value);
    return p;
}

BinaryPoly BinaryPoly::bit(std::uint32_t num_bits, std::uint32_t index) {
    BinaryPoly p(num_bits);
    p.add_term({index}, 1.0);
    return p;
}

int BinaryPoly::degree() const noexcept {
    int degree = 0;
    for (const auto& [indices, coefficient] : terms_) {
        degree = std::max(degree, static_cast<int>(indices.size()));
    }
    return degree;
}

double BinaryPoly::constant_term() const {
    auto it = terms_.find(IndexSet{});
    return it == terms_.end() ? 0.0 : it->second;
}

void BinaryPoly::add_term(IndexSet indices, double coefficient) {
    IndexSet normalized = binary_normalize(std::move(indices));
    for (std::uint32_t index : normalized) {
        if (index >= num_bits_) {
            throw DimensionError("bit index " + std::to_string(index) + " out of range for " +
                                 std::to_string(num_bits_) + " bits");
        }
    }
    merge_term(terms_, normalized, coefficient);
}

void BinaryPoly::check_same_bits(const BinaryPoly& other) const {
    if (num_bits_ != other.num_bits_) {
        throw DimensionError("bit count mismatch: " + std::to_string(num_bits_) + " vs " +
                             std::to_string(other.num_bits_));
    }
}

BinaryPoly BinaryPoly::operator+(const BinaryPoly& other) const {
    check_same_bits(other);
    BinaryPoly result = *this;
    for (const auto& [indices, coefficient] : other.terms_) {
        merge_term(result.terms_, indices, coefficient);
    }
    return result;
}

BinaryPoly BinaryPoly::operator-(const BinaryPoly& other) const {
    check_same_bits(other);
    BinaryPoly result = *this;
    for (const auto& [indices, coefficient] : other.terms_) {
        merge_term(result.terms_, indices, -coefficient);
    }
    return result;
}

BinaryPoly BinaryPoly::operator*(const BinaryPoly& other) const {
    check_product_capacity(terms_.size(), other.terms_.size());
    check_same_bits(other);
    BinaryPoly result(num_bits_);
    for (const auto& [ia, ca] : terms_) {
        for (const auto& [ib, cb] : other.terms_) {
            merge_term(result.terms_, set_union(ia, ib), ca * cb);
        }
    }
    return result;
}

BinaryPoly BinaryPoly::operator-() const {
    return *this * -1.0;
}

BinaryPoly BinaryPoly::operator*(double scalar) const {
    BinaryPoly result(num_bits_);
    if (scalar == 0.0) {
        return result;
    }
    for (const auto& [indices, coefficient] : terms_) {
        result.terms_.emplace(indices, coefficient * scalar);
    }
    return result;
}

BinaryPoly BinaryPoly::pow(unsigned exponent) const {
    BinaryPoly result = constant(num_bits_, 1.0);
    for (unsigned i = 0; i < exponent; ++i) {
        result = result * *this;
    }
    return result;
}

double BinaryPoly::evaluate(std::span<const int> bits) const {
    if (bits.size() != num_bits_) {
        throw DimensionError("bit assignment has " + std::to_string(bits.size()) +
                             " entries, expected " + std::to_string(num_bits_));
    }
    for (int bit : bits) {
        if (bit != 0 && bit != 1) {
            throw DomainError("bit values must be 0 or 1");
        }
    }
    double total = 0.0;
    for (const auto& [indices, coefficient] : terms_) {
        bool all_set = true;
        for (std::uint32_t index : indices) {
            if (bits[index] == 0) {
                all_set = false;
                break;
            }
        }
        if (all_set) {
            total += coefficient;
        }
    }
    return total;
}

std::string BinaryPoly::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [indices, coefficient] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << format_coefficient(coefficient);
        for (std::uint32_t index : indices) {
            out << "*x" << index;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// SpinPoly

SpinPoly::SpinPoly(std::uint32_t num_qubits,
                   std::initializer_list<std::pair<IndexSet, double>> terms)
    : num_qubits_(num_qubits) {
    for (const auto& [indices, coefficient] : terms) {
        add_term(indices, coefficient);
    }
}

SpinPoly SpinPoly::constant(std::uint32_t num_qubits, double value) {
    SpinPoly p(num_qubits);
    p.add_term({}, value);
    return p;
}

SpinPoly SpinPoly::spin(std::uint32_t num_qubits, std::uint32_t index) {
    SpinPoly p(num_qubits);
    p.add_term({index}, 1.0);
    return p;
}

int SpinPoly::degree() const noexcept {
    int degree = 0;
    for (const auto& [indices, coefficient] : terms_) {
        degree = std::max(degree, static_cast<int>(indices.size()));
    }
    return degree;
}

double SpinPoly::constant_term() const {
    auto it = terms_.find(IndexSet{});
    return it == terms_.end() ? 0.0 : it->second;
}

void SpinPoly::add_term(IndexSet indices, double coefficient) {
    IndexSet normalized = spin_normalize(std::move(indices));
    for (std::uint32_t index : normalized) {
        if (index >= num_qubits_) {
            throw DimensionError("spin index " + std::to_string(index) + " out of range for " +
                                 std::to_string(num_qubits_) + " qubits");
        }
    }
    merge_term(terms_, normalized, coefficient);
}

void SpinPoly::check_same_qubits(const SpinPoly& other) const {
    if (num_qubits_ != other.num_qubits_) {
        throw DimensionError("qubit count mismatch: " + std::to_string(num_qubits_) + " vs " +
                             std::to_string(other.num_qubits_));
    }
}

SpinPoly SpinPoly::operator+(const SpinPoly& other) const {
    check_same_qubits(other);
    SpinPoly result = *this;
    for (const auto& [indices, coefficient] : other.terms_) {
        merge_term(result.terms_, indices, coefficient);
    }
    return result;
}

SpinPoly SpinPoly::operator-(const SpinPoly& other) const {
    check_same_qubits(other);
    SpinPoly result = *this;
    for (const auto& [indices, coefficient] : other.terms_) {
        merge_term(result.terms_, indices, -coefficient);
    }
    return result;
}

SpinPoly SpinPoly::operator*(const SpinPoly& other) const {
    check_product_capacity(terms_.size(), other.terms_.size());
    check_same_qubits(other);
    SpinPoly result(num_qubits_);
    for (const auto& [ia, ca] : terms_) {
        for (const auto& [ib, cb] : other.terms_) {
            merge_term(result.terms_, set_symmetric_difference(ia, ib), ca * cb);
        }
    }
    return result;
}

SpinPoly SpinPoly::operator-() const {
    return *this * -1.0;
}

SpinPoly SpinPoly::operator*(double scalar) const {
    SpinPoly result(num_qubits_);
    if (scalar == 0.0) {
        return result;
    }
    for (const auto& [indices, coefficient] : terms_) {
        result.terms_.emplace(indices, coefficient * scalar);
    }
    return result;
}

SpinPoly SpinPoly::pow(unsigned exponent) const {
    SpinPoly result = constant(num_qubits_, 1.0);
    for (unsigned i = 0; i < exponent; ++i) {
        result = result * *this;
    }
    return result;
}

double SpinPoly::evaluate(std::span<const int> spins) const {
    if (spins.size() != num_qubits_) {
        throw DimensionError("spin assignment has " + std::to_string(spins.size()) +
                             " entries, expected " + std::to_string(num_qubits_));
    }
    for (int spin : spins) {
        if (spin != 1 && spin != -1) {
            throw DomainError("spin values must be -1 or +1");
        }
    }
    double total = 0.0;
    for (const auto& [indices, coefficient] : terms_) {
        int sign = 1;
        for (std::uint32_t index : indices) {
            sign *= spins[index];
        }
        total += coefficient * sign;
    }
    return total;
}

std::string SpinPoly::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [indices, coefficient] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << format_coefficient(coefficient);
        for (std::uint32_t index : indices) {
            out << "*s" << index;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------

BinaryPoly substitute(const ContinuousPoly& p,
                      const std::map<std::string, BinaryPoly>& replacements) {
    std::uint32_t num_bits = 0;
    if (!replacements.empty()) {
        num_bits = replacements.begin()->second.num_bits();
        for (const auto& [name, replacement] : replacements) {
            if (replacement.num_bits() != num_bits) {
                throw DimensionError("replacement polynomials disagree on bit count");
            }
        }
    }
    BinaryPoly result(num_bits);
    for (const auto& [monomial, coefficient] : p.terms()) {
        BinaryPoly term = BinaryPoly::constant(num_bits, coefficient);
        for (const auto& [name, exponent] : monomial) {
            auto it = replacements.find(name);
            if (it == replacements.end()) {
                throw DomainError("no replacement for variable '" + name + "'");
            }
            term = term * it->second.pow(static_cast<unsigned>(exponent));
        }
        result = result + term;
    }
    return result;
}

} // namespace polyq
