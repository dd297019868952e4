#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyq/errors.hpp"

namespace polyq {

/// Hard cap on stored terms for any polynomial operation. Expansions that
/// would exceed it raise CapacityError instead of exhausting memory.
inline constexpr std::size_t kMaxPolyTerms = std::size_t{1} << 22;

/// Monomial over named real variables: variable -> exponent, exponents >= 1.
/// The empty monomial denotes the constant term.
using Monomial = std::map<std::string, int>;

/// Multivariate polynomial over named real variables with double
/// coefficients, kept in canonical form: no zero-coefficient terms,
/// deterministic (sorted) term order.
class ContinuousPoly {
public:
    using TermMap = std::map<Monomial, double>;

    ContinuousPoly() = default;

    static ContinuousPoly constant(double value);
    static ContinuousPoly variable(const std::string& name);

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Total degree (max over terms of the exponent sum); 0 for constants.
    int degree() const noexcept;
    std::set<std::string> variables() const;

    /// Adds `coefficient * monomial`, merging and dropping exact zeros.
    void add_term(const Monomial& monomial, double coefficient);

    ContinuousPoly operator+(const ContinuousPoly& other) const;
    ContinuousPoly operator-(const ContinuousPoly& other) const;
    ContinuousPoly operator*(const ContinuousPoly& other) const;
    ContinuousPoly operator-() const;
    ContinuousPoly pow(unsigned exponent) const;

    /// Exact sum of coefficient * monomial value. Every variable of the
    /// polynomial must appear in the assignment.
    double evaluate(const std::map<std::string, double>& assignment) const;

    bool operator==(const ContinuousPoly& other) const = default;

    std::string to_string() const;

private:
    TermMap terms_;
};

/// Sorted, duplicate-free set of bit (or qubit) indices.
using IndexSet = std::vector<std::uint32_t>;

/// Multilinear pseudo-Boolean polynomial over indexed bits (PUBO/QUBO form).
/// Idempotence x_i^2 = x_i is applied on construction, so term keys are
/// index sets, never exponents.
class BinaryPoly {
public:
    using TermMap = std::map<IndexSet, double>;

    explicit BinaryPoly(std::uint32_t num_bits = 0) : num_bits_(num_bits) {}
    BinaryPoly(std::uint32_t num_bits,
               std::initializer_list<std::pair<IndexSet, double>> terms);

    static BinaryPoly constant(std::uint32_t num_bits, double value);
    /// The single-bit polynomial x_index.
    static BinaryPoly bit(std::uint32_t num_bits, std::uint32_t index);

    std::uint32_t num_bits() const noexcept { return num_bits_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Max index-set cardinality; 0 for a constant-only polynomial.
    int degree() const noexcept;
    double constant_term() const;

    /// Adds `coefficient * prod_{i in indices} x_i`. Duplicate indices are
    /// collapsed (idempotence); indices must be < num_bits().
    void add_term(IndexSet indices, double coefficient);

    BinaryPoly operator+(const BinaryPoly& other) const;
    BinaryPoly operator-(const BinaryPoly& other) const;
    BinaryPoly operator*(const BinaryPoly& other) const;
    BinaryPoly operator-() const;
    BinaryPoly operator*(double scalar) const;
    BinaryPoly pow(unsigned exponent) const;

    /// Evaluates at a full bit assignment (one value in {0,1} per bit).
    double evaluate(std::span<const int> bits) const;

    bool operator==(const BinaryPoly& other) const = default;

    std::string to_string() const;

private:
    void check_same_bits(const BinaryPoly& other) const;

    std::uint32_t num_bits_ = 0;
    TermMap terms_;
};

/// Real-weighted sum of Pauli-Z products over indexed spins (Ising form).
/// Spin idempotence s_i^2 = 1 is applied on construction: repeated indices
/// cancel pairwise.
class SpinPoly {
public:
    using TermMap = std::map<IndexSet, double>;

    explicit SpinPoly(std::uint32_t num_qubits = 0) : num_qubits_(num_qubits) {}
    SpinPoly(std::uint32_t num_qubits,
             std::initializer_list<std::pair<IndexSet, double>> terms);

    static SpinPoly constant(std::uint32_t num_qubits, double value);
    static SpinPoly spin(std::uint32_t num_qubits, std::uint32_t index);

    std::uint32_t num_qubits() const noexcept { return num_qubits_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int degree() const noexcept;
    double constant_term() const;

    /// Adds `coefficient * prod_{i in indices} s_i`, cancelling repeated
    /// indices pairwise.
    void add_term(IndexSet indices, double coefficient);

    SpinPoly operator+(const SpinPoly& other) const;
    SpinPoly operator-(const SpinPoly& other) const;
    SpinPoly operator*(const SpinPoly& other) const;
    SpinPoly operator-() const;
    SpinPoly operator*(double scalar) const;
    SpinPoly pow(unsigned exponent) const;

    /// Evaluates at a full spin assignment (one value in {-1,+1} per qubit).
    double evaluate(std::span<const int> spins) const;

    bool operator==(const SpinPoly& other) const = default;

    std::string to_string() const;

private:
    void check_same_qubits(const SpinPoly& other) const;

    std::uint32_t num_qubits_ = 0;
    TermMap terms_;
};

/// Replaces every variable of `p` by its BinaryPoly image and expands under
/// binary algebra. Each variable power x^k becomes replacement^k. All
/// replacements must share the same bit count and every variable of `p`
/// must have one.
BinaryPoly substitute(const ContinuousPoly& p,
                      const std::map<std::string, BinaryPoly>& replacements);

} // namespace polyq
