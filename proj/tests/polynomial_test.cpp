#include <random>

#include "doctest.h"
#include "polyq/polynomial.hpp"

using namespace polyq;

namespace {

ContinuousPoly styblinski_tang() {
    // s(x) = (x^4 - 16 x^2 + 5 x) / 2
    const ContinuousPoly x = ContinuousPoly::variable("x");
    return (x.pow(4) - ContinuousPoly::constant(16.0) * x.pow(2) +
            ContinuousPoly::constant(5.0) * x) *
           ContinuousPoly::constant(0.5);
}

ContinuousPoly rosenbrock() {
    // r(x,y) = 100 (y - x^2)^2 + (x - 1)^2
    const ContinuousPoly x = ContinuousPoly::variable("x");
    const ContinuousPoly y = ContinuousPoly::variable("y");
    return ContinuousPoly::constant(100.0) * (y - x.pow(2)).pow(2) +
           (x - ContinuousPoly::constant(1.0)).pow(2);
}

// Random multilinear polynomial over `bits` bits with small integer
// coefficients.
BinaryPoly random_binary(std::mt19937_64& rng, std::uint32_t bits, int max_terms) {
    BinaryPoly poly(bits);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> term_count(1, max_terms);
    const int terms = term_count(rng);
    for (int t = 0; t < terms; ++t) {
        IndexSet support;
        for (std::uint32_t i = 0; i < bits; ++i) {
            if (rng() & 1) {
                support.push_back(i);
            }
        }
        poly.add_term(std::move(support), static_cast<double>(coeff(rng)));
    }
    return poly;
}

SpinPoly random_spin(std::mt19937_64& rng, std::uint32_t qubits, int max_terms) {
    SpinPoly poly(qubits);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> term_count(1, max_terms);
    const int terms = term_count(rng);
    for (int t = 0; t < terms; ++t) {
        IndexSet support;
        for (std::uint32_t i = 0; i < qubits; ++i) {
            if (rng() & 1) {
                support.push_back(i);
            }
        }
        poly.add_term(std::move(support), static_cast<double>(coeff(rng)));
    }
    return poly;
}

std::vector<int> bits_from_mask(std::uint64_t mask, std::uint32_t n) {
    std::vector<int> bits(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        bits[i] = static_cast<int>((mask >> i) & 1);
    }
    return bits;
}

std::vector<int> spins_from_mask(std::uint64_t mask, std::uint32_t n) {
    std::vector<int> spins(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        spins[i] = ((mask >> i) & 1) ? -1 : 1;
    }
    return spins;
}

} // namespace

TEST_CASE("continuous add cancels to the constant") {
    const ContinuousPoly x = ContinuousPoly::variable("x");
    const ContinuousPoly sum = (x + ContinuousPoly::constant(1.0)) + (-x);
    CHECK(sum == ContinuousPoly::constant(1.0));
}

TEST_CASE("binary add merges disjoint terms") {
    const BinaryPoly a(1, {{{}, 2.0}});
    const BinaryPoly b(1, {{{0}, 3.0}});
    const BinaryPoly expected(1, {{{}, 2.0}, {{0}, 3.0}});
    CHECK(a + b == expected);
}

TEST_CASE("adding zero is the identity") {
    const ContinuousPoly s = styblinski_tang();
    CHECK(s + ContinuousPoly() == s);
}

TEST_CASE("add rejects mismatched bit counts") {
    CHECK_THROWS_AS(BinaryPoly(2) + BinaryPoly(3), DimensionError);
    CHECK_THROWS_AS(SpinPoly(2) + SpinPoly(3), DimensionError);
}

TEST_CASE("binary multiplication applies idempotence") {
    const BinaryPoly x0 = BinaryPoly::bit(1, 0);
    CHECK(x0 * x0 == x0);
}

TEST_CASE("spin multiplication applies s^2 = 1") {
    const SpinPoly s0 = SpinPoly::spin(1, 0);
    CHECK(s0 * s0 == SpinPoly::constant(1, 1.0));
}

TEST_CASE("binary square expands as the evaluation oracle dictates") {
    // (2 x1 + x2)^2 over 3 bits, checked on every assignment of (x1, x2).
    const BinaryPoly p(3, {{{1}, 2.0}, {{2}, 1.0}});
    const BinaryPoly square = p * p;
    const BinaryPoly expected(3, {{{1}, 4.0}, {{2}, 1.0}, {{1, 2}, 4.0}});
    CHECK(square == expected);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        const std::vector<int> bits = bits_from_mask(mask, 3);
        const double base = p.evaluate(bits);
        CHECK(square.evaluate(bits) == doctest::Approx(base * base).epsilon(1e-12));
    }
}

TEST_CASE("pow of a continuous variable") {
    const ContinuousPoly x = ContinuousPoly::variable("x");
    CHECK(x.pow(0) == ContinuousPoly::constant(1.0));
}

TEST_CASE("even power of a spin is the constant") {
    const SpinPoly s0 = SpinPoly::spin(1, 0);
    CHECK(s0.pow(4) == SpinPoly::constant(1, 1.0));
}

TEST_CASE("(2 x0 - 1)^2 collapses to 1") {
    const BinaryPoly p(1, {{{0}, 2.0}, {{}, -1.0}});
    CHECK(p.pow(2) == BinaryPoly::constant(1, 1.0));
    for (int bit : {0, 1}) {
        const std::vector<int> bits{bit};
        CHECK(p.pow(2).evaluate(bits) == doctest::Approx(1.0));
    }
}

TEST_CASE("Styblinski-Tang evaluates to -39 at -3") {
    CHECK(styblinski_tang().evaluate({{"x", -3.0}}) == doctest::Approx(-39.0));
}

TEST_CASE("Rosenbrock vanishes at (1, 1)") {
    CHECK(rosenbrock().evaluate({{"x", 1.0}, {"y", 1.0}}) == doctest::Approx(0.0));
}

TEST_CASE("binary evaluation needs every index set bit") {
    const BinaryPoly p(2, {{{0, 1}, 4.0}});
    CHECK(p.evaluate(std::vector<int>{1, 0}) == doctest::Approx(0.0));
    CHECK(p.evaluate(std::vector<int>{1, 1}) == doctest::Approx(4.0));
}

TEST_CASE("evaluate rejects bad assignments") {
    const ContinuousPoly x = ContinuousPoly::variable("x");
    CHECK_THROWS_AS(x.evaluate({}), DomainError);
    const BinaryPoly b = BinaryPoly::bit(1, 0);
    CHECK_THROWS_AS(b.evaluate(std::vector<int>{2}), DomainError);
    const SpinPoly s = SpinPoly::spin(1, 0);
    CHECK_THROWS_AS(s.evaluate(std::vector<int>{0}), DomainError);
    CHECK_THROWS_AS(s.evaluate(std::vector<int>{1, 1}), DimensionError);
}

TEST_CASE("substitute x^2 by a signed single-magnitude-bit encoding") {
    // ((1 - 2 x0) x1)^2 = x1.
    const ContinuousPoly f = ContinuousPoly::variable("x").pow(2);
    const BinaryPoly replacement(2, {{{1}, 1.0}, {{0, 1}, -2.0}});
    const BinaryPoly result = substitute(f, {{"x", replacement}});
    CHECK(result == BinaryPoly(2, {{{1}, 1.0}}));
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
        const std::vector<int> bits = bits_from_mask(mask, 2);
        const double r = replacement.evaluate(bits);
        CHECK(result.evaluate(bits) == doctest::Approx(r * r));
    }
}

TEST_CASE("substitute is linear and passes constants through") {
    const ContinuousPoly f =
        ContinuousPoly::variable("x") + ContinuousPoly::constant(7.0);
    const BinaryPoly replacement(2, {{{1}, 1.0}});
    const BinaryPoly result = substitute(f, {{"x", replacement}});
    CHECK(result == BinaryPoly(2, {{{1}, 1.0}, {{}, 7.0}}));
}

TEST_CASE("substitute rejects unreplaced variables") {
    const ContinuousPoly f = ContinuousPoly::variable("x") * ContinuousPoly::variable("y");
    CHECK_THROWS_AS(substitute(f, {{"x", BinaryPoly::bit(1, 0)}}), DomainError);
}

TEST_CASE("ring laws hold under the evaluation oracle") {
    std::mt19937_64 rng(20240901);
    for (int round = 0; round < 25; ++round) {
        const std::uint32_t bits = 4;
        const BinaryPoly a = random_binary(rng, bits, 5);
        const BinaryPoly b = random_binary(rng, bits, 5);
        const BinaryPoly c = random_binary(rng, bits, 5);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        const BinaryPoly left = a * (b + c);
        const BinaryPoly right = a * b + a * c;
        CHECK(left == right);
        for (std::uint64_t mask = 0; mask < (1u << bits); ++mask) {
            const std::vector<int> assignment = bits_from_mask(mask, bits);
            CHECK(left.evaluate(assignment) ==
                  doctest::Approx(a.evaluate(assignment) *
                                  (b.evaluate(assignment) + c.evaluate(assignment)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("binary and spin squares agree with squared evaluations") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 10; ++round) {
        const std::uint32_t bits = 10;
        const BinaryPoly p = random_binary(rng, bits, 6);
        const BinaryPoly square = p * p;
        const SpinPoly s = random_spin(rng, 6, 5);
        const SpinPoly s_square = s * s;
        for (int probe = 0; probe < 40; ++probe) {
            const std::uint64_t mask = rng();
            const std::vector<int> assignment = bits_from_mask(mask, bits);
            const double value = p.evaluate(assignment);
            CHECK(square.evaluate(assignment) ==
                  doctest::Approx(value * value).epsilon(1e-12));
            const std::vector<int> spins = spins_from_mask(mask, 6);
            const double spin_value = s.evaluate(spins);
            CHECK(s_square.evaluate(spins) ==
                  doctest::Approx(spin_value * spin_value).epsilon(1e-12));
        }
    }
}

TEST_CASE("canonical form is stable under re-adding terms") {
    BinaryPoly p(3);
    p.add_term({2, 0, 2}, 1.5); // duplicates collapse
    p.add_term({0, 2}, -1.5);   // and cancel exactly
    CHECK(p.is_zero());
    CHECK(p.degree() == 0);
}

TEST_CASE("degree reporting") {
    const BinaryPoly p(4, {{{0, 1, 2}, 1.0}, {{3}, 2.0}});
    CHECK(p.degree() == 3);
    CHECK(BinaryPoly::constant(4, 3.0).degree() == 0);
    const ContinuousPoly r = rosenbrock();
    CHECK(r.degree() == 4);
}

TEST_CASE("term capacity guard trips explicitly") {
    // a has 2^12 terms on bits 0..11, b has 2^11 terms on bits 12..22; the
    // distributed product would hold 2^23 > 2^22 distinct terms.
    BinaryPoly a = BinaryPoly::constant(23, 1.0);
    for (std::uint32_t i = 0; i < 12; ++i) {
        a = a * BinaryPoly(23, {{{}, 1.0}, {{i}, 1.0}});
    }
    BinaryPoly b = BinaryPoly::constant(23, 1.0);
    for (std::uint32_t i = 12; i < 23; ++i) {
        b = b * BinaryPoly(23, {{{}, 1.0}, {{i}, 1.0}});
    }
    CHECK(a.terms().size() == 4096);
    CHECK(b.terms().size() == 2048);
    CHECK_THROWS_AS(a * b, CapacityError);
}
