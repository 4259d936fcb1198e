#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dseq/errors.hpp"
#include "dseq/modular.hpp"

namespace dseq {

/// An odd prime modulus p together with the distinct prime factors of p-1
/// (needed for multiplicative-order and primitive-root computations).
/// Construction validates primality, so a PrimeModulus is always well formed.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t value) : value_(value) {
        if (!is_prime_u64(value))
            throw config_error("not prime: " + std::to_string(value));
        if (value < 3 || value % 2 == 0)
            throw config_error("modulus must be an odd prime >= 3, got " + std::to_string(value));
        cofactor_primes_ = distinct_prime_factors(value - 1);
    }

    std::uint64_t value() const { return value_; }

    /// Distinct prime factors of value-1, ascending.
    const std::vector<std::uint64_t>& cofactor_primes() const { return cofactor_primes_; }

private:
    std::uint64_t value_;
    std::vector<std::uint64_t> cofactor_primes_;
};

/// Smallest t > 0 with 2^t == 1 (mod p). Always divides p-1.
inline std::uint64_t multiplicative_order(const PrimeModulus& p) {
    std::uint64_t order = p.value() - 1;
    for (std::uint64_t q : p.cofactor_primes()) {
        while (order % q == 0 && pow_mod(2, order / q, p.value()) == 1)
            order /= q;
    }
    return order;
}

/// True iff 2 generates the whole multiplicative group mod p,
/// i.e. the reciprocal sequence of p has the full period p-1.
inline bool is_primitive_root_2(const PrimeModulus& p) {
    for (std::uint64_t q : p.cofactor_primes()) {
        if (pow_mod(2, (p.value() - 1) / q, p.value()) == 1) return false;
    }
    return true;
}

/// One full period of the binary reciprocal sequence of a prime p:
/// digit i (1-based) is (2^i mod p) mod 2. bits[0] holds digit 1;
/// the storage index is shifted down by one from the digit index.
struct DSequence {
    PrimeModulus prime;
    std::vector<std::uint8_t> bits; // exactly one period
    std::uint64_t period;           // multiplicative order of 2 mod p
    bool maximal;                   // period == p-1
};

/// Generate the sequence by the doubling recurrence
///   b(0) = 1,  b(i+1) = 2 b(i) mod p,  digit(i) = b(i) mod 2,
/// producing exactly one period. Callers needing more digits extend cyclically.
inline DSequence generate_dsequence(const PrimeModulus& p) {
    const std::uint64_t period = multiplicative_order(p);
    std::vector<std::uint8_t> bits(period);
    std::uint64_t b = 1;
    for (std::uint64_t i = 0; i < period; ++i) {
        b = (2 * b) % p.value();
        bits[i] = static_cast<std::uint8_t>(b & 1);
    }
    return DSequence{p, std::move(bits), period, period == p.value() - 1};
}

/// First n_digits binary digits of the fractional expansion of 1/p,
/// computed by literal base-2 long division: at each step the next digit is
/// the quotient of 2*remainder by p. Independent route from the recurrence
/// generator above; the two must agree digit for digit.
inline std::vector<std::uint8_t> long_division_digits(const PrimeModulus& p, std::uint64_t n_digits) {
    if (n_digits < 1)
        throw config_error("long_division_digits: need at least one digit");
    std::vector<std::uint8_t> digits(n_digits);
    std::uint64_t remainder = 1;
    for (std::uint64_t i = 0; i < n_digits; ++i) {
        remainder *= 2;
        digits[i] = static_cast<std::uint8_t>(remainder / p.value());
        remainder %= p.value();
    }
    return digits;
}

struct DigitCounts {
    std::uint64_t zeros = 0;
    std::uint64_t ones = 0;
};

inline DigitCounts digit_frequency(const std::vector<std::uint8_t>& bits) {
    if (bits.empty())
        throw config_error("digit_frequency: empty sequence");
    DigitCounts counts;
    for (std::uint8_t b : bits) (b ? counts.ones : counts.zeros)++;
    return counts;
}

/// All primes p <= limit whose reciprocal sequence is maximal length, ascending.
inline std::vector<PrimeModulus> find_maximal_primes(std::uint64_t limit) {
    std::vector<PrimeModulus> out;
    for (std::uint64_t n = 3; n <= limit; n += 2) {
        if (!is_prime_u64(n)) continue;
        PrimeModulus p(n);
        if (is_primitive_root_2(p)) out.push_back(std::move(p));
    }
    return out;
}

} // namespace dseq
