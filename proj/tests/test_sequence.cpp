#include <catch2/catch_amalgamated.hpp>

#include <dseq/modular.hpp>
#include <dseq/sequence.hpp>

#include "helpers.hpp"

using namespace dseq;

TEST_CASE("primality check agrees with small known primes and composites") {
    const std::vector<std::uint64_t> primes = {2,  3,  5,  7,  11, 13, 17, 19,
                                               23, 1277, 1787, 104729};
    for (auto p : primes) CHECK(is_prime_u64(p));
    const std::vector<std::uint64_t> composites = {0, 1, 4, 9, 15, 21, 1275, 1276, 1278, 104730};
    for (auto c : composites) CHECK_FALSE(is_prime_u64(c));
    // Carmichael numbers are the classic trap for weak probabilistic checks.
    for (auto c : std::vector<std::uint64_t>{561, 1105, 1729, 2465, 2821, 6601})
        CHECK_FALSE(is_prime_u64(c));
}

TEST_CASE("modular helpers behave at 64-bit scale") {
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(pow_mod(2, 0, 7) == 1);
    const std::uint64_t big = 0xFFFFFFFFFFFFFFC5ull; // largest prime below 2^64
    CHECK(mul_mod(big - 1, big - 1, big) == 1);      // (-1)^2 mod p
    CHECK(pow_mod(2, big - 1, big) == 1);            // Fermat
    CHECK(distinct_prime_factors(12) == std::vector<std::uint64_t>{2, 3});
    CHECK(distinct_prime_factors(1276) == std::vector<std::uint64_t>{2, 11, 29});
}

TEST_CASE("modulus type validates its argument") {
    CHECK_THROWS_AS(PrimeModulus(4), config_error);
    CHECK_THROWS_WITH(PrimeModulus(4), Catch::Matchers::ContainsSubstring("not prime"));
    CHECK_THROWS_AS(PrimeModulus(2), config_error); // even: no binary expansion period
    CHECK_THROWS_AS(PrimeModulus(1), config_error);
    CHECK(PrimeModulus(13).value() == 13);
}

TEST_CASE("order of 2 and maximality") {
    CHECK(multiplicative_order(PrimeModulus(13)) == 12);
    CHECK(multiplicative_order(PrimeModulus(7)) == 3);
    CHECK(multiplicative_order(PrimeModulus(17)) == 8);
    CHECK(multiplicative_order(PrimeModulus(1277)) == 1276);
    CHECK(multiplicative_order(PrimeModulus(1787)) == 1786);
    CHECK(is_primitive_root_2(PrimeModulus(13)));
    CHECK_FALSE(is_primitive_root_2(PrimeModulus(7)));
    CHECK_FALSE(is_primitive_root_2(PrimeModulus(17)));
}

TEST_CASE("reciprocal sequence of 13 is exact") {
    const DSequence seq = generate_dsequence(PrimeModulus(13));
    CHECK(seq.period == 12);
    CHECK(seq.maximal);
    CHECK(testutil::bit_string(seq.bits) == "000100111011");
}

TEST_CASE("non-maximal prime still yields its short period") {
    const DSequence seq = generate_dsequence(PrimeModulus(7));
    CHECK(seq.period == 3);
    CHECK_FALSE(seq.maximal);
    CHECK(testutil::bit_string(seq.bits) == "001");
}

TEST_CASE("smallest prime gives the alternating two-digit expansion") {
    const DSequence seq = generate_dsequence(PrimeModulus(3));
    CHECK(seq.period == 2);
    CHECK(testutil::bit_string(seq.bits) == "01");
}

TEST_CASE("doubling recurrence matches literal long division for every prime below 2000") {
    for (std::uint64_t p = 3; p < 2000; p += 2) {
        if (!is_prime_u64(p)) continue;
        const DSequence seq = generate_dsequence(PrimeModulus(p));
        const auto digits = long_division_digits(PrimeModulus(p), seq.period);
        REQUIRE(seq.bits == digits);
    }
}

TEST_CASE("maximal sequences have exactly balanced digits") {
    for (std::uint64_t p : {3ull, 5ull, 11ull, 13ull, 19ull, 1277ull, 1787ull}) {
        const DSequence seq = generate_dsequence(PrimeModulus(p));
        REQUIRE(seq.maximal);
        const DigitCounts counts = digit_frequency(seq.bits);
        CHECK(counts.zeros == counts.ones);
        CHECK(counts.zeros + counts.ones == seq.period);
    }
}

TEST_CASE("second half of a maximal sequence is the complement of the first") {
    for (std::uint64_t p : {5ull, 11ull, 13ull, 19ull, 29ull, 1277ull}) {
        const DSequence seq = generate_dsequence(PrimeModulus(p));
        REQUIRE(seq.maximal);
        const std::uint64_t half = seq.period / 2;
        for (std::uint64_t i = 0; i < half; ++i)
            REQUIRE(static_cast<int>(seq.bits[i]) + static_cast<int>(seq.bits[i + half]) == 1);
    }
}

TEST_CASE("maximal prime enumeration") {
    const auto primes = find_maximal_primes(20);
    std::vector<std::uint64_t> values;
    for (const auto& p : primes) values.push_back(p.value());
    CHECK(values == std::vector<std::uint64_t>{3, 5, 11, 13, 19});
}

TEST_CASE("digit frequency rejects empty input") {
    CHECK_THROWS_AS(digit_frequency({}), config_error);
}
