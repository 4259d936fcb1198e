#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "dseq/errors.hpp"

namespace dseq {

/// A binary sequence mapped to +1/-1 values (1 -> +1, 0 -> -1).
struct BipolarSequence {
    std::vector<std::int8_t> values;
};

inline BipolarSequence to_bipolar(const std::vector<std::uint8_t>& bits) {
    if (bits.empty())
        throw config_error("to_bipolar: empty sequence");
    BipolarSequence s;
    s.values.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        s.values[i] = static_cast<std::int8_t>(2 * bits[i] - 1);
    return s;
}

/// Cyclic autocorrelation of a +1/-1 sequence, held exactly: numerator(k) is
/// the integer n*c(k), i.e. the sum over j of a_j * a_{j+k} with the index
/// wrapping mod n. Division happens only when a caller asks for c(k).
///
/// Invariants: numerator(0) == n, |numerator(k)| <= n, numerator(k) ==
/// numerator(n-k), and numerator(k) always has the same parity as n.
class AutocorrelationProfile {
public:
    AutocorrelationProfile(std::vector<std::int64_t> numerators, std::uint64_t n)
        : num_(std::move(numerators)), n_(n) {}

    std::uint64_t length() const { return n_; }
    const std::vector<std::int64_t>& numerators() const { return num_; }
    std::int64_t numerator(std::size_t k) const { return num_[k]; }
    double c(std::size_t k) const { return static_cast<double>(num_[k]) / static_cast<double>(n_); }

private:
    std::vector<std::int64_t> num_;
    std::uint64_t n_;
};

/// Compute the full cyclic autocorrelation profile.
///
/// The sequence is packed into 64-bit words; a_j * a_{j+k} is +1 exactly when
/// the underlying bits agree, so n*c(k) = n - 2*popcount(seq XOR rot_k(seq)).
/// Rotated windows are read out of a doubled bit array. This is a different
/// route from the obvious O(n^2) sum of products, which the tests keep as an
/// independent reference.
inline AutocorrelationProfile autocorrelation(const BipolarSequence& seq) {
    const std::size_t n = seq.values.size();
    if (n < 2)
        throw config_error("autocorrelation: need length >= 2, got " + std::to_string(n));

    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> base(words, 0);
    std::vector<std::uint64_t> doubled(2 * words + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (seq.values[i] > 0) {
            base[i / 64] |= 1ull << (i % 64);
            doubled[i / 64] |= 1ull << (i % 64);
            doubled[(i + n) / 64] |= 1ull << ((i + n) % 64);
        }
    }
    const std::uint64_t tail_mask = (n % 64) ? ((1ull << (n % 64)) - 1) : ~0ull;

    std::vector<std::int64_t> num(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t q = k / 64;
        const unsigned r = k % 64;
        std::uint64_t diff = 0;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t window = doubled[q + i] >> r;
            if (r) window |= doubled[q + i + 1] << (64 - r);
            std::uint64_t x = base[i] ^ window;
            if (i + 1 == words) x &= tail_mask;
            diff += static_cast<std::uint64_t>(std::popcount(x));
        }
        num[k] = static_cast<std::int64_t>(n) - 2 * static_cast<std::int64_t>(diff);
    }
    return AutocorrelationProfile(std::move(num), n);
}

inline AutocorrelationProfile autocorrelation_of_bits(const std::vector<std::uint8_t>& bits) {
    return autocorrelation(to_bipolar(bits));
}

/// R = 1 - mean over k != 0 of |c(k)|. 1 for ideal noise, 0 for a constant
/// (or otherwise fully correlated) sequence.
inline double randomness_measure(const AutocorrelationProfile& profile) {
    const std::uint64_t n = profile.length();
    std::int64_t sum_abs = 0;
    for (std::size_t k = 1; k < n; ++k) sum_abs += std::llabs(profile.numerator(k));
    return 1.0 - static_cast<double>(sum_abs) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// Largest |c(k)| over k != 0, with the smallest attaining lag.
struct OffPeak {
    double value = 0.0;            // |c(argmax)|
    std::int64_t abs_numerator = 0; // n * value, exact
    std::uint64_t lag = 0;
};

inline OffPeak max_offpeak(const AutocorrelationProfile& profile) {
    const std::uint64_t n = profile.length();
    std::int64_t best = -1;
    std::uint64_t arg = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const std::int64_t a = std::llabs(profile.numerator(k));
        if (a > best) {
            best = a;
            arg = k;
        }
    }
    return OffPeak{static_cast<double>(best) / static_cast<double>(n), best, arg};
}

/// I = 1 / max off-peak |c(k)|. A vanishing off-peak (possible only for even
/// lengths) reports as +infinity, the distinguished "nothing left to improve"
/// value.
inline double improvement_factor(const OffPeak& peak) {
    if (peak.abs_numerator == 0) return std::numeric_limits<double>::infinity();
    return 1.0 / peak.value;
}

inline double improvement_factor(const AutocorrelationProfile& profile) {
    return improvement_factor(max_offpeak(profile));
}

/// The headline numbers for one sequence.
struct MetricsReport {
    double randomness_measure = 0.0;
    double max_offpeak = 0.0;
    double improvement_factor = 0.0; // +inf when the off-peak vanishes
    std::uint64_t offpeak_argmax = 0;
};

inline MetricsReport measure(const AutocorrelationProfile& profile) {
    const OffPeak peak = max_offpeak(profile);
    return MetricsReport{randomness_measure(profile), peak.value, improvement_factor(peak), peak.lag};
}

inline MetricsReport measure_bits(const std::vector<std::uint8_t>& bits) {
    return measure(autocorrelation_of_bits(bits));
}

} // namespace dseq
