#pragma once

#include <cstdint>
#include <limits>

namespace dseq {

/// Golden-ratio increment used by splitmix64 and by the harness seed derivation.
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// One application of the splitmix64 output function to x. Used both as the
/// engine step and to derive independent seeds from a master seed.
inline std::uint64_t splitmix64_once(std::uint64_t x) {
    std::uint64_t z = x + kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// splitmix64 engine. Identical seeds produce identical output streams on
/// every platform, which is the reproducibility contract every experiment in
/// this library rests on. The exact stream is pinned so other implementations
/// can replay it:
///
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
///   z = (z ^ z>>27) * 0x94D049BB133111EB; output z ^ z>>31
///
/// below(n) draws by rejection (discard outputs at or above the largest
/// multiple of n representable in 64 bits), so it is exactly uniform with no
/// modulo bias. Single-owner mutable state: never share one engine across
/// threads; derive one per worker instead.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t rem = (max % n + 1) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r <= max - rem) return r % n;
        }
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

} // namespace dseq
