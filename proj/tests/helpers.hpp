#pragma once

// Shared test-only utilities: an independent O(n^2) autocorrelation oracle,
// shift-register reference sequences, a temp-dir guard, and a subprocess
// runner for CLI tests.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace testutil {

/// Brute-force cyclic autocorrelation numerators n*c(k) over the +/-1 mapping
/// (1 -> +1, 0 -> -1). Deliberately naive: the production code must agree
/// with this exactly.
inline std::vector<std::int64_t> brute_numerators(const std::vector<std::uint8_t>& bits) {
    const std::size_t n = bits.size();
    std::vector<int> pm(n);
    for (std::size_t i = 0; i < n; ++i) pm[i] = bits[i] ? 1 : -1;
    std::vector<std::int64_t> num(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < n; ++j) s += pm[j] * pm[(j + k) % n];
        num[k] = s;
    }
    return num;
}

/// Maximal-length shift-register sequence from the tap recurrence
/// a(n) = a(n-3) XOR a(n-4) (feedback polynomial x^4 + x + 1), register
/// seeded 0001 so the first emitted window is 1,0,0,0. The period is
/// 2^4 - 1 = 15, not 2^4: a linear register that reaches the all-zero state
/// stays there, so that state is excluded and a k-stage register cycles
/// through at most 2^k - 1 states. Descriptions quoting period 2^k are off
/// by that excluded state.
inline std::vector<std::uint8_t> msequence_15() {
    std::vector<std::uint8_t> bits = {1, 0, 0, 0};
    for (std::size_t i = 4; i < 15; ++i)
        bits.push_back(static_cast<std::uint8_t>(bits[i - 3] ^ bits[i - 4]));
    return bits;
}

/// Same idea one degree down: a(n) = a(n-2) XOR a(n-3) (x^3 + x + 1),
/// period 7.
inline std::vector<std::uint8_t> msequence_7() {
    std::vector<std::uint8_t> bits = {1, 0, 0};
    for (std::size_t i = 3; i < 7; ++i)
        bits.push_back(static_cast<std::uint8_t>(bits[i - 2] ^ bits[i - 3]));
    return bits;
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(gen() & 1);
    return bits;
}

inline std::string bit_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    for (auto b : bits) s += b ? '1' : '0';
    return s;
}

inline std::vector<std::uint8_t> bits_of(const std::string& s) {
    std::vector<std::uint8_t> bits;
    for (char c : s) bits.push_back(c == '1' ? 1 : 0);
    return bits;
}

/// Self-deleting scratch directory.
struct TempDir {
    std::filesystem::path path;
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "dseq_test_XXXXXX").string();
        if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
        path = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

/// Run the CLI under test with the given argument string.
inline CommandResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DSEQ_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CommandResult result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string read_file(const std::filesystem::path& p) {
    FILE* f = std::fopen(p.string().c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open " + p.string());
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, got);
    std::fclose(f);
    return out;
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    FILE* f = std::fopen(p.string().c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + p.string());
    std::fwrite(content.data(), 1, content.size(), f);
    std::fclose(f);
}

} // namespace testutil
