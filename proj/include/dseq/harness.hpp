#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dseq/errors.hpp"
#include "dseq/metrics.hpp"
#include "dseq/permute.hpp"
#include "dseq/rng.hpp"
#include "dseq/sequence.hpp"

namespace dseq {

/// Seed for one (n_perms, trial) cell:
///   splitmix64(master_seed XOR (n_perms * 0x9E3779B97F4A7C15 + trial))
/// with wraparound 64-bit arithmetic and zero-based trial indices. Every cell
/// gets an independent engine, so trials can run on any worker in any order
/// without changing a single output bit.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n_perms, std::uint64_t trial) {
    return splitmix64_once(master_seed ^ (n_perms * kGolden + trial));
}

/// One permutation-count sweep over a maximal-length reciprocal sequence.
struct SweepConfig {
    PrimeModulus prime;
    BlockPartition partition;
    std::vector<std::uint64_t> perm_counts; // n = 0 means the unpermuted sequence
    std::uint32_t trials = 100;
    std::uint64_t master_seed = 0;
    std::string label;
};

/// Aggregates for one permutation count.
struct SweepRow {
    std::uint64_t n_perms = 0;
    std::uint32_t trials = 0;
    double mean_max_offpeak = 0.0;
    double std_max_offpeak = 0.0;
    double min_max_offpeak = 0.0;
    double max_max_offpeak = 0.0;
    double mean_improvement_factor = 0.0;
    std::vector<double> mean_abs_c; // per-lag mean of |c(k)| across trials, k = 0..len-1
};

struct SweepReport {
    std::string label;
    std::string source;    // "dsequence" or "os_rng"
    std::uint64_t prime = 0; // 0 for os_rng input
    std::uint64_t sequence_length = 0;
    BlockPartition partition;
    std::vector<std::uint64_t> perm_counts;
    std::uint32_t trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<SweepRow> rows;
};

namespace detail {

struct TrialOutcome {
    std::int64_t max_abs_num = 0;
    std::vector<std::int64_t> abs_num; // |n*c(k)| per lag
};

inline TrialOutcome run_trial(const std::vector<std::uint8_t>& bits, const BlockPartition& partition,
                              std::uint64_t n_perms, SplitMix64& engine) {
    const std::vector<std::uint8_t>* input = &bits;
    std::vector<std::uint8_t> permuted;
    if (n_perms > 0) {
        const PermutationSchedule schedule =
            random_schedule(static_cast<std::size_t>(n_perms), partition.block_size, engine);
        permuted = apply_schedule(bits, partition, schedule);
        input = &permuted;
    }
    const AutocorrelationProfile profile = autocorrelation_of_bits(*input);
    TrialOutcome out;
    out.abs_num.resize(profile.length());
    for (std::size_t k = 0; k < profile.length(); ++k)
        out.abs_num[k] = std::llabs(profile.numerator(k));
    const OffPeak peak = max_offpeak(profile);
    out.max_abs_num = peak.abs_numerator;
    return out;
}

/// Shared sweep machinery. provider(trial) supplies the input sequence for a
/// trial; it is called once per (n_perms, trial) cell and must be
/// thread-safe. Aggregation folds outcomes in (n_perms, trial) order after
/// all workers have finished, so the report is byte-identical for any worker
/// count.
inline SweepReport run_sweep_impl(const std::function<std::vector<std::uint8_t>(std::uint32_t)>& provider,
                                  const BlockPartition& partition,
                                  const std::vector<std::uint64_t>& perm_counts, std::uint32_t trials,
                                  std::uint64_t master_seed, unsigned workers, std::string label,
                                  std::string source, std::uint64_t prime) {
    if (trials < 1) throw config_error("sweep needs at least one trial");
    for (std::uint64_t n : perm_counts) {
        if (n > partition.block_count)
            throw config_error("permutation count " + std::to_string(n) + " exceeds block count " +
                               std::to_string(partition.block_count));
    }

    const std::size_t total = perm_counts.size() * trials;
    std::vector<TrialOutcome> outcomes(total);
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= total || failed.load()) break;
                const std::uint64_t n = perm_counts[i / trials];
                const std::uint32_t t = static_cast<std::uint32_t>(i % trials);
                SplitMix64 engine(trial_seed(master_seed, n, t));
                const std::vector<std::uint8_t> bits = provider(t);
                if (bits.size() != partition.sequence_length)
                    throw config_error("input length " + std::to_string(bits.size()) +
                                       " does not match partition length " +
                                       std::to_string(partition.sequence_length));
                outcomes[i] = run_trial(bits, partition, n, engine);
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepReport report;
    report.label = std::move(label);
    report.source = std::move(source);
    report.prime = prime;
    report.sequence_length = partition.sequence_length;
    report.partition = partition;
    report.perm_counts = perm_counts;
    report.trials = trials;
    report.master_seed = master_seed;
    const double len = static_cast<double>(partition.sequence_length);
    for (std::size_t ci = 0; ci < perm_counts.size(); ++ci) {
        SweepRow row;
        row.n_perms = perm_counts[ci];
        row.trials = trials;
        std::int64_t sum_max = 0;
        std::int64_t min_max = outcomes[ci * trials].max_abs_num;
        std::int64_t max_max = min_max;
        double sum_if = 0.0;
        std::vector<std::int64_t> lag_sums(partition.sequence_length, 0);
        for (std::uint32_t t = 0; t < trials; ++t) {
            const TrialOutcome& o = outcomes[ci * trials + t];
            sum_max += o.max_abs_num;
            min_max = std::min(min_max, o.max_abs_num);
            max_max = std::max(max_max, o.max_abs_num);
            sum_if += (o.max_abs_num == 0) ? std::numeric_limits<double>::infinity()
                                           : len / static_cast<double>(o.max_abs_num);
            for (std::size_t k = 0; k < lag_sums.size(); ++k) lag_sums[k] += o.abs_num[k];
        }
        row.mean_max_offpeak = static_cast<double>(sum_max) / (static_cast<double>(trials) * len);
        row.min_max_offpeak = static_cast<double>(min_max) / len;
        row.max_max_offpeak = static_cast<double>(max_max) / len;
        row.mean_improvement_factor = sum_if / static_cast<double>(trials);
        double var = 0.0;
        for (std::uint32_t t = 0; t < trials; ++t) {
            const double x = static_cast<double>(outcomes[ci * trials + t].max_abs_num) / len;
            var += (x - row.mean_max_offpeak) * (x - row.mean_max_offpeak);
        }
        row.std_max_offpeak = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
        row.mean_abs_c.resize(lag_sums.size());
        for (std::size_t k = 0; k < lag_sums.size(); ++k)
            row.mean_abs_c[k] = static_cast<double>(lag_sums[k]) / (static_cast<double>(trials) * len);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace detail

/// Run a seeded Monte Carlo sweep over the configured permutation counts.
/// Each (n, trial) cell draws a fresh schedule of n random permutations from
/// its own derived engine, applies it to the reciprocal sequence, and
/// measures the autocorrelation profile. Deterministic for a given config,
/// independent of worker count.
inline SweepReport run_sweep(const SweepConfig& config, unsigned workers = 1) {
    if (!is_primitive_root_2(config.prime))
        throw config_error("prime " + std::to_string(config.prime.value()) +
                           " does not give a maximal-length sequence");
    const DSequence seq = generate_dsequence(config.prime);
    if (seq.period != config.partition.sequence_length)
        throw config_error("partition length " + std::to_string(config.partition.sequence_length) +
                           " does not match sequence period " + std::to_string(seq.period));
    auto provider = [&seq](std::uint32_t) { return seq.bits; };
    return detail::run_sweep_impl(provider, config.partition, config.perm_counts, config.trials,
                                  config.master_seed, workers, config.label, "dsequence",
                                  config.prime.value());
}

/// Default grid of permutation counts: 0..10 plus the full block count.
inline std::vector<std::uint64_t> default_perm_counts(std::uint64_t block_count) {
    std::vector<std::uint64_t> counts;
    for (std::uint64_t n = 0; n <= std::min<std::uint64_t>(10, block_count); ++n) counts.push_back(n);
    if (block_count > 10) counts.push_back(block_count);
    return counts;
}

namespace detail {

inline SweepConfig make_preset(std::uint64_t prime, std::uint64_t block_size, std::string label) {
    PrimeModulus p(prime);
    const std::uint64_t period = multiplicative_order(p);
    BlockPartition partition = BlockPartition::of(period, block_size);
    SweepConfig cfg{std::move(p), partition, default_perm_counts(partition.block_count), 100, 0,
                    std::move(label)};
    return cfg;
}

} // namespace detail

/// 1276-digit sequence of 1277 cut into 58 blocks of 22 digits (even block
/// count, so a single shared permutation cannot move the half-period peak).
inline SweepConfig table1_preset() { return detail::make_preset(1277, 22, "table1"); }

/// 1276-digit sequence of 1277 cut into 319 blocks of 4 digits (odd block
/// count; small blocks, less room to improve).
inline SweepConfig table2_preset() { return detail::make_preset(1277, 4, "table2"); }

/// 1786-digit sequence of 1787 cut into 94 blocks of 19 digits. The block
/// count is even, so the n = 1 column stays pinned at 1.0 like table1's.
inline SweepConfig figure9_preset() { return detail::make_preset(1787, 19, "fig9"); }

/// 1786-digit sequence of 1787 cut into 47 blocks of 38 digits (odd count).
inline SweepConfig figure10_preset() { return detail::make_preset(1787, 38, "fig10"); }

/// Preset lookup by CLI name. Throws config_error for unknown names.
inline SweepConfig preset_by_name(const std::string& name) {
    if (name == "table1") return table1_preset();
    if (name == "table2") return table2_preset();
    if (name == "fig9") return figure9_preset();
    if (name == "fig10") return figure10_preset();
    throw config_error("unknown preset '" + name + "' (expected table1, table2, fig9, or fig10)");
}

/// Randomness measure of the unpermuted reciprocal sequence of one prime.
struct PrimeRandomness {
    std::uint64_t prime = 0;
    std::uint64_t period = 0;
    double randomness = 0.0;
};

/// R for every maximal prime <= limit, ascending.
inline std::vector<PrimeRandomness> prime_sweep(std::uint64_t limit) {
    if (limit < 3) throw config_error("prime_sweep: limit must be >= 3");
    std::vector<PrimeRandomness> out;
    for (const PrimeModulus& p : find_maximal_primes(limit)) {
        const DSequence seq = generate_dsequence(p);
        const double r = randomness_measure(autocorrelation_of_bits(seq.bits));
        out.push_back(PrimeRandomness{p.value(), seq.period, r});
    }
    return out;
}

/// Where the input sequence of a baseline sweep comes from.
enum class BaselineKind { dsequence, os_rng };

struct BaselineSource {
    BaselineKind kind = BaselineKind::os_rng;
    std::uint64_t length = 0;
    std::uint64_t prime = 0; // set for kind == dsequence

    static BaselineSource os_rng(std::uint64_t length) {
        return BaselineSource{BaselineKind::os_rng, length, 0};
    }
    static BaselineSource dsequence(std::uint64_t prime) {
        PrimeModulus p(prime);
        return BaselineSource{BaselineKind::dsequence, multiplicative_order(p), prime};
    }
};

/// Fresh host-entropy bits, one draw per call.
inline std::vector<std::uint8_t> os_random_bits(std::uint64_t length) {
    try {
        std::random_device rd;
        std::vector<std::uint8_t> bits(length);
        std::uint32_t word = 0;
        unsigned have = 0;
        for (std::uint64_t i = 0; i < length; ++i) {
            if (have == 0) {
                word = rd();
                have = 32;
            }
            bits[i] = static_cast<std::uint8_t>(word & 1);
            word >>= 1;
            --have;
        }
        return bits;
    } catch (const std::exception& e) {
        throw env_error(std::string("host entropy source unavailable: ") + e.what());
    }
}

/// Same pipeline as run_sweep, with the input drawn per trial from the chosen
/// source. The os_rng flavour is the one non-reproducible operation in the
/// library: schedules are still seeded, the input bits are not.
inline SweepReport baseline_sweep(const BaselineSource& source, const BlockPartition& partition,
                                  const std::vector<std::uint64_t>& perm_counts, std::uint32_t trials,
                                  std::uint64_t master_seed, unsigned workers = 1) {
    if (source.length != partition.sequence_length)
        throw config_error("source length " + std::to_string(source.length) +
                           " does not match partition length " +
                           std::to_string(partition.sequence_length));
    if (source.kind == BaselineKind::dsequence) {
        SweepConfig cfg{PrimeModulus(source.prime), partition, perm_counts, trials, master_seed,
                        "baseline"};
        return run_sweep(cfg, workers);
    }
    auto provider = [length = source.length](std::uint32_t) { return os_random_bits(length); };
    return detail::run_sweep_impl(provider, partition, perm_counts, trials, master_seed, workers,
                                  "baseline", "os_rng", 0);
}

} // namespace dseq
