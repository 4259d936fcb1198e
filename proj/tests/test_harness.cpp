#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include <dseq/harness.hpp>
#include <dseq/reports.hpp>

#include "helpers.hpp"

using namespace dseq;

namespace {

SweepConfig small_config(std::uint64_t seed) {
    // Prime 53 is maximal: period 52, here split into 13 blocks of 4.
    SweepConfig cfg{PrimeModulus(53), BlockPartition::of(52, 4), {0, 1, 2, 3}, 8, seed, "small"};
    return cfg;
}

bool reports_equal(const SweepReport& a, const SweepReport& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const SweepRow& x = a.rows[i];
        const SweepRow& y = b.rows[i];
        if (x.n_perms != y.n_perms || x.trials != y.trials) return false;
        if (x.mean_max_offpeak != y.mean_max_offpeak) return false;
        if (x.std_max_offpeak != y.std_max_offpeak) return false;
        if (x.min_max_offpeak != y.min_max_offpeak) return false;
        if (x.max_max_offpeak != y.max_max_offpeak) return false;
        if (x.mean_improvement_factor != y.mean_improvement_factor) return false;
        if (x.mean_abs_c != y.mean_abs_c) return false;
    }
    return true;
}

} // namespace

TEST_CASE("presets describe the documented partitions") {
    CHECK(table1_preset().partition.block_size == 22);
    CHECK(table1_preset().partition.block_count == 58);
    CHECK(table2_preset().partition.block_size == 4);
    CHECK(table2_preset().partition.block_count == 319);
    CHECK(figure9_preset().partition.block_size == 19);
    CHECK(figure9_preset().partition.block_count == 94);
    CHECK(figure10_preset().partition.block_size == 38);
    CHECK(figure10_preset().partition.block_count == 47);
    CHECK(table2_preset().perm_counts.back() == 319);
    CHECK(table1_preset().trials == 100);

    const auto counts = table1_preset().perm_counts;
    REQUIRE(counts.size() == 12);
    for (std::uint64_t n = 0; n <= 10; ++n) CHECK(counts[n] == n);
    CHECK(counts.back() == 58);

    CHECK(preset_by_name("fig9").partition.block_count == 94);
    CHECK_THROWS_AS(preset_by_name("table3"), config_error);
}

TEST_CASE("per-trial seeds differ across both axes") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t n = 0; n < 5; ++n)
        for (std::uint64_t t = 0; t < 50; ++t) seen.insert(trial_seed(9001, n, t));
    CHECK(seen.size() == 250);
}

TEST_CASE("sweep is deterministic and independent of worker count") {
    const SweepReport one = run_sweep(small_config(77), 1);
    const SweepReport again = run_sweep(small_config(77), 1);
    const SweepReport parallel = run_sweep(small_config(77), 4);
    CHECK(reports_equal(one, again));
    CHECK(reports_equal(one, parallel));
    CHECK_FALSE(reports_equal(one, run_sweep(small_config(78), 1)));

    // Serialized reports must match byte for byte as well.
    CHECK(sweep_csv(one) == sweep_csv(parallel));
    CHECK(lag_curve_csv(one) == lag_curve_csv(parallel));
    CHECK(sweep_report_json(one, "x").dump() == sweep_report_json(parallel, "x").dump());
}

TEST_CASE("unpermuted row has no variance") {
    const SweepReport report = run_sweep(small_config(3), 2);
    const SweepRow& row0 = report.rows.at(0);
    CHECK(row0.n_perms == 0);
    CHECK(row0.mean_max_offpeak == 1.0);
    CHECK(row0.std_max_offpeak == 0.0);
    CHECK(row0.min_max_offpeak == 1.0);
    CHECK(row0.max_max_offpeak == 1.0);
    CHECK(row0.mean_improvement_factor == 1.0);
}

TEST_CASE("sweep validates its configuration") {
    SweepConfig bad = small_config(1);
    bad.perm_counts = {14}; // block count is 13
    CHECK_THROWS_AS(run_sweep(bad), config_error);

    // 2 has order 8 modulo 17: not maximal.
    SweepConfig nonmax{PrimeModulus(17), BlockPartition::of(8, 2), {0}, 4, 0, "x"};
    CHECK_THROWS_AS(run_sweep(nonmax), config_error);

    SweepConfig mismatch{PrimeModulus(53), BlockPartition::of(40, 4), {0}, 4, 0, "x"};
    CHECK_THROWS_AS(run_sweep(mismatch), config_error);

    SweepConfig none = small_config(1);
    none.trials = 0;
    CHECK_THROWS_AS(run_sweep(none), config_error);
}

TEST_CASE("default permutation-count grid") {
    CHECK(default_perm_counts(58) ==
          std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 58});
    CHECK(default_perm_counts(6) == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6});
    CHECK(default_perm_counts(10) == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("prime sweep lists maximal primes ascending with their scores") {
    const auto records = prime_sweep(20);
    REQUIRE(records.size() == 5);
    CHECK(records[0].prime == 3);
    CHECK(records[0].period == 2);
    CHECK(records[0].randomness == 0.0); // the "01" expansion
    CHECK(records[1].prime == 5);
    CHECK(records[4].prime == 19);

    // Spot-check R of 13 against the brute-force oracle.
    const auto bits = generate_dsequence(PrimeModulus(13)).bits;
    const auto nums = testutil::brute_numerators(bits);
    std::int64_t sum = 0;
    for (std::size_t k = 1; k < nums.size(); ++k) sum += std::llabs(nums[k]);
    const double expected = 1.0 - static_cast<double>(sum) / (12.0 * 11.0);
    const auto it = std::find_if(records.begin(), records.end(),
                                 [](const PrimeRandomness& r) { return r.prime == 13; });
    REQUIRE(it != records.end());
    CHECK(it->randomness == expected);

    CHECK_THROWS_AS(prime_sweep(2), config_error);
}

TEST_CASE("longer periods trend toward higher randomness scores") {
    const auto records = prime_sweep(200);
    double low = 0.0, high = 0.0;
    int nlow = 0, nhigh = 0;
    for (const auto& r : records) {
        if (r.prime <= 50) {
            low += r.randomness;
            ++nlow;
        } else if (r.prime >= 100) {
            high += r.randomness;
            ++nhigh;
        }
    }
    REQUIRE(nlow > 0);
    REQUIRE(nhigh > 0);
    CHECK(high / nhigh > low / nlow);
}

TEST_CASE("baseline with a prime source reproduces the standard sweep") {
    const SweepConfig cfg = small_config(55);
    const SweepReport direct = run_sweep(cfg, 2);
    const SweepReport via_baseline = baseline_sweep(BaselineSource::dsequence(53), cfg.partition,
                                                    cfg.perm_counts, cfg.trials, cfg.master_seed, 2);
    CHECK(reports_equal(direct, via_baseline));
    CHECK(via_baseline.source == "dsequence");
}

TEST_CASE("host-entropy baseline runs and never shows the structural peak") {
    const BaselineSource source = BaselineSource::os_rng(256);
    const SweepReport report =
        baseline_sweep(source, BlockPartition::of(256, 16), {0, 2}, 10, 1, 2);
    CHECK(report.source == "os_rng");
    CHECK(report.prime == 0);
    // A 256-digit random draw essentially never autocorrelates perfectly.
    CHECK(report.rows.at(0).mean_max_offpeak < 0.5);
    CHECK(report.rows.at(0).std_max_offpeak >= 0.0);
}

TEST_CASE("baseline validates length against the partition") {
    CHECK_THROWS_AS(
        baseline_sweep(BaselineSource::os_rng(100), BlockPartition::of(52, 4), {0}, 2, 0),
        config_error);
}

TEST_CASE("sweep rows keep the improvement identity on their trial means") {
    // mean(1/x) >= 1/mean(x) by convexity; equality only for constant rows.
    const SweepReport report = run_sweep(small_config(10), 1);
    for (const SweepRow& row : report.rows) {
        REQUIRE(row.mean_improvement_factor >= 1.0 / row.mean_max_offpeak - 1e-12);
        REQUIRE(row.min_max_offpeak <= row.mean_max_offpeak);
        REQUIRE(row.mean_max_offpeak <= row.max_max_offpeak);
    }
}

TEST_CASE("lag curves carry one value per lag and start at one") {
    const SweepReport report = run_sweep(small_config(4), 1);
    for (const SweepRow& row : report.rows) {
        REQUIRE(row.mean_abs_c.size() == 52);
        CHECK(row.mean_abs_c[0] == 1.0); // k = 0 is always a perfect match
        for (double v : row.mean_abs_c) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}
