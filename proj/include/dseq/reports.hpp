#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dseq/harness.hpp"
#include "dseq/metrics.hpp"
#include "dseq/stat_tests.hpp"

namespace dseq {

using json = nlohmann::ordered_json;

/// Full precision (%.15g, >= 12 significant digits) unless round_digits >= 0,
/// which switches to fixed decimals for table-style output.
inline std::string format_value(double v, int round_digits = -1) {
    char buf[64];
    if (round_digits >= 0)
        std::snprintf(buf, sizeof(buf), "%.*f", round_digits, v);
    else
        std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

/// CSV of one autocorrelation profile, one row per lag including k = 0.
inline std::string autocorrelation_csv(const AutocorrelationProfile& profile, int round_digits = -1) {
    std::string out = "k,c_k\n";
    for (std::size_t k = 0; k < profile.length(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_value(profile.c(k), round_digits);
        out += '\n';
    }
    return out;
}

/// One aggregate row per permutation count.
inline std::string sweep_csv(const SweepReport& report, int round_digits = -1) {
    std::string out = "n_perms,trials,mean_max_offpeak,std_max_offpeak,min,max,mean_improvement_factor\n";
    for (const SweepRow& row : report.rows) {
        out += std::to_string(row.n_perms);
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        out += format_value(row.mean_max_offpeak, round_digits);
        out += ',';
        out += format_value(row.std_max_offpeak, round_digits);
        out += ',';
        out += format_value(row.min_max_offpeak, round_digits);
        out += ',';
        out += format_value(row.max_max_offpeak, round_digits);
        out += ',';
        out += format_value(row.mean_improvement_factor, round_digits);
        out += '\n';
    }
    return out;
}

/// Long-format per-lag curve: every (n_perms, lag) pair on its own row.
inline std::string lag_curve_csv(const SweepReport& report, int round_digits = -1) {
    std::string out = "n_perms,k,mean_abs_c_k\n";
    for (const SweepRow& row : report.rows) {
        for (std::size_t k = 0; k < row.mean_abs_c.size(); ++k) {
            out += std::to_string(row.n_perms);
            out += ',';
            out += std::to_string(k);
            out += ',';
            out += format_value(row.mean_abs_c[k], round_digits);
            out += '\n';
        }
    }
    return out;
}

/// One row per maximal prime with the randomness measure of its sequence.
inline std::string primes_csv(const std::vector<PrimeRandomness>& records, int round_digits = -1) {
    std::string out = "prime,period,R\n";
    for (const PrimeRandomness& rec : records) {
        out += std::to_string(rec.prime);
        out += ',';
        out += std::to_string(rec.period);
        out += ',';
        out += format_value(rec.randomness, round_digits);
        out += '\n';
    }
    return out;
}

/// Provenance stamped into a metrics record when known. prime 0 means the
/// sequence did not come from a prime reciprocal.
struct MetricsContext {
    std::uint64_t prime = 0;
    std::optional<std::uint64_t> block_size;
    std::optional<std::uint64_t> n_perms;
};

inline json stat_test_json(const StatTestResult& result) {
    json j;
    j["test"] = result.test_name;
    j["statistic"] = result.statistic;
    j["p_value"] = result.p_value;
    j["pass"] = result.pass;
    j["applicable"] = result.applicable;
    j["low_confidence"] = result.low_confidence;
    return j;
}

/// Metrics record. Infinite improvement factors (a perfect sequence with all
/// off-peak correlations zero) serialize as null since JSON has no infinity.
inline json metrics_json(const MetricsReport& report, const MetricsContext& context,
                         const std::vector<StatTestResult>& tests) {
    json j;
    j["prime"] = context.prime ? json(context.prime) : json(nullptr);
    j["block_size"] = context.block_size ? json(*context.block_size) : json(nullptr);
    j["n_perms"] = context.n_perms ? json(*context.n_perms) : json(nullptr);
    j["R"] = report.randomness_measure;
    j["max_offpeak"] = report.max_offpeak;
    j["argmax_lag"] = report.offpeak_argmax;
    j["improvement_factor"] =
        std::isfinite(report.improvement_factor) ? json(report.improvement_factor) : json(nullptr);
    json arr = json::array();
    for (const StatTestResult& t : tests) arr.push_back(stat_test_json(t));
    j["stat_tests"] = arr;
    return j;
}

/// Full sweep report with the config embedded; `replay` is the CLI line that
/// regenerates this exact report.
inline json sweep_report_json(const SweepReport& report, const std::string& replay) {
    json j;
    j["label"] = report.label;
    j["source"] = report.source;
    j["prime"] = report.prime ? json(report.prime) : json(nullptr);
    j["sequence_length"] = report.sequence_length;
    j["partition"] = {{"block_size", report.partition.block_size},
                      {"block_count", report.partition.block_count}};
    j["perm_counts"] = report.perm_counts;
    j["trials"] = report.trials;
    j["master_seed"] = report.master_seed;
    j["deterministic"] = report.source != "os_rng";
    j["replay"] = replay;
    json rows = json::array();
    for (const SweepRow& row : report.rows) {
        json r;
        r["n_perms"] = row.n_perms;
        r["trials"] = row.trials;
        r["mean_max_offpeak"] = row.mean_max_offpeak;
        r["std_max_offpeak"] = row.std_max_offpeak;
        r["min"] = row.min_max_offpeak;
        r["max"] = row.max_max_offpeak;
        r["mean_improvement_factor"] = row.mean_improvement_factor;
        r["mean_abs_autocorr_by_lag"] = row.mean_abs_c;
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    return j;
}

} // namespace dseq
