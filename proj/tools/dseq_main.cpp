// dseq — generate binary prime-reciprocal sequences, harden them with block
// permutations, and measure autocorrelation quality. Every subcommand except
// `baseline` is deterministic given its flags.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dseq/dseq.hpp>

namespace fs = std::filesystem;

namespace {

struct GenerateArgs {
    std::uint64_t prime = 0;
    std::string out;
};

void cmd_generate(const GenerateArgs& a) {
    dseq::PrimeModulus p(a.prime);
    const dseq::DSequence seq = dseq::generate_dsequence(p);
    const fs::path out = a.out.empty() ? fs::path("dseq_" + std::to_string(a.prime) + ".txt")
                                       : fs::path(a.out);
    dseq::write_sequence_file(out, a.prime, seq.bits);
    std::cout << "period=" << seq.period << " maximal=" << (seq.maximal ? "true" : "false") << "\n";
}

struct PermuteArgs {
    std::string in;
    std::string out;
    std::uint64_t block_size = 0;
    std::uint64_t n_perms = 0;
    std::uint64_t seed = 0;
    std::string schedule_path;
};

void cmd_permute(const PermuteArgs& a) {
    const dseq::SequenceFile input = dseq::read_sequence_file(a.in);

    if (!a.schedule_path.empty()) {
        std::vector<dseq::Permutation> members = dseq::read_schedule_file(a.schedule_path);
        const dseq::PermutationSchedule schedule(std::move(members));
        if (a.block_size != 0 && a.block_size != schedule.block_size())
            throw dseq::config_error("--block-size " + std::to_string(a.block_size) +
                                     " does not match schedule member size " +
                                     std::to_string(schedule.block_size()));
        const auto partition = dseq::BlockPartition::of(input.bits.size(), schedule.block_size());
        const auto permuted = dseq::apply_schedule(input.bits, partition, schedule);
        dseq::write_sequence_file(a.out, input.prime, permuted);
        return;
    }

    if (a.block_size == 0)
        throw dseq::config_error("either --schedule or --block-size is required");
    const auto partition = dseq::BlockPartition::of(input.bits.size(), a.block_size);
    if (a.n_perms == 0) {
        dseq::write_sequence_file(a.out, input.prime, input.bits);
        return;
    }
    if (a.n_perms > partition.block_count)
        throw dseq::config_error("--n-perms " + std::to_string(a.n_perms) + " exceeds block count " +
                                 std::to_string(partition.block_count));
    dseq::SplitMix64 engine(a.seed);
    const dseq::PermutationSchedule schedule =
        dseq::random_schedule(static_cast<std::size_t>(a.n_perms), partition.block_size, engine);
    const auto permuted = dseq::apply_schedule(input.bits, partition, schedule);
    dseq::write_sequence_file(a.out, input.prime, permuted);
    // Sidecar replay file: feed it back via --schedule to reproduce the output.
    dseq::write_schedule_file(fs::path(a.out).concat(".schedule"), schedule,
                             "drawn with seed " + std::to_string(a.seed));
}

struct AutocorrArgs {
    std::string in;
    std::string out;
    int round_digits = -1;
};

void cmd_autocorr(const AutocorrArgs& a) {
    const dseq::SequenceFile input = dseq::read_sequence_file(a.in);
    const auto profile = dseq::autocorrelation_of_bits(input.bits);
    const std::string csv = dseq::autocorrelation_csv(profile, a.round_digits);
    if (a.out.empty())
        std::cout << csv;
    else
        dseq::write_text_file(a.out, csv);
}

struct MetricsArgs {
    std::string in;
    bool json_output = false;
    std::optional<std::uint64_t> block_size;
    std::optional<std::uint64_t> n_perms;
    std::uint64_t test_block_len = 0;
};

void cmd_metrics(const MetricsArgs& a) {
    const dseq::SequenceFile input = dseq::read_sequence_file(a.in);
    const dseq::MetricsReport report = dseq::measure_bits(input.bits);
    const auto tests =
        dseq::standard_test_battery(input.bits, static_cast<std::size_t>(a.test_block_len));
    dseq::MetricsContext context;
    context.prime = input.prime;
    context.block_size = a.block_size;
    context.n_perms = a.n_perms;
    if (a.json_output) {
        std::cout << dseq::metrics_json(report, context, tests).dump(2) << "\n";
        return;
    }
    std::cout << "R=" << dseq::format_value(report.randomness_measure) << "\n"
              << "max_offpeak=" << dseq::format_value(report.max_offpeak) << "\n"
              << "argmax_lag=" << report.offpeak_argmax << "\n"
              << "improvement_factor=" << dseq::format_value(report.improvement_factor) << "\n";
    for (const auto& t : tests) {
        std::cout << t.test_name << ": p=" << dseq::format_value(t.p_value)
                  << (t.applicable ? (t.pass ? " pass" : " fail") : " not-applicable");
        if (t.low_confidence) std::cout << " (low confidence: short sequence)";
        std::cout << "\n";
    }
}

struct SweepArgs {
    std::string preset;
    std::uint64_t prime = 0;
    std::uint64_t block_size = 0;
    std::vector<std::uint64_t> perm_counts;
    std::uint32_t trials = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    unsigned workers = 1;
    int round_digits = -1;
};

std::string sweep_replay(const SweepArgs& a) {
    // Canonical invocation that regenerates the same report bytes. Output
    // location and worker count are omitted: neither changes the content.
    std::string cmd = "dseq sweep";
    if (!a.preset.empty()) {
        cmd += " --preset " + a.preset;
    } else {
        cmd += " --prime " + std::to_string(a.prime);
        cmd += " --block-size " + std::to_string(a.block_size);
        if (!a.perm_counts.empty()) {
            cmd += " --perm-counts ";
            for (std::size_t i = 0; i < a.perm_counts.size(); ++i) {
                if (i) cmd += ',';
                cmd += std::to_string(a.perm_counts[i]);
            }
        }
    }
    cmd += " --trials " + std::to_string(a.trials);
    cmd += " --seed " + std::to_string(a.seed);
    if (a.round_digits >= 0) cmd += " --round " + std::to_string(a.round_digits);
    return cmd;
}

void write_sweep_outputs(const dseq::SweepReport& report, const std::string& out_dir,
                         const std::string& replay, int round_digits) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    dseq::write_text_file(dir / "sweep.csv", dseq::sweep_csv(report, round_digits));
    dseq::write_text_file(dir / "lag_curve.csv", dseq::lag_curve_csv(report, round_digits));
    dseq::write_text_file(dir / "report.json", dseq::sweep_report_json(report, replay).dump(2) + "\n");
}

void cmd_sweep(const SweepArgs& a) {
    dseq::SweepConfig config = [&] {
        if (!a.preset.empty()) {
            dseq::SweepConfig c = dseq::preset_by_name(a.preset);
            if (!a.perm_counts.empty()) c.perm_counts = a.perm_counts;
            return c;
        }
        if (a.prime == 0 || a.block_size == 0)
            throw dseq::config_error("either --preset or both --prime and --block-size are required");
        dseq::PrimeModulus p(a.prime);
        const std::uint64_t period = dseq::multiplicative_order(p);
        const auto partition = dseq::BlockPartition::of(period, a.block_size);
        std::vector<std::uint64_t> counts =
            a.perm_counts.empty() ? dseq::default_perm_counts(partition.block_count) : a.perm_counts;
        return dseq::SweepConfig{std::move(p), partition, std::move(counts), 100, 0, "custom"};
    }();
    config.trials = a.trials;
    config.master_seed = a.seed;
    if (config.partition.block_size == 1)
        std::cout << "note: block size 1 permutes nothing within a block; "
                     "the sweep cannot improve on the input\n";
    const dseq::SweepReport report = dseq::run_sweep(config, a.workers);
    write_sweep_outputs(report, a.out_dir, sweep_replay(a), a.round_digits);
    std::cout << "wrote " << (fs::path(a.out_dir) / "sweep.csv").string() << ", lag_curve.csv, report.json\n";
}

struct BaselineArgs {
    std::uint64_t length = 0;
    std::uint64_t prime = 0;
    std::uint64_t block_size = 0;
    std::vector<std::uint64_t> perm_counts;
    std::uint32_t trials = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    unsigned workers = 1;
    int round_digits = -1;
};

void cmd_baseline(const BaselineArgs& a) {
    if ((a.length == 0) == (a.prime == 0))
        throw dseq::config_error("exactly one of --length (host entropy) or --prime is required");
    if (a.block_size == 0) throw dseq::config_error("--block-size is required");
    const dseq::BaselineSource source = a.prime ? dseq::BaselineSource::dsequence(a.prime)
                                                : dseq::BaselineSource::os_rng(a.length);
    const auto partition = dseq::BlockPartition::of(source.length, a.block_size);
    const std::vector<std::uint64_t> counts =
        a.perm_counts.empty() ? dseq::default_perm_counts(partition.block_count) : a.perm_counts;
    if (source.kind == dseq::BaselineKind::os_rng)
        std::cout << "note: input sequences drawn from the host entropy source; "
                     "this run is not reproducible from its seed\n";
    if (partition.block_size == 1)
        std::cout << "note: block size 1 permutes nothing within a block; "
                     "the sweep cannot improve on the input\n";
    const dseq::SweepReport report =
        dseq::baseline_sweep(source, partition, counts, a.trials, a.seed, a.workers);
    // No replay line can regenerate host-entropy draws; echo the flags anyway.
    std::string replay = "dseq baseline";
    replay += a.prime ? " --prime " + std::to_string(a.prime) : " --length " + std::to_string(a.length);
    replay += " --block-size " + std::to_string(a.block_size);
    replay += " --trials " + std::to_string(a.trials);
    replay += " --seed " + std::to_string(a.seed);
    write_sweep_outputs(report, a.out_dir, replay, a.round_digits);
    std::cout << "wrote " << (fs::path(a.out_dir) / "sweep.csv").string() << ", lag_curve.csv, report.json\n";
}

struct PrimesArgs {
    std::uint64_t limit = 0;
    std::string out;
    int round_digits = -1;
};

void cmd_primes(const PrimesArgs& a) {
    // Below the first odd prime there is nothing to list; emit just the header.
    const auto records = a.limit < 3 ? std::vector<dseq::PrimeRandomness>{} : dseq::prime_sweep(a.limit);
    const std::string csv = dseq::primes_csv(records, a.round_digits);
    if (a.out.empty())
        std::cout << csv;
    else
        dseq::write_text_file(a.out, csv);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary prime-reciprocal sequences: generation, block-permutation hardening, "
                 "and autocorrelation measurement"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* sc_gen = app.add_subcommand("generate", "Write the binary reciprocal sequence of a prime");
    sc_gen->add_option("--prime", gen.prime, "Odd prime modulus")->required();
    sc_gen->add_option("--out", gen.out, "Output sequence file (default dseq_<prime>.txt)");

    PermuteArgs perm;
    auto* sc_perm = app.add_subcommand("permute", "Apply a cyclic schedule of block permutations");
    sc_perm->add_option("--in", perm.in, "Input sequence file")->required();
    sc_perm->add_option("--out", perm.out, "Output sequence file")->required();
    sc_perm->add_option("--block-size", perm.block_size, "Block size (must divide sequence length)");
    sc_perm->add_option("--n-perms", perm.n_perms, "Number of random permutations to draw (0 = copy)");
    sc_perm->add_option("--seed", perm.seed, "Seed for drawing permutations");
    sc_perm->add_option("--schedule", perm.schedule_path,
                        "Schedule file to apply instead of drawing randomly");

    AutocorrArgs ac;
    auto* sc_ac = app.add_subcommand("autocorr", "Cyclic autocorrelation profile as CSV");
    sc_ac->add_option("--in", ac.in, "Input sequence file")->required();
    sc_ac->add_option("--out", ac.out, "Output CSV (default stdout)");
    sc_ac->add_option("--round", ac.round_digits, "Fixed decimal places instead of full precision");

    MetricsArgs met;
    auto* sc_met = app.add_subcommand("metrics", "Randomness measure, off-peak maximum, and "
                                                 "frequency/runs statistical tests");
    sc_met->add_option("--in", met.in, "Input sequence file")->required();
    sc_met->add_flag("--json", met.json_output, "Emit a JSON document instead of plain text");
    sc_met->add_option("--block-size", met.block_size, "Provenance stamp: block size used upstream");
    sc_met->add_option("--n-perms", met.n_perms, "Provenance stamp: permutation count used upstream");
    sc_met->add_option("--test-block-len", met.test_block_len,
                       "Block length for the block-frequency test (default max(20, n/10))");

    SweepArgs sw;
    auto* sc_sw = app.add_subcommand("sweep", "Seeded Monte Carlo sweep over permutation counts");
    sc_sw->add_option("--preset", sw.preset, "table1, table2, fig9, or fig10");
    sc_sw->add_option("--prime", sw.prime, "Prime for an explicit config");
    sc_sw->add_option("--block-size", sw.block_size, "Block size for an explicit config");
    sc_sw->add_option("--perm-counts", sw.perm_counts, "Comma-separated permutation counts")
        ->delimiter(',');
    sc_sw->add_option("--trials", sw.trials, "Trials per permutation count (default 100)");
    sc_sw->add_option("--seed", sw.seed, "Master seed (default 0)");
    sc_sw->add_option("--out-dir", sw.out_dir, "Directory for sweep.csv, lag_curve.csv, report.json");
    sc_sw->add_option("--workers", sw.workers, "Worker threads; never changes output bytes");
    sc_sw->add_option("--round", sw.round_digits, "Fixed decimal places in CSV output");

    PrimesArgs pr;
    auto* sc_pr = app.add_subcommand("primes", "Randomness measure of every maximal prime up to a limit");
    sc_pr->add_option("--limit", pr.limit, "Upper bound (inclusive)")->required();
    sc_pr->add_option("--out", pr.out, "Output CSV (default stdout)");
    sc_pr->add_option("--round", pr.round_digits, "Fixed decimal places instead of full precision");

    BaselineArgs base;
    auto* sc_base = app.add_subcommand("baseline", "Sweep against host-entropy input (or a prime, "
                                                   "for comparison) instead of a fixed sequence");
    sc_base->add_option("--length", base.length, "Sequence length for host-entropy input");
    sc_base->add_option("--prime", base.prime, "Use this prime's sequence instead of host entropy");
    sc_base->add_option("--block-size", base.block_size, "Block size");
    sc_base->add_option("--perm-counts", base.perm_counts, "Comma-separated permutation counts")
        ->delimiter(',');
    sc_base->add_option("--trials", base.trials, "Trials per permutation count (default 100)");
    sc_base->add_option("--seed", base.seed, "Master seed for schedule draws");
    sc_base->add_option("--out-dir", base.out_dir, "Directory for sweep.csv, lag_curve.csv, report.json");
    sc_base->add_option("--workers", base.workers, "Worker threads");
    sc_base->add_option("--round", base.round_digits, "Fixed decimal places in CSV output");

    try {
        app.parse(argc, argv);
        if (sc_gen->parsed()) cmd_generate(gen);
        if (sc_perm->parsed()) cmd_permute(perm);
        if (sc_ac->parsed()) cmd_autocorr(ac);
        if (sc_met->parsed()) cmd_metrics(met);
        if (sc_sw->parsed()) cmd_sweep(sw);
        if (sc_pr->parsed()) cmd_primes(pr);
        if (sc_base->parsed()) cmd_baseline(base);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const dseq::env_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dseq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
