#include "bures/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "bures/coset.hpp"
#include "bures/error.hpp"
#include "bures/measures.hpp"
#include "bures/stats.hpp"

namespace bures::cli {

namespace {

constexpr double kRenormalizeWindow = 1e-9;
constexpr double kJacobianPassBound = 1e-4;
constexpr double kEulerPassBound = 1e-9;

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

Spectrum spectrum_from(const RunConfig& cfg) {
    if (cfg.spectrum.empty()) {
        throw InvalidInputError("a spectrum is required");
    }
    return Spectrum(cfg.spectrum);
}

}  // namespace

Spectrum parse_spectrum(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw InvalidInputError("empty entry in spectrum '" + text + "'");
        }
        item = item.substr(first, last - first + 1);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0' || !std::isfinite(v)) {
            throw InvalidInputError("spectrum entry '" + item + "' is not a number");
        }
        if (v < 0.0) {
            throw InvalidInputError("spectrum entry " + item + " is negative");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw InvalidInputError("spectrum is empty");
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    if (std::abs(sum - 1.0) >= kRenormalizeWindow) {
        throw InvalidInputError("spectrum sums to " + fmt15(sum) + ", expected 1");
    }
    for (double& v : values) {
        v /= sum;
    }
    return Spectrum(std::move(values));
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
    const Spectrum spectrum = spectrum_from(cfg);
    if (cfg.n_levels != 0 && cfg.n_levels != spectrum.n_levels()) {
        throw InvalidInputError("--levels " + std::to_string(cfg.n_levels) + " disagrees with a " +
                                std::to_string(spectrum.n_levels()) + "-entry spectrum");
    }
    if (cfg.count == 0) {
        throw InvalidInputError("--count must be at least 1");
    }

    DegeneracyPattern pattern{spectrum.n_levels(), 0};
    if (cfg.method == SampleMethod::coset) {
        if (cfg.zero_block) {
            pattern.zero_block = *cfg.zero_block;
            require_pattern(spectrum, pattern);
        } else {
            pattern = infer_pattern(spectrum);
        }
    }

    BatchOptions options;
    options.threads = cfg.threads;
    options.coset.zero_layers = cfg.zero_layers;
    const auto records = batch_sample(cfg.method, spectrum, pattern, cfg.count, cfg.seed, options);

    const RecordFormat format = cfg.format.value_or(format_for_path(cfg.output_path));
    write_records(cfg.output_path, records, format);
    out << "wrote " << records.size() << " " << to_string(cfg.method) << " records to "
        << cfg.output_path << "\n";
    return kSuccess;
}

int cmd_volume(const RunConfig& cfg, std::ostream& out) {
    const std::size_t n = cfg.n_levels;
    if (n < 2) {
        throw InvalidInputError("volume needs --levels N with N >= 2");
    }
    for (std::size_t k = 1; k < n; ++k) {
        out << "ball_volume B^" << 2 * k << " = " << fmt15(ball_volume(2 * k)) << "\n";
    }
    const double vol = flag_volume(n);
    const double vol_sz = flag_volume_sz(n);
    out << "flag_volume N=" << n << " = " << fmt15(vol) << "\n";
    out << "flag_volume_sz N=" << n << " = " << fmt15(vol_sz) << "\n";
    out << "ratio = " << fmt15(vol_sz / vol) << "\n";
    return kSuccess;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    const auto a = read_column(cfg.a_path, cfg.column);
    const auto b = read_column(cfg.b_path, cfg.column);
    const KsResult ks = ks_two_sample(a, b);
    out << "column = " << cfg.column << "\n";
    out << "n = " << ks.n << "\n";
    out << "m = " << ks.m << "\n";
    out << "ks_statistic = " << fmt15(ks.statistic) << "\n";
    out << "critical_001 = " << fmt15(ks.critical_001) << "\n";
    if (a.size() == b.size()) {
        const auto pairs = cumulative_pairs(a, b);
        const std::string pairs_path = cfg.pairs_path.empty() ? cfg.a_path + ".pairs.csv" : cfg.pairs_path;
        write_pairs(pairs_path, pairs);
        out << "max_qq_deviation = " << fmt15(max_diagonal_deviation(pairs)) << "\n";
        out << "pairs = " << pairs_path << "\n";
    } else {
        out << "pairs = skipped (sample sizes differ)\n";
    }
    out << "result = " << (ks.pass ? "pass" : "fail") << "\n";
    return ks.pass ? kSuccess : kCheckFailed;
}

int cmd_check_jacobian(const RunConfig& cfg, std::ostream& out) {
    const JacobianSweep sweep = sweep_unit_jacobian(cfg.ball_n, cfg.points, cfg.step, cfg.seed);
    out << "ball = B^" << 2 * cfg.ball_n << "\n";
    out << "points = " << sweep.points << "\n";
    out << "step = " << fmt15(cfg.step) << "\n";
    out << "origin_deviation = " << fmt15(sweep.origin_deviation) << "\n";
    out << "max_deviation = " << fmt15(sweep.max_deviation) << "\n";
    const bool pass = std::max(sweep.max_deviation, sweep.origin_deviation) < kJacobianPassBound;
    out << "result = " << (pass ? "pass" : "fail") << "\n";
    return pass ? kSuccess : kCheckFailed;
}

int cmd_check_euler(const RunConfig& cfg, std::ostream& out) {
    if (cfg.nodes < 1) {
        throw InvalidInputError("--nodes must be positive");
    }
    EulerRanges ranges;
    if (cfg.half_phi6) {
        ranges.phi6_max *= 0.5;
    }
    const double integral = euler_coset_volume(cfg.nodes, ranges);
    const double expected = ball_volume(4);
    const double rel = std::abs(integral - expected) / expected;
    out << "nodes = " << cfg.nodes << "\n";
    out << "integral = " << fmt15(integral) << "\n";
    out << "ball_volume B^4 = " << fmt15(expected) << "\n";
    out << "relative_error = " << fmt15(rel) << "\n";
    const bool pass = rel < kEulerPassBound;
    out << "result = " << (pass ? "pass" : "fail") << "\n";
    return pass ? kSuccess : kCheckFailed;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
    const Spectrum spectrum = spectrum_from(cfg);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", eigenvalue_density(spectrum));
    out << "eigenvalue_density = " << buf << "\n";
    return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fixed-spectrum random density matrices and Bures-measure checks", "bures"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string spectrum_text;
    std::string method_text = "coset";
    std::string format_text;

    auto* sample = app.add_subcommand("sample", "Sample states with a fixed spectrum");
    sample->add_option("--spectrum", spectrum_text, "Comma-separated eigenvalues")->required();
    sample->add_option("--method", method_text, "haar or coset")->check(CLI::IsMember({"haar", "coset"}));
    sample->add_option("--count", cfg.count, "Number of states");
    sample->add_option("--seed", cfg.seed, "64-bit seed");
    sample->add_option("-o,--output", cfg.output_path, "Output file")->required();
    sample->add_option("--format", format_text, "csv or jsonl (default: from extension)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sample->add_option("-n,--levels", cfg.n_levels, "Expected number of levels");
    sample->add_option("--zero-block", cfg.zero_block, "Size of the leading zero block (default: inferred)");
    sample->add_flag("--zero-layers", cfg.zero_layers, "Pin every coset layer to the origin (testing)");
    sample->add_option("--threads", cfg.threads, "Worker threads (default: BURES_THREADS or all cores)");

    auto* volume = app.add_subcommand("volume", "Ball and flag-manifold volumes");
    volume->add_option("-n,--levels", cfg.n_levels, "Number of levels N")->required();

    auto* compare = app.add_subcommand("compare", "Two-sample KS test on one column of two files");
    compare->add_option("a", cfg.a_path, "First sample file")->required();
    compare->add_option("b", cfg.b_path, "Second sample file")->required();
    compare->add_option("--column", cfg.column, "Column to compare");
    compare->add_option("--pairs", cfg.pairs_path, "Q-Q pair output (default: <a>.pairs.csv)");

    auto* jacobian = app.add_subcommand("check-jacobian", "Finite-difference check of the unit coset Jacobian");
    jacobian->add_option("-n,--n", cfg.ball_n, "Ball B^{2n} with n >= 1")->check(CLI::PositiveNumber);
    jacobian->add_option("--points", cfg.points, "Interior points");
    jacobian->add_option("--step", cfg.step, "Central-difference step");
    jacobian->add_option("--seed", cfg.seed, "64-bit seed");

    auto* euler = app.add_subcommand("check-euler", "Quadrature of the U(3)/(U(2)xU(1)) Euler density");
    euler->add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes per axis");
    euler->add_flag("--half-phi6", cfg.half_phi6, "Integrate phi6 over [0, pi] only (diagnostic)");

    auto* density = app.add_subcommand("density", "Eigenvalue factor of the Bures volume element");
    density->add_option("--spectrum", spectrum_text, "Comma-separated eigenvalues")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidInput;
    }

    try {
        if (!spectrum_text.empty()) {
            const Spectrum s = parse_spectrum(spectrum_text);
            cfg.spectrum.assign(s.values().begin(), s.values().end());
        }
        cfg.method = parse_sample_method(method_text);
        if (!format_text.empty()) {
            cfg.format = parse_record_format(format_text);
        }

        if (sample->parsed()) {
            cfg.command = Command::sample;
            return cmd_sample(cfg, out);
        }
        if (volume->parsed()) {
            cfg.command = Command::volume;
            return cmd_volume(cfg, out);
        }
        if (compare->parsed()) {
            cfg.command = Command::compare;
            return cmd_compare(cfg, out);
        }
        if (jacobian->parsed()) {
            cfg.command = Command::check_jacobian;
            return cmd_check_jacobian(cfg, out);
        }
        if (euler->parsed()) {
            cfg.command = Command::check_euler;
            return cmd_check_euler(cfg, out);
        }
        cfg.command = Command::density;
        return cmd_density(cfg, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
}

}  // namespace bures::cli
