// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bures/cli.hpp"
#include "bures/coset.hpp"
#include "bures/measures.hpp"
#include "bures/records_io.hpp"
#include "bures/samplers.hpp"
#include "bures/stats.hpp"

using namespace bures;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

std::vector<double> column(const std::vector<SampleRecord>& records, std::size_t j) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(r.observables[j].value);
    }
    return out;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Largest |eigenvalue - target| after sorting both ascending.
double spectrum_error(const DensityMatrix& rho, std::vector<double> target) {
    std::sort(target.begin(), target.end());
    const auto ev = rho.eigenvalues();
    double worst = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k) {
        worst = std::max(worst, std::abs(ev[k] - target[k]));
    }
    return worst;
}

Verdict volume_identities() {
    double worst_product = 0.0;
    double worst_ratio = 0.0;
    for (std::size_t n = 2; n <= 8; ++n) {
        double product = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            product *= ball_volume(2 * k);
        }
        worst_product = std::max(worst_product, relative(flag_volume(n), product));
        const double ratio = flag_volume_sz(n) / flag_volume(n);
        worst_ratio = std::max(worst_ratio, relative(ratio, std::ldexp(1.0, static_cast<int>(n * (n - 1) / 2))));
    }
    return {worst_product < 1e-12 && worst_ratio < 1e-12,
            fmt("N=2..8 product rel %.2e, ratio rel %.2e (bound 1e-12)", worst_product, worst_ratio)};
}

Verdict unit_jacobian() {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const JacobianSweep s = sweep_unit_jacobian(n, 100, 1e-5, 42);
        worst = std::max({worst, s.max_deviation, s.origin_deviation});
    }
    return {worst < 1e-4, fmt("n=1..4, 100 points each, max |det J - 1| = %.2e (bound 1e-4)", worst)};
}

Verdict euler_cross_check() {
    const double integral = euler_coset_volume(64);
    const double err = relative(integral, ball_volume(4));
    return {err < 1e-9, fmt("integral %.15g vs pi^2/2, rel %.2e (bound 1e-9)", integral, err)};
}

Verdict qq_reproduction() {
    const Spectrum s({0.375, 0.125, 0.5});
    const DegeneracyPattern pattern{3, 0};
    constexpr double kBound = 0.0728;
    int passes = 0;
    double worst = 0.0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const std::uint64_t seed = 1000 + rep;
        const auto haar = batch_sample(SampleMethod::haar, s, pattern, 1000, seed);
        const auto coset = batch_sample(SampleMethod::coset, s, pattern, 1000, seed);
        const double d = ks_two_sample(column(haar, 2), column(coset, 2)).statistic;
        worst = std::max(worst, d);
        passes += d < kBound ? 1 : 0;
    }

    // Default-seed run through the command line, as a user would do it.
    const fs::path dir = fs::temp_directory_path() / "bures_acceptance";
    fs::create_directories(dir);
    const std::string a = (dir / "fig_haar.csv").string();
    const std::string b = (dir / "fig_coset.csv").string();
    const std::string pairs = (dir / "fig_pairs.csv").string();
    std::ostringstream sink;
    cli::run({"sample", "--spectrum", "0.375,0.125,0.5", "--method", "haar", "-o", a}, sink, sink);
    cli::run({"sample", "--spectrum", "0.375,0.125,0.5", "--method", "coset", "-o", b}, sink, sink);
    cli::run({"compare", a, b, "--column", "rho_33", "--pairs", pairs}, sink, sink);
    const auto xs = read_column(pairs, "a");
    const auto ys = read_column(pairs, "b");
    double qq = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        qq = std::max(qq, std::abs(xs[i] - ys[i]));
    }
    const bool pass = passes >= 95 && xs.size() == 1000 && qq < 0.073;
    return {pass, fmt("%d/100 repetitions with D < %.4f (max D %.4f); default-seed Q-Q sup dev %.4f (bound 0.073)",
                      passes, kBound, worst, qq)};
}

Verdict method_equivalence() {
    const std::vector<std::vector<double>> fixtures{{0.4, 0.3, 0.2, 0.1}, {0.35, 0.25, 0.2, 0.12, 0.08}};
    bool pass = true;
    std::string detail;
    for (const auto& values : fixtures) {
        const Spectrum s(values);
        const DegeneracyPattern pattern{s.n_levels(), 0};
        const auto haar = batch_sample(SampleMethod::haar, s, pattern, 1000, 42);
        const auto coset = batch_sample(SampleMethod::coset, s, pattern, 1000, 42);
        double worst = 0.0;
        double critical = 0.0;
        for (std::size_t j = 0; j < s.n_levels(); ++j) {
            const KsResult r = ks_two_sample(column(haar, j), column(coset, j));
            worst = std::max(worst, r.statistic);
            critical = r.critical_001;
            pass = pass && r.pass;
        }
        detail += fmt("N=%zu max D %.4f (critical %.4f) ", s.n_levels(), worst, critical);
    }
    return {pass, detail};
}

Verdict degenerate_patterns() {
    const auto l3 = coset_layers_for(DegeneracyPattern{3, 2});
    const auto l4 = coset_layers_for(DegeneracyPattern{4, 2});
    const bool layers_ok = l3 == std::vector<std::size_t>{4} && l4 == std::vector<std::size_t>{4, 6};

    const std::vector<double> pure{0.0, 0.0, 1.0};
    const std::vector<double> mixed{0.0, 0.0, 0.3, 0.7};
    const auto pure_records = batch_sample(SampleMethod::coset, Spectrum(pure), DegeneracyPattern{3, 2}, 1000, 42);
    const auto mixed_records =
        batch_sample(SampleMethod::coset, Spectrum(mixed), DegeneracyPattern{4, 2}, 1000, 42);
    double spec_err = 0.0;
    for (const auto& r : pure_records) {
        spec_err = std::max(spec_err, spectrum_error(r.rho, pure));
    }
    for (const auto& r : mixed_records) {
        spec_err = std::max(spec_err, spectrum_error(r.rho, mixed));
    }

    const auto last = column(pure_records, 2);
    const double d = ks_one_sample(last, [](double t) { return 1.0 - (1.0 - t) * (1.0 - t); });
    const double critical = kKsCoefficient001 / std::sqrt(static_cast<double>(last.size()));
    const bool pass = layers_ok && spec_err < 1e-10 && d < critical;
    return {pass, fmt("layers %s; spectrum err %.2e (bound 1e-10); rho_33 vs 1-(1-t)^2 D %.4f (critical %.4f)",
                      layers_ok ? "(4) and (4,6)" : "WRONG", spec_err, d, critical)};
}

Verdict hubner_metric() {
    const double eps = 1e-3;
    const DensityMatrix rho(ComplexMatrix::diagonal(std::vector<double>{0.375, 0.125, 0.5}));
    const double diag_err =
        relative(bures_quadratic(rho, ComplexMatrix::diagonal(std::vector<double>{eps, -eps, 0.0})),
                 8.0 / 3.0 * eps * eps);
    double off_err = 0.0;
    const auto lambda = rho.matrix();
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = j + 1; k < 3; ++k) {
            ComplexMatrix drho(3, 3);
            drho(j, k) = eps;
            drho(k, j) = eps;
            const double expected = eps * eps / (lambda(j, j).real() + lambda(k, k).real());
            off_err = std::max(off_err, relative(bures_quadratic(rho, drho), expected));
        }
    }

    // Fidelity consistency on random full-rank states and tangent directions.
    double worst_coarse = 0.0;
    bool improves = true;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::uint64_t trial = 0; trial < 10; ++trial) {
            RngStream rng(77, n * 100 + trial);
            std::vector<double> w(n);
            double sum = 0.0;
            for (auto& x : w) {
                x = 0.2 + rng.uniform();
                sum += x;
            }
            for (auto& x : w) {
                x /= sum;
            }
            const DensityMatrix state = DensityMatrix::from_spectrum(Spectrum(w), sample_haar_unitary(n, rng));
            ComplexMatrix h(n, n);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a; b < n; ++b) {
                    const Complex z{rng.normal(), a == b ? 0.0 : rng.normal()};
                    h(a, b) = z;
                    h(b, a) = std::conj(z);
                }
            }
            const Complex shift = h.trace() / static_cast<double>(n);
            for (std::size_t a = 0; a < n; ++a) {
                h(a, a) -= shift;
            }
            h *= 1.0 / frobenius_norm(h);
            const double metric = bures_quadratic(state, h);
            auto discrepancy = [&](double e) {
                const double f = fidelity(state, DensityMatrix(state.matrix() + e * h));
                return std::abs(2.0 * (1.0 - std::sqrt(f)) / (e * e) - metric) / metric;
            };
            const double coarse = discrepancy(1e-4);
            const double fine = discrepancy(5e-5);
            worst_coarse = std::max(worst_coarse, coarse);
            improves = improves && fine < coarse;
        }
    }
    const bool pass = diag_err < 1e-12 && off_err < 1e-12 && worst_coarse < 1e-3 && improves;
    return {pass, fmt("closed forms rel %.1e / %.1e (bound 1e-12); fidelity FD rel %.2e at 1e-4 (bound 1e-3), "
                      "halving improves: %s",
                      diag_err, off_err, worst_coarse, improves ? "yes" : "no")};
}

Verdict haar_sampler() {
    RngStream rng(42, 0);
    double defect = 0.0;
    for (int i = 0; i < 1000; ++i) {
        defect = std::max(defect, unitarity_defect(sample_haar_unitary(5, rng)));
    }

    RngStream marginal_rng(42, 1);
    std::vector<double> u11;
    for (int i = 0; i < 10000; ++i) {
        u11.push_back(std::norm(sample_haar_unitary(4, marginal_rng)(0, 0)));
    }
    const double d_marginal = ks_one_sample(u11, [](double t) { return 1.0 - std::pow(1.0 - t, 3.0); });

    RngStream fixed(42, 2);
    const ComplexMatrix v = sample_haar_unitary(4, fixed);
    RngStream ra(42, 3);
    RngStream rb(42, 4);
    std::vector<double> plain;
    std::vector<double> shifted;
    for (int i = 0; i < 1000; ++i) {
        plain.push_back(std::norm(sample_haar_unitary(4, ra)(0, 0)));
        shifted.push_back(std::norm((v * sample_haar_unitary(4, rb))(0, 0)));
    }
    const KsResult left = ks_two_sample(plain, shifted);
    const bool pass = defect < 1e-12 && d_marginal < 0.02 && left.pass;
    return {pass, fmt("unitarity %.1e (bound 1e-12); |U11|^2 KS %.4f (bound 0.02); left-invariance D %.4f "
                      "(critical %.4f)",
                      defect, d_marginal, left.statistic, left.critical_001)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism() {
    const fs::path dir = fs::temp_directory_path() / "bures_acceptance";
    fs::create_directories(dir);
    std::ostringstream sink;
    int identical = 0;
    int total = 0;
    const std::vector<std::vector<std::string>> commands{
        {"sample", "--spectrum", "0.375,0.125,0.5", "--method", "haar", "--seed", "5", "--threads", "THREADS"},
        {"sample", "--spectrum", "0.375,0.125,0.5", "--method", "coset", "--seed", "5", "--threads", "THREADS"},
        {"sample", "--spectrum", "0,0,0.3,0.7", "--method", "coset", "--seed", "9", "--threads", "THREADS"},
    };
    for (const char* ext : {".csv", ".jsonl"}) {
        for (std::size_t c = 0; c < commands.size(); ++c) {
            std::vector<std::string> outputs;
            for (const char* threads : {"1", "4"}) {
                auto args = commands[c];
                args.back() = threads;
                const fs::path out = dir / ("det_" + std::to_string(c) + "_" + threads + ext);
                args.insert(args.end(), {"-o", out.string()});
                cli::run(args, sink, sink);
                outputs.push_back(slurp(out));
            }
            ++total;
            identical += !outputs[0].empty() && outputs[0] == outputs[1] ? 1 : 0;
        }
    }
    // The compare command's pair file.
    std::vector<std::string> pair_files;
    for (const char* name : {"det_pairs_a.csv", "det_pairs_b.csv"}) {
        const fs::path p = dir / name;
        cli::run({"compare", (dir / "det_0_1.csv").string(), (dir / "det_1_1.csv").string(), "--pairs",
                  p.string()},
                 sink, sink);
        pair_files.push_back(slurp(p));
    }
    ++total;
    identical += !pair_files[0].empty() && pair_files[0] == pair_files[1] ? 1 : 0;
    return {identical == total, fmt("%d/%d reruns byte-identical (1 vs 4 threads, CSV and JSONL, pair file)",
                                    identical, total)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"volume identities", volume_identities},
        {"unit coset Jacobian", unit_jacobian},
        {"Euler-angle cross-check", euler_cross_check},
        {"three-level Q-Q reproduction", qq_reproduction},
        {"method equivalence N=4,5", method_equivalence},
        {"degenerate patterns", degenerate_patterns},
        {"Hubner metric", hubner_metric},
        {"Haar sampler", haar_sampler},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %zu  %-30s %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
