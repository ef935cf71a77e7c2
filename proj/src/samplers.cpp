#include "bures/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "bures/error.hpp"

namespace bures {

namespace {

constexpr double kZeroEigenvalue = 1e-12;
constexpr double kDistinctEigenvalues = 1e-12;

ComplexMatrix ginibre(std::size_t n, RngStream& rng) {
    ComplexMatrix g(n, n);
    const double scale = std::sqrt(0.5);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex{re, im} * scale;
        }
    }
    return g;
}

void require_distinct(std::span<const double> values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        for (std::size_t k = j + 1; k < values.size(); ++k) {
            if (std::abs(values[j] - values[k]) <= kDistinctEigenvalues) {
                throw UnsupportedPatternError(
                    "coset sampling supports only a leading zero block; eigenvalues " +
                    std::to_string(values[j]) + " and " + std::to_string(values[k]) + " coincide");
            }
        }
    }
}

}  // namespace

std::string_view to_string(SampleMethod method) noexcept {
    return method == SampleMethod::haar ? "haar" : "coset";
}

SampleMethod parse_sample_method(std::string_view text) {
    if (text == "haar") {
        return SampleMethod::haar;
    }
    if (text == "coset") {
        return SampleMethod::coset;
    }
    throw InvalidInputError("unknown sampling method '" + std::string(text) + "'");
}

std::optional<double> SampleRecord::observable(std::string_view name) const {
    for (const auto& o : observables) {
        if (o.name == name) {
            return o.value;
        }
    }
    return std::nullopt;
}

std::string diagonal_label(std::size_t j, std::size_t n_levels) {
    const std::string idx = std::to_string(j);
    return n_levels > 9 ? "rho_" + idx + "_" + idx : "rho_" + idx + idx;
}

std::vector<Observable> diagonal_observables(const ComplexMatrix& rho) {
    std::vector<Observable> out;
    out.reserve(rho.rows());
    for (std::size_t j = 0; j < rho.rows(); ++j) {
        out.push_back({diagonal_label(j + 1, rho.rows()), rho(j, j).real()});
    }
    return out;
}

BallPoint sample_ball(std::size_t dim, RngStream& rng) {
    if (dim < 2 || dim % 2 != 0) {
        throw ShapeError("sample_ball: dimension must be even and at least 2");
    }
    std::vector<double> g(dim);
    double norm_sq = 0.0;
    while (norm_sq == 0.0) {
        norm_sq = 0.0;
        for (double& x : g) {
            x = rng.normal();
            norm_sq += x * x;
        }
    }
    const double radius = std::pow(rng.uniform_open(), 1.0 / static_cast<double>(dim));
    const double scale = radius / std::sqrt(norm_sq);
    for (double& x : g) {
        x *= scale;
    }
    return BallPoint(std::move(g));
}

ComplexMatrix sample_haar_unitary(std::size_t n_levels, RngStream& rng) {
    if (n_levels == 0) {
        throw ShapeError("sample_haar_unitary: need N >= 1");
    }
    QrDecomposition qr = [&] {
        try {
            return qr_decompose(ginibre(n_levels, rng));
        } catch (const SingularMatrixError&) {
            return qr_decompose(ginibre(n_levels, rng));
        }
    }();
    for (std::size_t j = 0; j < n_levels; ++j) {
        const Complex rjj = qr.r(j, j);
        const Complex phase = rjj / std::abs(rjj);
        for (std::size_t i = 0; i < n_levels; ++i) {
            qr.q(i, j) *= phase;
        }
    }
    return std::move(qr.q);
}

SampleRecord sample_state_haar(const Spectrum& spectrum, RngStream& rng, std::size_t index) {
    const ComplexMatrix u = sample_haar_unitary(spectrum.n_levels(), rng);
    DensityMatrix rho = DensityMatrix::from_spectrum(spectrum, u);
    auto obs = diagonal_observables(rho.matrix());
    return {SampleMethod::haar, index, std::move(rho), std::move(obs)};
}

DegeneracyPattern infer_pattern(const Spectrum& spectrum) {
    const auto v = spectrum.values();
    std::size_t zeros = 0;
    while (zeros < v.size() && v[zeros] <= kZeroEigenvalue) {
        ++zeros;
    }
    DegeneracyPattern pattern{v.size(), zeros};
    require_pattern(spectrum, pattern);
    return pattern;
}

void require_pattern(const Spectrum& spectrum, const DegeneracyPattern& pattern) {
    pattern.validate();
    if (pattern.n_levels != spectrum.n_levels()) {
        throw ShapeError("pattern has " + std::to_string(pattern.n_levels) + " levels, spectrum has " +
                         std::to_string(spectrum.n_levels()));
    }
    const auto v = spectrum.values();
    const std::size_t m = pattern.zero_block;
    for (std::size_t j = 0; j < m; ++j) {
        if (v[j] > kZeroEigenvalue) {
            throw UnsupportedPatternError("spectrum does not start with a zero block of size " +
                                          std::to_string(m));
        }
    }
    const auto rest = v.subspan(m);
    if (m >= 1) {
        for (double x : rest) {
            if (x <= kZeroEigenvalue) {
                throw UnsupportedPatternError("zero eigenvalue outside the leading zero block");
            }
        }
    }
    require_distinct(rest);
}

SampleRecord sample_state_coset(const Spectrum& spectrum, const DegeneracyPattern& pattern,
                                RngStream& rng, std::size_t index, CosetOptions options) {
    require_pattern(spectrum, pattern);
    std::vector<BallPoint> layers;
    for (std::size_t dim : coset_layers_for(pattern)) {
        layers.push_back(options.zero_layers ? BallPoint::origin(dim) : sample_ball(dim, rng));
    }
    const ComplexMatrix omega = flag_unitary(FlagChart(pattern.n_levels, std::move(layers)));
    DensityMatrix rho = DensityMatrix::from_spectrum(spectrum, omega);
    auto obs = diagonal_observables(rho.matrix());
    return {SampleMethod::coset, index, std::move(rho), std::move(obs)};
}

BallPoint sample_ball_interior(std::size_t dim, RngStream& rng) {
    while (true) {
        BallPoint p = sample_ball(dim, rng);
        if (p.radius_squared() <= kInteriorRadiusSquared) {
            return p;
        }
    }
}

JacobianSweep sweep_unit_jacobian(std::size_t n, std::size_t points, double step, std::uint64_t seed) {
    if (n == 0) {
        throw ShapeError("sweep_unit_jacobian: need n >= 1");
    }
    JacobianSweep sweep;
    sweep.points = points;
    sweep.origin_deviation = std::abs(coset_jacobian_det(BallPoint::origin(2 * n), step) - 1.0);
    RngStream rng(seed, 0);
    for (std::size_t i = 0; i < points; ++i) {
        const double det = coset_jacobian_det(sample_ball_interior(2 * n, rng), step);
        sweep.max_deviation = std::max(sweep.max_deviation, std::abs(det - 1.0));
    }
    return sweep;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("BURES_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) {
            return static_cast<unsigned>(parsed);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t batch_stream_index(SampleMethod method, std::size_t index) noexcept {
    const std::uint64_t tag = method == SampleMethod::coset ? (std::uint64_t{1} << 63) : 0;
    return tag | static_cast<std::uint64_t>(index);
}

std::vector<SampleRecord> batch_sample(SampleMethod method, const Spectrum& spectrum,
                                       const DegeneracyPattern& pattern, std::size_t count,
                                       std::uint64_t seed, BatchOptions options) {
    if (count == 0) {
        throw InvalidInputError("batch_sample: count must be at least 1");
    }
    if (method == SampleMethod::coset) {
        require_pattern(spectrum, pattern);
    }

    std::vector<std::optional<SampleRecord>> slots(count);
    auto produce = [&](std::size_t i) {
        RngStream rng(seed, batch_stream_index(method, i));
        slots[i] = method == SampleMethod::haar
                       ? sample_state_haar(spectrum, rng, i)
                       : sample_state_coset(spectrum, pattern, rng, i, options.coset);
    };

    const auto threads = static_cast<unsigned>(
        std::min<std::size_t>(options.threads == 0 ? default_thread_count() : options.threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            produce(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                try {
                    for (std::size_t i = next++; i < count; i = next++) {
                        produce(i);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = count;
                }
            });
        }
        workers.clear();
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::vector<SampleRecord> out;
    out.reserve(count);
    for (auto& slot : slots) {
        out.push_back(std::move(*slot));
    }
    return out;
}

}  // namespace bures
