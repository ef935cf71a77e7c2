#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bures/coset.hpp"
#include "bures/measures.hpp"
#include "bures/numkernel.hpp"
#include "bures/rng.hpp"

namespace bures {

enum class SampleMethod { haar, coset };

std::string_view to_string(SampleMethod method) noexcept;
/// Throws InvalidInputError for anything but "haar" or "coset".
SampleMethod parse_sample_method(std::string_view text);

struct Observable {
    std::string name;
    double value;

    friend bool operator==(const Observable&, const Observable&) = default;
};

struct SampleRecord {
    SampleMethod method;
    std::size_t index;
    DensityMatrix rho;
    std::vector<Observable> observables;  // rho_11 ... rho_NN

    std::optional<double> observable(std::string_view name) const;
};

/// Column label of diagonal entry (j, j), 1-based: "rho_33", or "rho_10_10" once N > 9.
std::string diagonal_label(std::size_t j, std::size_t n_levels);

/// Diagonal observables (rho)_jj, real parts.
std::vector<Observable> diagonal_observables(const ComplexMatrix& rho);

/// Uniform point in B^{dim}: Gaussian direction, radius u^{1/dim}.
BallPoint sample_ball(std::size_t dim, RngStream& rng);

/// Haar unitary from the QR of a complex Ginibre matrix with R's diagonal phases
/// moved into Q. A singular draw is retried once before the error propagates.
ComplexMatrix sample_haar_unitary(std::size_t n_levels, RngStream& rng);

/// rho = U diag(s) U^dagger with U Haar-distributed.
SampleRecord sample_state_haar(const Spectrum& spectrum, RngStream& rng, std::size_t index = 0);

/// Leading zero-block pattern of a spectrum. Throws UnsupportedPatternError when
/// zeros appear after a nonzero value, or when nonzero values repeat (within 1e-12).
DegeneracyPattern infer_pattern(const Spectrum& spectrum);

/// Check that a spectrum fits a pattern; UnsupportedPatternError otherwise.
void require_pattern(const Spectrum& spectrum, const DegeneracyPattern& pattern);

struct CosetOptions {
    /// Force every layer to the ball origin (rho = diag(s)); a test hook.
    bool zero_layers = false;
};

/// One uniform ball point per layer of coset_layers_for(pattern), then
/// rho = Omega diag(s) Omega^dagger with Omega = flag_unitary.
SampleRecord sample_state_coset(const Spectrum& spectrum, const DegeneracyPattern& pattern,
                                RngStream& rng, std::size_t index = 0, CosetOptions options = {});

struct BatchOptions {
    /// Worker threads; 0 means BURES_THREADS if set, else hardware concurrency.
    unsigned threads = 0;
    CosetOptions coset;
};

/// Stream index of record `index`: the index itself for haar, with the top bit
/// set for coset, so both methods can share a seed without sharing draws.
std::uint64_t batch_stream_index(SampleMethod method, std::size_t index) noexcept;

/// Record i is drawn from RngStream(seed, batch_stream_index(method, i)); the
/// result does not depend on threading.
std::vector<SampleRecord> batch_sample(SampleMethod method, const Spectrum& spectrum,
                                       const DegeneracyPattern& pattern, std::size_t count,
                                       std::uint64_t seed, BatchOptions options = {});

/// Points with r^2 above this are redrawn when sampling the ball interior.
inline constexpr double kInteriorRadiusSquared = 0.99;

/// Uniform point of B^{dim} conditioned on r^2 <= kInteriorRadiusSquared.
BallPoint sample_ball_interior(std::size_t dim, RngStream& rng);

struct JacobianSweep {
    std::size_t points = 0;         // interior points evaluated, origin excluded
    double max_deviation = 0.0;     // max |det J - 1| over those points
    double origin_deviation = 0.0;  // |det J - 1| at x = 0
};

/// Evaluates coset_jacobian_det at the origin of B^{2n} and at `points`
/// interior points drawn from RngStream(seed, 0).
JacobianSweep sweep_unit_jacobian(std::size_t n, std::size_t points, double step, std::uint64_t seed);

/// Thread count from BURES_THREADS (clamped to >= 1) or the hardware.
unsigned default_thread_count();

}  // namespace bures
