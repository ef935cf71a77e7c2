#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bures/numkernel.hpp"

namespace bures {

/// Eigenvalues of a density matrix, stored in the order they sit on the
/// diagonal of rho^(D) (the order matters for degenerate coset charts).
class Spectrum {
public:
    /// Throws InvalidInputError unless all values are >= 0 and sum to 1 within 1e-12.
    explicit Spectrum(std::vector<double> values);

    std::size_t n_levels() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Largest first.
    std::vector<double> sorted_descending() const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<double> values_;
};

/// Hermitian, positive semidefinite, unit-trace matrix with its eigensystem cached.
class DensityMatrix {
public:
    /// Validates Hermiticity and trace to 1e-12 and eigenvalues >= -1e-12.
    explicit DensityMatrix(ComplexMatrix matrix);

    static DensityMatrix from_spectrum(const Spectrum& spectrum, const ComplexMatrix& unitary);

    std::size_t n_levels() const noexcept { return matrix_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    /// Ascending eigenvalues as returned by hermitian_eig.
    std::span<const double> eigenvalues() const noexcept { return eig_.eigenvalues; }
    const ComplexMatrix& basis() const noexcept { return eig_.eigenvectors; }
    /// Eigenvalues clamped at 0 and renormalized into a Spectrum (descending).
    Spectrum spectrum() const;

private:
    ComplexMatrix matrix_;
    EigenDecomposition eig_;
};

/// Vol(B^n) = 2 pi^{n/2} / (n Gamma(n/2)).
double ball_volume(std::size_t n);

/// Vol(U(N)/U(1)^N) = pi^{N(N-1)/2} / prod_{n=1}^{N} Gamma(n), the product of
/// ball volumes Vol(B^2) ... Vol(B^{2N-2}).
double flag_volume(std::size_t n_levels);

/// The same volume in the (2 pi)-based normalization used elsewhere in the literature,
/// (2 pi)^{N(N-1)/2} / prod Gamma(n). Never mixed with flag_volume.
double flag_volume_sz(std::size_t n_levels);

/// (lj - lk)^2 / (lj + lk); DegenerateSpectrumError when both vanish.
double lambda_factor(double lj, double lk);

/// prod_{j<k} Lambda_jk / (2^{N-2} sqrt(prod lambda)), the eigenvalue factor
/// of the Bures volume element as a density in (lambda_1 .. lambda_{N-1}) on
/// the simplex. Requires a full-rank spectrum with pairwise distinct values.
double eigenvalue_density(const Spectrum& spectrum);

inline constexpr double kHubnerPairFloor = 1e-14;
inline constexpr double kHubnerNumeratorFloor = 1e-12;

/// dB^2 = 1/2 sum_{j,k} |<l_j| drho |l_k>|^2 / (l_j + l_k) in the eigenbasis of rho.
/// Pairs with l_j + l_k < 1e-14 contribute 0 if their matrix element is below
/// 1e-12 and raise RankDeficiencyError otherwise.
double bures_quadratic(const DensityMatrix& rho, const ComplexMatrix& drho);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Principal square root of a PSD Hermitian matrix; eigenvalues in [-1e-12, 0) clamp to 0.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

}  // namespace bures
