#include "bures/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "bures/error.hpp"

namespace bures {

namespace {

constexpr double kDensityTolerance = 1e-12;

double gamma_product(std::size_t n_levels) {
    double p = 1.0;
    for (std::size_t n = 1; n <= n_levels; ++n) {
        p *= std::tgamma(static_cast<double>(n));
    }
    return p;
}

void require_levels(std::size_t n_levels, const char* what) {
    if (n_levels < 2) {
        throw InvalidInputError(std::string(what) + ": need N >= 2");
    }
}

const ComplexMatrix& require_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw ShapeError("density matrix must be square");
    }
    if (hermiticity_defect(m) > kDensityTolerance) {
        throw InvalidInputError("density matrix is not Hermitian");
    }
    return m;
}

}  // namespace

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InvalidInputError("spectrum is empty");
    }
    double sum = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidInputError("spectrum values must be finite and nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kDensityTolerance) {
        throw InvalidInputError("spectrum must sum to 1, got " + std::to_string(sum));
    }
}

std::vector<double> Spectrum::sorted_descending() const {
    std::vector<double> s = values_;
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : matrix_(std::move(matrix)), eig_(hermitian_eig(require_hermitian(matrix_))) {
    const Complex tr = matrix_.trace();
    if (std::abs(tr.real() - 1.0) > kDensityTolerance || std::abs(tr.imag()) > kDensityTolerance) {
        throw InvalidInputError("density matrix trace is not 1");
    }
    if (eig_.eigenvalues.front() < -kDensityTolerance) {
        throw InvalidInputError("density matrix has a negative eigenvalue " +
                                std::to_string(eig_.eigenvalues.front()));
    }
}

DensityMatrix DensityMatrix::from_spectrum(const Spectrum& spectrum, const ComplexMatrix& unitary) {
    if (!unitary.is_square() || unitary.rows() != spectrum.n_levels()) {
        throw ShapeError("unitary and spectrum dimensions differ");
    }
    ComplexMatrix rho = reconstruct(unitary, spectrum.values());
    // Exact Hermitian symmetry; the product leaves rounding-level asymmetry.
    for (std::size_t i = 0; i < rho.rows(); ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t j = i + 1; j < rho.cols(); ++j) {
            const Complex avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = avg;
            rho(j, i) = std::conj(avg);
        }
    }
    return DensityMatrix(std::move(rho));
}

Spectrum DensityMatrix::spectrum() const {
    std::vector<double> v(eig_.eigenvalues.rbegin(), eig_.eigenvalues.rend());
    double sum = 0.0;
    for (double& x : v) {
        x = std::max(x, 0.0);
        sum += x;
    }
    for (double& x : v) {
        x /= sum;
    }
    return Spectrum(std::move(v));
}

double ball_volume(std::size_t n) {
    if (n == 0) {
        throw InvalidInputError("ball_volume: dimension must be positive");
    }
    const double half = 0.5 * static_cast<double>(n);
    return 2.0 * std::pow(std::numbers::pi, half) / (static_cast<double>(n) * std::tgamma(half));
}

double flag_volume(std::size_t n_levels) {
    require_levels(n_levels, "flag_volume");
    const double exponent = 0.5 * static_cast<double>(n_levels * (n_levels - 1));
    return std::pow(std::numbers::pi, exponent) / gamma_product(n_levels);
}

double flag_volume_sz(std::size_t n_levels) {
    require_levels(n_levels, "flag_volume_sz");
    const double exponent = 0.5 * static_cast<double>(n_levels * (n_levels - 1));
    return std::pow(2.0 * std::numbers::pi, exponent) / gamma_product(n_levels);
}

double lambda_factor(double lj, double lk) {
    if (lj < 0.0 || lk < 0.0) {
        throw InvalidInputError("lambda_factor: eigenvalues must be nonnegative");
    }
    const double sum = lj + lk;
    if (sum <= 0.0) {
        throw DegenerateSpectrumError("lambda_factor: both eigenvalues vanish");
    }
    const double diff = lj - lk;
    return diff * diff / sum;
}

double eigenvalue_density(const Spectrum& spectrum) {
    const auto v = spectrum.values();
    const std::size_t n = v.size();
    if (n < 2) {
        throw InvalidInputError("eigenvalue_density: need N >= 2");
    }
    double product = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (v[j] <= 0.0) {
            throw DegenerateSpectrumError("eigenvalue_density: spectrum is not full rank");
        }
        product *= v[j];
    }
    double numerator = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (std::abs(v[j] - v[k]) <= kDensityTolerance) {
                throw DegenerateSpectrumError("eigenvalue_density: repeated eigenvalue");
            }
            numerator *= lambda_factor(v[j], v[k]);
        }
    }
    const double scale = std::ldexp(1.0, static_cast<int>(n) - 2);
    return numerator / (scale * std::sqrt(product));
}

double bures_quadratic(const DensityMatrix& rho, const ComplexMatrix& drho) {
    if (drho.rows() != rho.n_levels() || drho.cols() != rho.n_levels()) {
        throw ShapeError("bures_quadratic: perturbation shape differs from the state");
    }
    if (hermiticity_defect(drho) > 1e-10) {
        throw SymmetryError("bures_quadratic: perturbation is not Hermitian");
    }
    const ComplexMatrix& basis = rho.basis();
    const ComplexMatrix in_basis = adjoint(basis) * drho * basis;
    const auto lambda = rho.eigenvalues();
    const std::size_t n = lambda.size();

    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double element = std::abs(in_basis(j, k));
            const double pair = lambda[j] + lambda[k];
            if (pair < kHubnerPairFloor) {
                if (element >= kHubnerNumeratorFloor) {
                    throw RankDeficiencyError(
                        "bures_quadratic: perturbation leaves the support of a rank-deficient state");
                }
                continue;
            }
            sum += element * element / pair;
        }
    }
    return 0.5 * sum;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
    EigenDecomposition eig = hermitian_eig(h);
    for (double& l : eig.eigenvalues) {
        if (l < -kDensityTolerance) {
            throw InvalidInputError("psd_sqrt: matrix has a negative eigenvalue");
        }
        l = std::sqrt(std::max(l, 0.0));
    }
    return reconstruct(eig.eigenvectors, eig.eigenvalues);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.n_levels() != sigma.n_levels()) {
        throw ShapeError("fidelity: states have different dimensions");
    }
    const ComplexMatrix root = reconstruct(rho.basis(), [&] {
        std::vector<double> r(rho.eigenvalues().begin(), rho.eigenvalues().end());
        for (double& l : r) {
            l = std::sqrt(std::max(l, 0.0));
        }
        return r;
    }());
    ComplexMatrix inner = root * sigma.matrix() * root;
    const ComplexMatrix sym = 0.5 * (inner + adjoint(inner));
    const EigenDecomposition eig = hermitian_eig(sym);
    double trace = 0.0;
    for (double l : eig.eigenvalues) {
        if (l < -kDensityTolerance) {
            throw InvalidInputError("fidelity: sqrt(rho) sigma sqrt(rho) is not PSD");
        }
        trace += std::sqrt(std::max(l, 0.0));
    }
    return std::clamp(trace * trace, 0.0, 1.0);
}

}  // namespace bures
