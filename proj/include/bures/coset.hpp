#pragma once

// Canonical coset parametrization of U(k)/(U(k-1) x U(1)) over even balls, the
// layered flag-manifold unitary, and the Euler-angle cross-check for U(3).

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "bures/numkernel.hpp"

namespace bures {

/// Tolerance on r^2 - 1 absorbed as rounding at the ball boundary.
inline constexpr double kBallSlack = 1e-12;

/// A point x^1..x^{2n} of the closed even ball B^{2n}. Pairs (x^{2j-1}, x^{2j})
/// are the real and imaginary parts of the j-th entry of the complex column X.
class BallPoint {
public:
    /// Throws ShapeError for odd or zero dimension, OutOfBallError if r^2 > 1 + 1e-12.
    explicit BallPoint(std::vector<double> coords);

    static BallPoint origin(std::size_t dim);

    std::size_t dim() const noexcept { return coords_.size(); }
    /// Complex length n = dim / 2.
    std::size_t complex_dim() const noexcept { return coords_.size() / 2; }
    std::span<const double> coords() const noexcept { return coords_; }
    double radius_squared() const noexcept;

    /// The complex column X.
    std::vector<Complex> column() const;

    friend bool operator==(const BallPoint&, const BallPoint&) = default;

private:
    std::vector<double> coords_;
};

/// Leading block of m zero eigenvalues treated as one degenerate block; every
/// other eigenvalue is taken as non-degenerate. m <= 1 is the generic case.
struct DegeneracyPattern {
    std::size_t n_levels;
    std::size_t zero_block = 0;

    /// Throws ShapeError unless n_levels >= 1 and zero_block <= n_levels - 1.
    void validate() const;
    bool is_generic() const noexcept { return zero_block <= 1; }
};

/// Ball dimensions of the layers, smallest coset first: (2, 4, ..., 2(N-1)) in
/// the generic case, (2m, 2m+2, ..., 2(N-1)) for a zero block of size m >= 2.
std::vector<std::size_t> coset_layers_for(const DegeneracyPattern& pattern);

/// Ordered ball points parametrizing a flag-manifold unitary.
class FlagChart {
public:
    /// Layers must be consecutive even dimensions ending at 2(N-1), smallest
    /// first, and may start at 2 or at any 2m with m >= 2.
    FlagChart(std::size_t n_levels, std::vector<BallPoint> layers);

    /// All-zero chart for the given pattern (flag_unitary gives the identity).
    static FlagChart zero(const DegeneracyPattern& pattern);

    std::size_t n_levels() const noexcept { return n_levels_; }
    const std::vector<BallPoint>& layers() const noexcept { return layers_; }

private:
    std::size_t n_levels_;
    std::vector<BallPoint> layers_;
};

/// N x N embedding of the coset unitary U(k)/(U(k-1) x U(1)), k = top_index,
/// for x in B^{2(k-1)}. The leading k x k block is
///
///     [ 1 - X X^dagger / (1 + sqrt(1 - r^2))   X               ]
///     [ -X^dagger                              sqrt(1 - r^2)    ]
///
/// and the rest is the identity. Throws ShapeError if dim(x) != 2(k-1) or k > N.
ComplexMatrix coset_unitary(const BallPoint& x, std::size_t n_levels, std::size_t top_index);

/// Omega = C_N C_{N-1} ... C_2 with the largest coset leftmost.
ComplexMatrix flag_unitary(const FlagChart& chart);

/// X = (sin|B| / |B|) B, the spherical coordinates of exp([[0, B], [-B^dagger, 0]]).
BallPoint b_to_spherical(std::span<const Complex> b);

inline constexpr double kDefaultJacobianStep = 1e-5;
inline constexpr double kJacobianBoundaryMargin = 1e-6;

/*!
 * Determinant of the map dx -> dx' for one coset layer.
 *
 * Omega^dagger dOmega is formed by central differences of coset_unitary in
 * each of the 2n coordinates. Column k (the last of the active block) holds the
 * coset differentials; rows j < k give dx' = (Re, Im) of (Omega^dagger
 * dOmega)_{jk}, top to bottom. For the Euclidean ball measure this
 * determinant is 1 at every interior point.
 *
 * Requires r^2 < 1 - 1e-6 (BoundaryError) and 1e-8 <= step <= 1e-4
 * (InvalidInputError).
 */
double coset_jacobian_det(const BallPoint& x, double step = kDefaultJacobianStep);

/// The full 2n x 2n Jacobian behind coset_jacobian_det, row-major.
std::vector<double> coset_jacobian(const BallPoint& x, double step = kDefaultJacobianStep);

/// Integration box for the U(3)/(U(2) x U(1)) Euler angles.
struct EulerRanges {
    double phi3_max = std::numbers::pi / 2;
    double phi4_max = std::numbers::pi;
    double phi5_max = std::numbers::pi / 2;
    double phi6_max = 2 * std::numbers::pi;
};

struct EulerChart {
    double phi3 = 0.0;
    double phi4 = 0.0;
    double phi5 = 0.0;
    double phi6 = 0.0;
};

/// cos(phi3) sin^3(phi3) sin(2 phi5): the U(3)/(U(2) x U(1)) coset density in
/// Euler angles. phi4 and phi6 enter only through the integration range.
double euler_density_u3(double phi3, double phi5);

inline double euler_density_u3(const EulerChart& chart) {
    return euler_density_u3(chart.phi3, chart.phi5);
}

/// Nested Gauss-Legendre integral of euler_density_u3 over the 4-box
/// [0, phi3_max] x ... x [0, phi6_max], `nodes` per axis.
double euler_coset_volume(std::size_t nodes, const EulerRanges& ranges = {});

}  // namespace bures
