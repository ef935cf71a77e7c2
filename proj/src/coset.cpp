#include "bures/coset.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bures/error.hpp"
#include "bures/quadrature.hpp"

namespace bures {

namespace {

double sum_of_squares(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return s;
}

// Determinant by Gaussian elimination with partial pivoting.
double determinant(std::vector<double> m, std::size_t n) {
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) {
                pivot = r;
            }
        }
        if (m[pivot * n + col] == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(m[pivot * n + c], m[col * n + c]);
            }
            det = -det;
        }
        const double diag = m[col * n + col];
        det *= diag;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m[r * n + col] / diag;
            for (std::size_t c = col; c < n; ++c) {
                m[r * n + c] -= f * m[col * n + c];
            }
        }
    }
    return det;
}

// Leading (n+1)x(n+1) coset block written into `out` at offset 0. Assumes r^2 <= 1 + slack.
void write_coset_block(std::span<const double> coords, ComplexMatrix& out) {
    const std::size_t n = coords.size() / 2;
    const double r2 = std::min(sum_of_squares(coords), 1.0);
    const double c = std::sqrt(1.0 - r2);
    // (sqrt(1 - r^2) - 1) / r^2 == -1 / (1 + sqrt(1 - r^2)), finite at r = 0.
    const double rank_one = -1.0 / (1.0 + c);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex xi{coords[2 * i], coords[2 * i + 1]};
        for (std::size_t j = 0; j < n; ++j) {
            const Complex xj{coords[2 * j], coords[2 * j + 1]};
            out(i, j) = (i == j ? 1.0 : 0.0) + rank_one * xi * std::conj(xj);
        }
        out(i, n) = xi;
        out(n, i) = -std::conj(xi);
    }
    out(n, n) = c;
}

}  // namespace

BallPoint::BallPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty() || coords_.size() % 2 != 0) {
        throw ShapeError("ball dimension must be even and at least 2, got " +
                         std::to_string(coords_.size()));
    }
    for (double x : coords_) {
        if (!std::isfinite(x)) {
            throw InvalidInputError("ball coordinates must be finite");
        }
    }
    if (radius_squared() > 1.0 + kBallSlack) {
        throw OutOfBallError("point lies outside the unit ball: r^2 = " +
                             std::to_string(radius_squared()));
    }
}

BallPoint BallPoint::origin(std::size_t dim) { return BallPoint(std::vector<double>(dim, 0.0)); }

double BallPoint::radius_squared() const noexcept { return sum_of_squares(coords_); }

std::vector<Complex> BallPoint::column() const {
    std::vector<Complex> x(complex_dim());
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = {coords_[2 * j], coords_[2 * j + 1]};
    }
    return x;
}

void DegeneracyPattern::validate() const {
    if (n_levels == 0) {
        throw ShapeError("degeneracy pattern needs at least one level");
    }
    if (zero_block > n_levels - 1) {
        throw ShapeError("zero block of size " + std::to_string(zero_block) +
                         " leaves no nonzero eigenvalue in " + std::to_string(n_levels) + " levels");
    }
}

std::vector<std::size_t> coset_layers_for(const DegeneracyPattern& pattern) {
    pattern.validate();
    const std::size_t first = pattern.is_generic() ? 2 : pattern.zero_block + 1;
    std::vector<std::size_t> dims;
    for (std::size_t k = first; k <= pattern.n_levels; ++k) {
        dims.push_back(2 * (k - 1));
    }
    return dims;
}

FlagChart::FlagChart(std::size_t n_levels, std::vector<BallPoint> layers)
    : n_levels_(n_levels), layers_(std::move(layers)) {
    if (n_levels_ == 0) {
        throw ShapeError("flag chart needs at least one level");
    }
    if (n_levels_ == 1) {
        if (!layers_.empty()) {
            throw ShapeError("a single level has no coset layers");
        }
        return;
    }
    if (layers_.empty()) {
        throw ShapeError("flag chart for N >= 2 needs at least one layer");
    }
    if (layers_.back().dim() != 2 * (n_levels_ - 1)) {
        throw ShapeError("largest layer must live in B^" + std::to_string(2 * (n_levels_ - 1)));
    }
    for (std::size_t i = 1; i < layers_.size(); ++i) {
        if (layers_[i].dim() != layers_[i - 1].dim() + 2) {
            throw ShapeError("layer dimensions must increase in steps of 2");
        }
    }
}

FlagChart FlagChart::zero(const DegeneracyPattern& pattern) {
    std::vector<BallPoint> layers;
    for (std::size_t d : coset_layers_for(pattern)) {
        layers.push_back(BallPoint::origin(d));
    }
    return FlagChart(pattern.n_levels, std::move(layers));
}

ComplexMatrix coset_unitary(const BallPoint& x, std::size_t n_levels, std::size_t top_index) {
    if (top_index != x.complex_dim() + 1) {
        throw ShapeError("coset U(" + std::to_string(top_index) + ") needs a point in B^" +
                         std::to_string(2 * (top_index - 1)) + ", got B^" + std::to_string(x.dim()));
    }
    if (top_index > n_levels) {
        throw ShapeError("coset index " + std::to_string(top_index) + " exceeds N = " +
                         std::to_string(n_levels));
    }
    ComplexMatrix omega = ComplexMatrix::identity(n_levels);
    write_coset_block(x.coords(), omega);
    return omega;
}

ComplexMatrix flag_unitary(const FlagChart& chart) {
    const std::size_t n = chart.n_levels();
    ComplexMatrix omega = ComplexMatrix::identity(n);
    // Largest coset leftmost: accumulate from the largest layer down.
    for (auto it = chart.layers().rbegin(); it != chart.layers().rend(); ++it) {
        omega = omega * coset_unitary(*it, n, it->complex_dim() + 1);
    }
    return omega;
}

BallPoint b_to_spherical(std::span<const Complex> b) {
    if (b.empty()) {
        throw ShapeError("b_to_spherical: empty column");
    }
    double norm_sq = 0.0;
    for (const auto& z : b) {
        norm_sq += std::norm(z);
    }
    const double norm = std::sqrt(norm_sq);
    const double sinc = norm == 0.0 ? 1.0 : std::sin(norm) / norm;
    std::vector<double> coords;
    coords.reserve(2 * b.size());
    for (const auto& z : b) {
        coords.push_back(sinc * z.real());
        coords.push_back(sinc * z.imag());
    }
    return BallPoint(std::move(coords));
}

std::vector<double> coset_jacobian(const BallPoint& x, double step) {
    if (!(step >= 1e-8 && step <= 1e-4)) {
        throw InvalidInputError("finite-difference step must lie in [1e-8, 1e-4]");
    }
    const double r2 = x.radius_squared();
    if (r2 >= 1.0 - kJacobianBoundaryMargin || std::sqrt(r2) + step >= 1.0) {
        throw BoundaryError("point too close to the ball boundary for a finite-difference Jacobian: r^2 = " +
                            std::to_string(r2));
    }

    const std::size_t dim = x.dim();
    const std::size_t n = x.complex_dim();
    const std::size_t levels = n + 1;
    const ComplexMatrix omega_adj = adjoint(coset_unitary(x, levels, levels));

    std::vector<double> jac(dim * dim);
    std::vector<double> plus(x.coords().begin(), x.coords().end());
    std::vector<double> minus = plus;
    ComplexMatrix omega_plus(levels, levels);
    ComplexMatrix omega_minus(levels, levels);
    for (std::size_t i = 0; i < dim; ++i) {
        plus[i] += step;
        minus[i] -= step;
        write_coset_block(plus, omega_plus);
        write_coset_block(minus, omega_minus);
        plus[i] = minus[i] = x.coords()[i];

        ComplexMatrix d_omega = omega_plus - omega_minus;
        d_omega *= 1.0 / (2.0 * step);
        const ComplexMatrix generator = omega_adj * d_omega;
        for (std::size_t j = 0; j < n; ++j) {
            jac[(2 * j) * dim + i] = generator(j, n).real();
            jac[(2 * j + 1) * dim + i] = generator(j, n).imag();
        }
    }
    return jac;
}

double coset_jacobian_det(const BallPoint& x, double step) {
    return determinant(coset_jacobian(x, step), x.dim());
}

double euler_density_u3(double phi3, double phi5) {
    const double s = std::sin(phi3);
    return std::cos(phi3) * s * s * s * std::sin(2.0 * phi5);
}

double euler_coset_volume(std::size_t nodes, const EulerRanges& ranges) {
    const GaussLegendreRule rule = gauss_legendre(nodes);
    auto mapped = [&](double upper) {
        std::vector<std::pair<double, double>> pts(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            pts[i] = {0.5 * upper * (rule.nodes[i] + 1.0), 0.5 * upper * rule.weights[i]};
        }
        return pts;
    };
    const auto axis3 = mapped(ranges.phi3_max);
    const auto axis4 = mapped(ranges.phi4_max);
    const auto axis5 = mapped(ranges.phi5_max);
    const auto axis6 = mapped(ranges.phi6_max);

    double total = 0.0;
    for (const auto& [p3, w3] : axis3) {
        for (const auto& [p4, w4] : axis4) {
            for (const auto& [p5, w5] : axis5) {
                double inner = 0.0;
                for (const auto& [p6, w6] : axis6) {
                    inner += w6 * euler_density_u3(EulerChart{p3, p4, p5, p6});
                }
                total += w3 * w4 * w5 * inner;
            }
        }
    }
    return total;
}

}  // namespace bures
