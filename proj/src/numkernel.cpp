#include "bures/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bures/error.hpp"

namespace bures {

namespace {

void require_nonempty(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix extents must be positive, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw ShapeError(std::string(what) + ": matrix must be square");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_nonempty(rows, cols);
    data_.assign(rows * cols, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require_nonempty(rows, cols);
    if (data_.size() != rows * cols) {
        throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!all_finite()) {
        throw InvalidInputError("matrix entries must be finite");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    require_nonempty(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw ShapeError("ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!all_finite()) {
        throw InvalidInputError("matrix entries must be finite");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    require_square(*this, "trace");
    Complex t{};
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) noexcept {
    for (auto& z : data_) {
        z *= scalar;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = std::conj(a(i, j));
        }
    }
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (const auto& z : a.entries()) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "frobenius_distance");
    double sum = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        sum += std::norm(ea[i] - eb[i]);
    }
    return std::sqrt(sum);
}

double hermiticity_defect(const ComplexMatrix& a) {
    require_square(a, "hermiticity_defect");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            sum += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    }
    return std::sqrt(sum);
}

double unitarity_defect(const ComplexMatrix& a) {
    require_square(a, "unitarity_defect");
    return frobenius_distance(adjoint(a) * a, ComplexMatrix::identity(a.rows()));
}

QrDecomposition qr_decompose(const ComplexMatrix& a) {
    require_square(a, "qr_decompose");
    const std::size_t n = a.rows();
    ComplexMatrix r = a;
    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<Complex> v(n);

    for (std::size_t k = 0; k < n; ++k) {
        double col_norm_sq = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            col_norm_sq += std::norm(r(i, k));
        }
        const double col_norm = std::sqrt(col_norm_sq);
        if (!(col_norm > kQrPivotFloor)) {
            throw SingularMatrixError("qr_decompose: pivot " + std::to_string(k) +
                                      " below floor, matrix is rank deficient");
        }

        // alpha = -e^{i arg x_k} |x| keeps v_k = x_k - alpha free of cancellation.
        const Complex xk = r(k, k);
        const Complex phase = std::abs(xk) > 0.0 ? xk / std::abs(xk) : Complex{1.0, 0.0};
        const Complex alpha = -phase * col_norm;

        double v_norm_sq = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = r(i, k);
        }
        v[k] -= alpha;
        for (std::size_t i = k; i < n; ++i) {
            v_norm_sq += std::norm(v[i]);
        }
        if (v_norm_sq == 0.0) {
            continue;
        }
        const double beta = 2.0 / v_norm_sq;

        // R <- (I - beta v v^dagger) R on rows k..n-1.
        for (std::size_t j = k; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = k; i < n; ++i) {
                dot += std::conj(v[i]) * r(i, j);
            }
            dot *= beta;
            for (std::size_t i = k; i < n; ++i) {
                r(i, j) -= v[i] * dot;
            }
        }
        // Q <- Q (I - beta v v^dagger) on columns k..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{};
            for (std::size_t l = k; l < n; ++l) {
                dot += q(i, l) * v[l];
            }
            dot *= beta;
            for (std::size_t l = k; l < n; ++l) {
                q(i, l) -= dot * std::conj(v[l]);
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            r(i, k) = 0.0;
        }
    }
    return {std::move(q), std::move(r)};
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
    require_square(h, "hermitian_eig");
    const std::size_t n = h.rows();
    const double scale = frobenius_norm(h);
    if (hermiticity_defect(h) > 1e-10 * scale) {
        throw SymmetryError("hermitian_eig: input is not Hermitian");
    }

    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
    }

    auto off_diagonal_norm = [&] {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    sum += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(sum);
    };

    const double target = kJacobiRelativeTolerance * scale;
    bool converged = off_diagonal_norm() <= target;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                // Strip the phase of a_pq, then a real symmetric Jacobi rotation.
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // J restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]].
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
        converged = off_diagonal_norm() <= target;
    }
    if (!converged) {
        throw ConvergenceError("hermitian_eig: no convergence within " +
                               std::to_string(kJacobiMaxSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

ComplexMatrix reconstruct(const ComplexMatrix& basis, std::span<const double> values) {
    if (!basis.is_square() || basis.cols() != values.size()) {
        throw ShapeError("reconstruct: basis and eigenvalue count differ");
    }
    const std::size_t n = basis.rows();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum{};
            for (std::size_t k = 0; k < n; ++k) {
                sum += basis(i, k) * values[k] * std::conj(basis(j, k));
            }
            out(i, j) = sum;
        }
    }
    return out;
}

}  // namespace bures
