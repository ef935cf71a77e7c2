#pragma once

// Dense complex linear algebra for small matrices (N <= 16 in practice).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bures {

using Complex = std::complex<double>;

/// Row-major dense complex matrix. Shape is at least 1x1 and fixed at construction.
class ComplexMatrix {
public:
    /// Zero matrix of the given shape; throws ShapeError if either extent is 0.
    ComplexMatrix(std::size_t rows, std::size_t cols);

    /// Takes ownership of row-major entries; throws on size mismatch or non-finite values.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    /// Nested-list literal, mainly for tests: {{a, b}, {c, d}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    Complex trace() const;
    bool all_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix product; throws ShapeError when a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);

/// ||a - b||_F; throws ShapeError on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||a - a^dagger||_F, a must be square.
double hermiticity_defect(const ComplexMatrix& a);

/// ||a^dagger a - I||_F, a must be square.
double unitarity_defect(const ComplexMatrix& a);

struct QrDecomposition {
    ComplexMatrix q;
    ComplexMatrix r;
};

/// Householder floor below which a column is treated as linearly dependent.
inline constexpr double kQrPivotFloor = 1e-300;

/// Householder QR of a square matrix. Q is unitary, R upper-triangular.
/// Throws SingularMatrixError when a pivot column norm falls to kQrPivotFloor.
QrDecomposition qr_decompose(const ComplexMatrix& a);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

inline constexpr int kJacobiMaxSweeps = 50;
inline constexpr double kJacobiRelativeTolerance = 1e-14;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Requires ||h - h^dagger||_F < 1e-10 ||h||_F (SymmetryError otherwise). Sweeps
/// stop once the off-diagonal Frobenius norm drops below 1e-14 ||h||_F; a
/// ConvergenceError is raised if that takes more than 50 sweeps. Eigenvalues
/// come back ascending, ties kept in the order they appear on the diagonal.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

/// V diag(values) V^dagger.
ComplexMatrix reconstruct(const ComplexMatrix& basis, std::span<const double> values);

}  // namespace bures
