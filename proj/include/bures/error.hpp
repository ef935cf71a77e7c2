#pragma once

#include <stdexcept>
#include <string>

namespace bures {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible, or a dimension is invalid.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// QR factorization hit a Householder pivot below the floor.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Input expected to be Hermitian is not.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver exhausted its sweep budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Coordinates lie outside the closed unit ball.
class OutOfBallError : public Error {
public:
    using Error::Error;
};

/// Point too close to the ball boundary for a finite-difference Jacobian.
class BoundaryError : public Error {
public:
    using Error::Error;
};

/// Equal or vanishing eigenvalues where the formula needs distinct positive ones.
class DegenerateSpectrumError : public Error {
public:
    using Error::Error;
};

/// A metric term diverges on the kernel of a rank-deficient state.
class RankDeficiencyError : public Error {
public:
    using Error::Error;
};

/// Degeneracy structure outside the single leading zero-block family.
class UnsupportedPatternError : public Error {
public:
    using Error::Error;
};

/// Generic bad argument: empty sample, invalid spectrum, length mismatch.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace bures
