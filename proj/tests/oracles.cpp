#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace bures::oracle {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Engine& eng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = Complex{g(eng), g(eng)};
        }
    }
    return m;
}

ComplexMatrix random_hermitian(std::size_t n, Engine& eng) {
    ComplexMatrix a = random_matrix(n, n, eng);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }
    return h;
}

ComplexMatrix gram_schmidt_haar(std::size_t n, Engine& eng) {
    ComplexMatrix q = random_matrix(n, n, eng);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot{};
            for (std::size_t i = 0; i < n; ++i) {
                dot += std::conj(q(i, k)) * q(i, j);
            }
            for (std::size_t i = 0; i < n; ++i) {
                q(i, j) -= dot * q(i, k);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm += std::norm(q(i, j));
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) {
            q(i, j) /= norm;
        }
    }
    return q;
}

ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Complex sum{};
            for (std::size_t k = 0; k < a.cols(); ++k) {
                sum += a(i, k) * b(k, j);
            }
            c(i, j) = sum;
        }
    }
    return c;
}

ComplexMatrix expm(const ComplexMatrix& a) {
    double norm = 0.0;
    for (const auto& z : a.entries()) {
        norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    int squarings = 0;
    while (norm > 0.125) {
        norm *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    ComplexMatrix scaled = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            scaled(i, j) *= scale;
        }
    }
    const std::size_t n = a.rows();
    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = naive_matmul(term, scaled);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                term(i, j) /= static_cast<double>(k);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                result(i, j) += term(i, j);
            }
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = naive_matmul(result, result);
    }
    return result;
}

double brute_force_ks(const std::vector<double>& a, const std::vector<double>& b) {
    auto cdf = [](const std::vector<double>& v, double t) {
        std::size_t count = 0;
        for (double x : v) {
            if (x <= t) {
                ++count;
            }
        }
        return static_cast<double>(count) / static_cast<double>(v.size());
    };
    double d = 0.0;
    for (const auto* v : {&a, &b}) {
        for (double t : *v) {
            d = std::max(d, std::abs(cdf(a, t) - cdf(b, t)));
        }
    }
    return d;
}

double cofactor_det(const std::vector<double>& m, std::size_t n) {
    if (n == 1) {
        return m[0];
    }
    double det = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> minor;
        minor.reserve((n - 1) * (n - 1));
        for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (c != col) {
                    minor.push_back(m[r * n + c]);
                }
            }
        }
        const double sign = col % 2 == 0 ? 1.0 : -1.0;
        det += sign * m[col] * cofactor_det(minor, n - 1);
    }
    return det;
}

std::vector<double> random_orthogonal(std::size_t n, Engine& eng) {
    std::normal_distribution<double> g;
    std::vector<double> q(n * n);
    for (auto& x : q) {
        x = g(eng);
    }
    // Orthonormalize rows.
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < r; ++k) {
            double dot = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                dot += q[r * n + c] * q[k * n + c];
            }
            for (std::size_t c = 0; c < n; ++c) {
                q[r * n + c] -= dot * q[k * n + c];
            }
        }
        double norm = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            norm += q[r * n + c] * q[r * n + c];
        }
        norm = std::sqrt(norm);
        for (std::size_t c = 0; c < n; ++c) {
            q[r * n + c] /= norm;
        }
    }
    return q;
}

}  // namespace bures::oracle
