#pragma once

#include <cstddef>
#include <vector>

namespace bures {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes from Newton iteration on P_n.
GaussLegendreRule gauss_legendre(std::size_t n);

}  // namespace bures
