#pragma once

#include <vector>

namespace qdcav {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; weights sum to 2.
QuadratureRule gauss_legendre(int n);

// n-point Gauss-Hermite rule for the standard normal density: nodes x_k, weights summing to 1,
// so that E[f(Z)] ~ sum w_k f(x_k).
QuadratureRule gauss_hermite_normal(int n);

}  // namespace qdcav
