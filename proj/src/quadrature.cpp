#include "qdcav/quadrature.hpp"

#include "qdcav/errors.hpp"

#include <cmath>
#include <numbers>

namespace qdcav {

namespace {
constexpr int kMaxNewton = 100;
constexpr double kNewtonTol = 1e-15;
}  // namespace

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw ConfigError("Gauss-Legendre order must be >= 1");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / dp;
            if (std::abs(z - z1) <= kNewtonTol) break;
        }
        if (n == 1) {
            // The recurrence above divides by z^2 - 1 = -1 at z = 0; fine, but pin it exactly.
            z = 0.0;
            dp = 1.0;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_hermite_normal(int n) {
    if (n < 1) throw ConfigError("Gauss-Hermite order must be >= 1");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.weights[0] = 1.0;
        return rule;
    }
    // Physicists' Hermite roots by Newton on orthonormal polynomials, with the usual asymptotic
    // starting guesses, then mapped to the unit normal: x = sqrt(2) t, w = w_t / sqrt(pi).
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kNewtonTol) break;
        }
        // Temporarily keep physicists' roots (descending) for the next starting guesses.
        rule.nodes[i] = z;
        rule.weights[i] = 2.0 / (pp * pp);
    }
    QuadratureRule out;
    out.nodes.assign(n, 0.0);
    out.weights.assign(n, 0.0);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (int i = 0; i < half; ++i) {
        const double x = std::numbers::sqrt2 * rule.nodes[i];
        const double w = rule.weights[i] / sqrt_pi;
        out.nodes[i] = -x;
        out.nodes[n - 1 - i] = x;
        out.weights[i] = w;
        out.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) out.nodes[n / 2] = 0.0;
    return out;
}

}  // namespace qdcav
