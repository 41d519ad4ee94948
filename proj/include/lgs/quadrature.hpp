#pragma once

// Generalized Gauss-Laguerre rules for the weight z^alpha e^{-z}.

#include <cstddef>
#include <vector>

namespace lgs {

inline constexpr std::size_t kDefaultQuadratureNodes = 300;

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;      // may underflow to 0 for the largest nodes
    std::vector<double> log_weights;  // always finite
    double alpha = 0.0;
    std::size_t count = 0;
};

// Golub-Welsch seeds refined by Newton iteration on the normalized
// three-term recurrence; weights from the Christoffel function.
QuadratureRule gauss_laguerre(std::size_t count, double alpha);

// Process-wide cache keyed by (count, alpha); safe for concurrent callers.
const QuadratureRule& gauss_laguerre_cached(std::size_t count, double alpha);

}  // namespace lgs
