#include "lgs/quadrature.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <Eigen/Eigenvalues>

#include "lgs/errors.hpp"
#include "lgs/specfun.hpp"

namespace lgs {

namespace {

struct Orthonormal {
    double p;       // p_n(x) * exp(-log_scale)
    double dp;      // p_n'(x) * exp(-log_scale)
    double log_sq;  // log sum_{k<n} p_k(x)^2
};

// Orthonormal Laguerre polynomials, x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}
// with a_k = 2k+alpha+1, b_k = sqrt(k(k+alpha)).  Values are rescaled on
// the fly so that large nodes neither overflow nor underflow.
Orthonormal eval_orthonormal(std::size_t n, double alpha, double x) {
    double log_scale = -0.5 * ln_gamma(alpha + 1.0);
    double pm1 = 0.0, p = 1.0;
    double dpm1 = 0.0, dp = 0.0;
    double sq = 0.0;  // in units of exp(2 log_scale)
    for (std::size_t k = 0; k < n; ++k) {
        sq += p * p;
        const double dk = static_cast<double>(k);
        const double a = 2.0 * dk + alpha + 1.0;
        const double bk = std::sqrt(dk * (dk + alpha));
        const double bk1 = std::sqrt((dk + 1.0) * (dk + 1.0 + alpha));
        const double pn = ((x - a) * p - bk * pm1) / bk1;
        const double dpn = ((x - a) * dp + p - bk * dpm1) / bk1;
        pm1 = p; p = pn;
        dpm1 = dp; dp = dpn;
        const double mag = std::fabs(p) + std::fabs(pm1);
        if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
            const double s = 1.0 / mag;
            p *= s; pm1 *= s; dp *= s; dpm1 *= s; sq *= s * s;
            log_scale += std::log(mag);
        }
    }
    return {p, dp, std::log(sq) + 2.0 * log_scale};
}

}  // namespace

QuadratureRule gauss_laguerre(std::size_t count, double alpha) {
    if (count == 0) throw DomainError("gauss_laguerre: count must be positive");
    if (!(alpha > -1.0)) throw DomainError("gauss_laguerre: alpha must exceed -1");

    Eigen::VectorXd diag(count);
    Eigen::VectorXd sub(count > 1 ? count - 1 : 0);
    for (std::size_t k = 0; k < count; ++k) {
        const double dk = static_cast<double>(k);
        diag[static_cast<Eigen::Index>(k)] = 2.0 * dk + alpha + 1.0;
        if (k + 1 < count)
            sub[static_cast<Eigen::Index>(k)] = std::sqrt((dk + 1.0) * (dk + 1.0 + alpha));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw DomainError("gauss_laguerre: eigenvalue solver failed");

    QuadratureRule rule;
    rule.alpha = alpha;
    rule.count = count;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    rule.log_weights.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        double x = es.eigenvalues()[static_cast<Eigen::Index>(i)];
        if (x <= 0.0) x = 1e-300;
        for (int it = 0; it < 20; ++it) {
            const Orthonormal e = eval_orthonormal(count, alpha, x);
            const double step = e.p / e.dp;
            double xn = x - step;
            if (xn <= 0.0) xn = 0.5 * x;
            const double moved = std::fabs(xn - x);
            x = xn;
            if (moved <= 1e-15 * x) break;
        }
        const Orthonormal e = eval_orthonormal(count, alpha, x);
        rule.nodes[i] = x;
        rule.log_weights[i] = -e.log_sq;
        rule.weights[i] = std::exp(-e.log_sq);
    }
    return rule;
}

const QuadratureRule& gauss_laguerre_cached(std::size_t count, double alpha) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::uint64_t>, std::unique_ptr<QuadratureRule>> cache;
    const auto key = std::make_pair(count, std::bit_cast<std::uint64_t>(alpha));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<QuadratureRule>(gauss_laguerre(count, alpha))).first;
    return *it->second;
}

}  // namespace lgs
