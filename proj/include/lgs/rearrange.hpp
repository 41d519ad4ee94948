#pragma once

// Rearrangement of Laguerre series into power series: truncated
// polynomials, probes of the inner mu series, coefficient-decay
// classification and the zeta-type tail model.

#include <cstddef>
#include <vector>

#include "lgs/laguerre_series.hpp"

namespace lgs {

struct PolynomialTruncation {
    std::size_t M = 0;
    std::vector<double> gamma_coeffs;  // rounded to double
    std::vector<double> gamma_lo;      // low parts of the double-double coefficients

    // Compensated evaluation with the double-double coefficients.
    double evaluate(double z) const;
    // Plain Horner with the rounded coefficients.
    double evaluate_rounded(double z) const;
};

PolynomialTruncation rearrange_truncated(const LaguerreSeries& s, std::size_t M);

// gamma_nu^{(M)} alone, O(M) work.
double rearranged_coefficient(const LaguerreSeries& s, std::size_t nu, std::size_t M);

// sum_{mu=0}^{M} (alpha+nu+1)_mu/mu! lambda_{mu+nu} for each cutoff M.
std::vector<double> inner_mu_partial_sums(const LaguerreSeries& s, std::size_t nu,
                                          const std::vector<std::size_t>& cutoffs);

enum class InnerVerdict { Converges, Diverges, Inconclusive };

struct InnerSeriesProbe {
    std::size_t nu = 0;
    std::vector<std::size_t> cutoffs;
    std::vector<double> partial_sums;
    std::vector<double> log10_abs;  // log10|partial sum|
    InnerVerdict verdict = InnerVerdict::Inconclusive;
    double limit_estimate = 0.0;    // Converges
    double growth_exponent = 0.0;   // fitted log-log slope over the top decade
    double fit_residual = 0.0;
};

InnerSeriesProbe inner_mu_probe(const LaguerreSeries& s, std::size_t nu,
                                const std::vector<std::size_t>& cutoffs);

// 10, 20, 50, ..., 10000
std::vector<std::size_t> default_cutoffs();

enum class DecayKind { AlgebraicMonotone, ExponentialOrFactorial, AlgebraicAlternating, Inconclusive };

struct DecayClass {
    DecayKind kind = DecayKind::Inconclusive;
    double exponent = 0.0;        // power-law slope of log|lambda_n| against log n
    double ratio = 0.0;           // geometric ratio exp(b) of the joint fit log|lambda| ~ a + p log n + b n
    double power_residual = 0.0;  // normalized RMS residuals
    double exp_residual = 0.0;
    double factorial_residual = 0.0;
    int sign_pattern = 0;         // +1 constant, -1 alternating, 0 mixed
};

inline constexpr double kDecayResidualThreshold = 0.05;
inline constexpr std::size_t kDecaySignWindow = 32;

DecayClass classify_decay(const LaguerreSeries& s, std::size_t n_lo, std::size_t n_hi);

struct TailValue {
    double value = 0.0;
    double error_bound = 0.0;
};

// sum_{mu >= M} mu^{-s}, s > 1, M >= 1, by Euler-Maclaurin.
TailValue power_tail(double s, std::size_t M);

// Gamma(rho+alpha+1)/(Gamma(-rho) Gamma(alpha+nu+1)) sum_{mu>=M} mu^{nu-rho-1}
double zeta_tail(double rho, double alpha, std::size_t nu, std::size_t M);

enum class FormalVerdict { VanishesToZero, DivergesToInfinity, FiniteNonzero };

struct FormalDiagnosis {
    std::size_t nu = 0;
    FormalVerdict verdict = FormalVerdict::FiniteNonzero;
    double tail_magnitude = 0.0;  // |zeta_tail| at the reference cutoff when vanishing
};

std::vector<FormalDiagnosis> formal_power_diagnosis(double rho, double u, double alpha, std::size_t nu_max,
                                                    std::size_t reference_cutoff = 1000);

enum class BinomialLimit { Zero, Infinite, Finite };

// lim_{z->1} (1-z)^{rho-k}
BinomialLimit binomial_1f0_limit(std::size_t k, double rho);

const char* to_string(InnerVerdict v);
const char* to_string(DecayKind k);
const char* to_string(FormalVerdict v);
const char* to_string(BinomialLimit v);

}  // namespace lgs
