#pragma once

// Scalar special functions: gamma and Pochhammer utilities, classical
// orthogonal polynomials, Gaussian hypergeometric sums and the
// half-integer Bessel family.

#include <cstddef>
#include <utility>
#include <vector>

#include "lgs/errors.hpp"
#include "lgs/numeric.hpp"

namespace lgs {

double ln_gamma(double x);

// sign(Gamma(x)) and log|Gamma(x)| for any real x that is not a pole.
SignedLog gamma_signed(double x);

// 1/Gamma(x); exactly zero at the poles.
double rgamma(double x);

// Gamma(a)/Gamma(b) evaluated through log-gamma.
double gamma_ratio(double a, double b);

double pochhammer(double a, std::size_t n);
SignedLog pochhammer_log(double a, std::size_t n);

double factorial(std::size_t n);
double ln_factorial(std::size_t n);

// Explicit terminating 1F1 sum; loses accuracy badly for large n.
double laguerre_explicit(std::size_t n, double alpha, double z);

// Three-term recurrence.
double laguerre_recurrence(std::size_t n, double alpha, double z);

// L_0 .. L_nmax at one argument.
std::vector<double> laguerre_table(std::size_t nmax, double alpha, double z);

// 2F1(-n, b; c; z) as a finite sum of n+1 terms.
double hyp2f1_terminating(int neg_n, double b, double c, double z);

// Convergent Gauss series for |z| < 1, or a terminating sum when a or b
// is a nonpositive integer.
double hyp2f1_series(double a, double b, double c, double z, double tol = 1e-16);

// 2F1(a,b;c;z) through (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)).
double hyp2f1_transform_pfaff(double a, double b, double c, double z);

// Partial sum sum_{k=0}^{K} (rho+1)_k (alpha+rho+1)_k / ((rho-n+1)_k k!) u^k.
double hyp2f1_asymptotic_series(double rho, double alpha, double u, std::size_t n,
                                std::size_t k_terms);

// G_0 .. G_nmax with G_n = 2F1(-n, b; c; x).  Forward recurrence, except
// when c-b is a nonpositive integer: then every G_n is minimal and the
// Euler-transformed finite sum is used instead.
std::vector<double> hyp2f1_neg_n_sequence(double b, double c, double x, std::size_t nmax);

double gegenbauer(std::size_t n, double lambda, double x);
double legendre(std::size_t n, double x);

struct LegendreWeight {
    std::size_t degree;
    double weight;
};

// C_m^mu(x) = sum_s weight_s * P_{m-2s}(x).
std::vector<LegendreWeight> gegenbauer_to_legendre(std::size_t m, double mu);

// I_{m+1/2}(z) and K_{m+1/2}(z).
double bessel_i_half(std::size_t m, double z);
double bessel_k_half(std::size_t m, double z);

// Same, as sign and log-magnitude so that high orders neither overflow nor underflow.
SignedLog bessel_i_half_log(std::size_t m, double z);
SignedLog bessel_k_half_log(std::size_t m, double z);

// I_{j+1/2}(z), K_{j+1/2}(z) for any integer j (negative orders included).
double bessel_i_halfint(int j, double z);
double bessel_k_halfint(int j, double z);

// Reduced Bessel function khat_{m+1/2}(z) = sqrt(2/pi) z^{m+1/2} K_{m+1/2}(z).
double rbf_half(std::size_t m, double z);

// (-1)^m/(n+m)!: L_n^{(m)}(z) = factor * [L_{n+m}^m(z)] in the
// Bethe-Salpeter normalization.
double laguerre_bs_convert(std::size_t n, std::size_t m);

}  // namespace lgs
