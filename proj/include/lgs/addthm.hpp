#pragma once

// Two-range addition theorems in radial/angular-scalar form: Gegenbauer
// expansions of F_eta, Legendre expansions of |r_< -+ r_>|^nu, the 1s
// function and reduced Bessel functions, plus finite radial identities
// between Slater, B and reduced Bessel functions.

#include <complex>
#include <cstddef>
#include <vector>

namespace lgs {

struct TwoRangeGeometry {
    double r_less = 0.0;
    double r_greater = 1.0;
    double cos_theta = 1.0;
};

// Which displacement an expansion represents: |r_< - r_>| (the geometry's
// own w) or |r_< + r_>| (cos_theta -> -cos_theta).
enum class Displacement { minus, plus };

void validate(const TwoRangeGeometry& g);
double displacement(const TwoRangeGeometry& g, Displacement sign = Displacement::minus);

enum class ExpansionVerdict { Converged, Diverging, SlowlyConverging };

struct ExpansionDiagnostics {
    std::size_t terms = 0;
    double last_term = 0.0;       // |last term kept|
    double tail_envelope = 0.0;   // max |term| over the trailing window
    double ratio_trend = 0.0;     // geometric mean of the last ratios
    std::vector<double> ratios;   // last five smoothed term ratios
    bool terminated = false;
    bool outside_radius = false;
    ExpansionVerdict verdict = ExpansionVerdict::SlowlyConverging;
};

inline constexpr std::size_t kRatioWindow = 16;

// Verdict from term magnitudes.  Ratios are window-maximum ratios
// (max|t| over the last W terms / max over the W before)^{1/W}, which is
// insensitive to sign changes and zeros of oscillating coefficients.
ExpansionDiagnostics convergence_probe(const std::vector<double>& terms, std::size_t max_terms);

struct ExpansionResult {
    double value = 0.0;
    std::vector<double> terms;
    ExpansionDiagnostics diag;
};

double f_eta_direct(double z, double u, double theta, double eta);

struct Singularities {
    std::complex<double> z1;
    std::complex<double> z2;
    double radius = 0.0;
};

Singularities f_eta_singularities(double u, double theta);

// u^{2 eta} sum_{n<=J} C_n^{-eta}(cos theta) (z/u)^n
ExpansionResult gegenbauer_expand_small(double z, double u, double theta, double eta, std::size_t J);
// z^{2 eta} sum_{n<=J} C_n^{-eta}(cos theta) (u/z)^n
ExpansionResult gegenbauer_expand_large(double z, double u, double theta, double eta, std::size_t J);

struct LegendreExpansion {
    double value = 0.0;
    std::vector<double> terms;         // per l, including r_>^nu
    std::vector<double> partial_sums;  // per l
    ExpansionDiagnostics diag;
};

// |r_< -+ r_>|^nu = r_>^nu sum_l s_l (2l+1) P_l(cos theta) t^l (-nu/2)_l/(3/2)_l
//                   2F1(l - nu/2, -(nu+1)/2; l+3/2; t^2),  t = r_</r_>,
// s_l = 1 for the minus displacement and (-1)^l for the plus displacement.
LegendreExpansion power_addition_legendre(double nu, const TwoRangeGeometry& g, std::size_t L,
                                          Displacement sign = Displacement::minus);

double one_s_direct(double beta, const TwoRangeGeometry& g, Displacement sign = Displacement::minus);

// Bessel-K Gegenbauer addition theorem at order 1/2, Legendre form.
ExpansionResult one_s_addition(double beta, const TwoRangeGeometry& g, std::size_t L,
                               Displacement sign = Displacement::minus);

// khat_{n-1/2}(beta |r_< -+ r_>|) as a double sum over l <= L and the
// n+1 Bessel orders per l.
ExpansionResult rbf_addition(std::size_t n, double beta, const TwoRangeGeometry& g, std::size_t L,
                             Displacement sign = Displacement::minus);

double rbf_direct(std::size_t n, double beta, const TwoRangeGeometry& g, Displacement sign = Displacement::minus);

// B_{p,l}(beta, r) = khat_{p-1/2}(beta r)(beta r)^l / (2^{p+l}(p+l)!)
double bfun_radial(std::size_t p, std::size_t l, double beta, double r);

// Relative residual of the finite Slater -> B function identity.
double stf_to_bfun_radial_check(std::size_t n, std::size_t l, double beta, double r);

// Relative residual of e^{-z} L_n^{(alpha)}(2z) as a reduced-Bessel sum.
double explag_to_rbf_check(std::size_t n, double alpha, double z);

const char* to_string(ExpansionVerdict v);

}  // namespace lgs
