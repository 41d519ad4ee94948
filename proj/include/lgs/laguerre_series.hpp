#pragma once

// Laguerre-series coefficient streams f(z) = sum_n lambda_n L_n^{(alpha)}(z),
// analytic for the closed forms below and numeric through Gauss-Laguerre
// projection, plus the Guseinov and Slater radial functions.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lgs/quadrature.hpp"

namespace lgs {

struct Monomial { std::size_t m; };                 // z^m
struct Power { double rho; };                       // z^rho
struct PowerExp { double rho; double u; };          // z^rho e^{u z}
struct StfRadial { double N; std::size_t L; double beta; };   // (beta r)^{N-1} e^{-beta r}
struct GuseinovRadial { double k; double gamma; std::size_t n; std::size_t l; };
struct RbfRadial { std::size_t m; double beta; };   // khat_{m+1/2}(beta r)

using RadialClosedForm = std::variant<Monomial, Power, PowerExp, StfRadial, GuseinovRadial, RbfRadial>;

// Checks the invariants of a closed form; throws DomainError.
void validate(const RadialClosedForm& f);

// Value at x (z for the first three alternatives, r for the radial ones).
double radial_value(const RadialClosedForm& f, double x);

class LaguerreSeries {
public:
    // provider(n, previous) returns lambda_n; previous holds lambda_0..lambda_{n-1}.
    using Provider = std::function<double(std::size_t, std::span<const double>)>;

    LaguerreSeries(double alpha, Provider provider, std::optional<RadialClosedForm> tag = std::nullopt);

    double alpha() const { return alpha_; }
    const std::optional<RadialClosedForm>& closed_form() const { return tag_; }

    double coeff(std::size_t n) const;
    // lambda_0 .. lambda_{count-1}
    std::vector<double> coeffs(std::size_t count) const;

private:
    struct Cache;
    void fill(std::size_t upto) const;

    double alpha_;
    std::optional<RadialClosedForm> tag_;
    std::shared_ptr<Cache> cache_;
};

double coeff_monomial(std::size_t m, double alpha, std::size_t n);
double coeff_power(double rho, double alpha, std::size_t n);
double coeff_power_exp(double rho, double u, double alpha, std::size_t n);

// lambda_0 .. lambda_nmax of z^rho e^{uz}; shares the evaluation route of
// coeff_power_exp but runs the recurrence once.
std::vector<double> coeffs_power_exp(double rho, double u, double alpha, std::size_t nmax);

// Quadrature projection.  For closed forms with a fractional power z^p at
// the origin the power is folded into the weight (rule of the same size
// with alpha + p) so the projection stays spectrally accurate.
double coeff_numeric(const std::function<double(double)>& f, double alpha, std::size_t n,
                     const QuadratureRule& rule);
double coeff_numeric(const RadialClosedForm& f, double alpha, std::size_t n,
                     const QuadratureRule& rule);

double series_eval(const LaguerreSeries& s, double z, std::size_t M);

double weighted_l2_norm(const std::function<double(double)>& f, double alpha,
                        const QuadratureRule& rule);

// ||f||^2 - sum_{n<=M} lambda_n^2 Gamma(alpha+n+1)/n!.  Can be slightly
// negative through quadrature error.
double parseval_gap(const LaguerreSeries& s, const std::function<double(double)>& f, double alpha,
                    std::size_t M, const QuadratureRule& rule);

// Normalized Laguerre function sqrt(n!/Gamma(n+alpha+1)) L_n^{(alpha)}(z).
double normalized_laguerre(std::size_t n, double alpha, double z);

LaguerreSeries monomial_series(std::size_t m, double alpha);
LaguerreSeries power_series(double rho, double alpha);
LaguerreSeries power_exp_series(double rho, double u, double alpha);
// Arbitrary coefficient function, no closed-form tag.
LaguerreSeries synthetic_series(double alpha, std::function<double(std::size_t)> lambda);

double stf_radial(double N, double beta, double r);

double guseinov_radial(double k, double gamma, std::size_t n, std::size_t l, double r);

// G_j with Psi radial = sum_j G_j (gamma r)^{j+l} e^{-gamma r}.
std::vector<double> guseinov_to_stf_coeffs(double k, double gamma, std::size_t n, std::size_t l);

// nu-th coefficient of the Slater radial function in the Guseinov basis
// Psi_{nu+L+1, L} with weight r^{k+2}.
double stf_in_guseinov_coeffs(double N, std::size_t L, double beta, double gamma, double k,
                              std::size_t nu);

// Slater radial function divided by e^{-gamma r}(2 gamma r)^L, written as a
// Laguerre series in z = 2 gamma r with alpha = 2L+k+2.
LaguerreSeries stf_series(double N, std::size_t L, double beta, double gamma, double k);

}  // namespace lgs
