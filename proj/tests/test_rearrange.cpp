#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "lgs/errors.hpp"
#include "lgs/rearrange.hpp"
#include "lgs/specfun.hpp"

using namespace lgs;
using doctest::Approx;

namespace {

double loglog_slope(const LaguerreSeries& s, std::size_t nu, std::vector<std::size_t> Ms) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t M : Ms) {
        const double x = std::log(static_cast<double>(M));
        const double y = std::log(std::fabs(rearranged_coefficient(s, nu, M)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(Ms.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("truncated rearrangement") {
    const auto z = rearrange_truncated(monomial_series(1, 0.0), 1);
    REQUIRE(z.gamma_coeffs.size() == 2);
    CHECK(std::fabs(z.gamma_coeffs[0]) <= 1e-15);
    CHECK(z.gamma_coeffs[1] == Approx(1.0).epsilon(1e-15));

    const LaguerreSeries p = power_series(0.5, 1.0);
    const auto zero = rearrange_truncated(p, 0);
    REQUIRE(zero.gamma_coeffs.size() == 1);
    CHECK(zero.gamma_coeffs[0] == p.coeff(0));

    // exact rational rearrangement of z^3 at alpha = 1/2
    using boost::multiprecision::cpp_rational;
    const cpp_rational alpha(1, 2);
    std::vector<cpp_rational> lam(4);
    for (int n = 0; n <= 3; ++n) {
        cpp_rational v = 1;
        for (int i = 0; i < 3; ++i) v *= alpha + 1 + i;
        for (int i = 0; i < n; ++i) v *= cpp_rational(-3 + i) / (alpha + 1 + i);
        lam[n] = v;
        CHECK(coeff_monomial(3, 0.5, n) == static_cast<double>(v));
    }
    const auto cubic = rearrange_truncated(monomial_series(3, 0.5), 3);
    for (int nu = 0; nu <= 3; ++nu) {
        cpp_rational g = 0, w = 1;
        for (int mu = 0; mu + nu <= 3; ++mu) {
            g += w * lam[mu + nu];
            w *= (alpha + nu + 1 + mu) / cpp_rational(mu + 1);
        }
        CHECK(static_cast<double>(g) == Approx(nu == 3 ? -6.0 : 0.0));
        CHECK(std::fabs(cubic.gamma_coeffs[nu] - (nu == 3 ? 1.0 : 0.0)) <= 1e-12);
    }
}

TEST_CASE("monomial fixed point") {
    for (std::size_t m = 0; m <= 10; ++m)
        for (double alpha : {0.0, 0.5, 2.0}) {
            const auto t = rearrange_truncated(monomial_series(m, alpha), m);
            for (std::size_t i = 0; i <= m; ++i) CHECK(std::fabs(t.gamma_coeffs[i] - (i == m ? 1.0 : 0.0)) <= 1e-12);
        }
}

TEST_CASE("polynomial equals the Laguerre partial sum") {
    std::vector<LaguerreSeries> family = {power_series(0.5, 0.0), power_exp_series(1.5, -1.0, 1.0),
                                          power_exp_series(2.0, -0.5, 0.5), stf_series(2.5, 1, 1.5, 1.0, 0.0),
                                          synthetic_series(0.3, [](std::size_t n) { return std::cos(1.0 + n) / (n + 1.0); })};
    for (const auto& s : family)
        for (std::size_t M : {1, 7, 20, 40})
            for (double z : {0.1, 1.0, 5.0, 20.0}) {
                const double ref = series_eval(s, z, M);
                CHECK(std::fabs(rearrange_truncated(s, M).evaluate(z) - ref) <= 1e-12 * std::fabs(ref));
            }
}

TEST_CASE("rounded coefficients lose the identity at large z") {
    const auto t = rearrange_truncated(power_series(0.5, 0.0), 40);
    const double ref = series_eval(power_series(0.5, 0.0), 20.0, 40);
    CHECK(std::fabs(t.evaluate(20.0) - ref) <= 1e-12 * std::fabs(ref));
    CHECK(std::fabs(t.evaluate_rounded(20.0) - ref) > 1e-6 * std::fabs(ref));
}

TEST_CASE("inner mu probes") {
    const auto mono = monomial_series(2, 0.0);
    const auto a = inner_mu_probe(mono, 1, default_cutoffs());
    CHECK(a.verdict == InnerVerdict::Converges);
    CHECK(std::fabs(a.limit_estimate) <= 1e-12);
    const auto b = inner_mu_probe(mono, 2, default_cutoffs());
    CHECK(b.verdict == InnerVerdict::Converges);
    CHECK(b.limit_estimate == Approx(2.0));

    const auto s = power_series(0.5, 0.0);
    const auto c = inner_mu_probe(s, 0, default_cutoffs());
    CHECK(c.verdict == InnerVerdict::Converges);
    CHECK(std::fabs(c.limit_estimate) < 1e-3);
    REQUIRE(c.partial_sums.size() == default_cutoffs().size());
    CHECK(c.partial_sums.back() == Approx(inner_mu_partial_sums(s, 0, {10000})[0]).epsilon(1e-14));

    const auto d = inner_mu_probe(s, 2, default_cutoffs());
    CHECK(d.verdict == InnerVerdict::Diverges);
    CHECK(d.growth_exponent == Approx(1.5).epsilon(0.05));

    const auto e = inner_mu_probe(power_exp_series(3.0, -1.0, 0.0), 4, default_cutoffs());
    CHECK(e.verdict == InnerVerdict::Converges);
}

TEST_CASE("coefficient flow") {
    const auto s = power_series(0.5, 0.0);
    CHECK(loglog_slope(s, 0, {100, 1000, 10000}) == Approx(-0.5).epsilon(0.1));
    CHECK(loglog_slope(s, 1, {100, 1000, 10000}) == Approx(0.5).epsilon(0.1));
    // vanishing branch against the tail model
    for (std::size_t M : {100, 1000}) {
        const double g = rearranged_coefficient(s, 0, M);
        CHECK(g > 0.0);
        CHECK(g == Approx(-zeta_tail(0.5, 0.0, 0, M + 1)).epsilon(0.01));
    }
    // integral power: coefficients settle
    const auto q = power_exp_series(3.0, -1.0, 0.0);
    CHECK(rearranged_coefficient(q, 2, 300) == Approx(rearranged_coefficient(q, 2, 200)).epsilon(1e-12));
}

TEST_CASE("decay classification") {
    const DecayClass a = classify_decay(power_series(0.5, 0.0), 100, 400);
    CHECK(a.kind == DecayKind::AlgebraicMonotone);
    CHECK(a.exponent == Approx(-1.5).epsilon(0.02));
    const DecayClass b = classify_decay(power_exp_series(2.0, -1.0, 0.0), 100, 400);
    CHECK(b.kind == DecayKind::ExponentialOrFactorial);
    CHECK(b.ratio == Approx(0.5).epsilon(0.01));
    const DecayClass c = classify_decay(synthetic_series(0.0, [](std::size_t n) {
        const double v = 1.0 / ((n + 1.0) * (n + 1.0));
        return n % 2 ? -v : v;
    }), 100, 400);
    CHECK(c.kind == DecayKind::AlgebraicAlternating);
    CHECK(c.sign_pattern == -1);
    CHECK_THROWS_AS(classify_decay(power_series(0.5, 0.0), 100, 120), DomainError);
}

TEST_CASE("zeta-type tail") {
    CHECK(power_tail(1.5, 10).value == Approx(0.6486616319415704221).epsilon(1e-12));
    CHECK(power_tail(1.5, 10).error_bound < 1e-12);
    CHECK(zeta_tail(0.5, 0.0, 0, 100) == Approx(-0.05012531249544297686).epsilon(1e-10));
    CHECK(zeta_tail(0.5, 0.0, 0, 100) < 0.0);
    // ~ 2 M^{-1/2} times the prefactor
    const double pref = std::exp(ln_gamma(1.5)) * rgamma(-0.5);
    CHECK(zeta_tail(0.5, 0.0, 0, 1000000) == Approx(pref * 2.0 / 1000.0).epsilon(1e-3));
    CHECK_THROWS_AS(zeta_tail(0.5, 0.0, 1, 100), DomainError);
    CHECK_THROWS_AS(power_tail(1.0, 10), DomainError);
}

TEST_CASE("formal power diagnosis") {
    auto v = formal_power_diagnosis(0.5, 0.0, 0.0, 3);
    REQUIRE(v.size() == 4);
    CHECK(v[0].verdict == FormalVerdict::VanishesToZero);
    for (int i = 1; i <= 3; ++i) CHECK(v[i].verdict == FormalVerdict::DivergesToInfinity);
    for (const auto& d : formal_power_diagnosis(3.0, -1.0, 0.0, 6)) CHECK(d.verdict == FormalVerdict::FiniteNonzero);
    auto w = formal_power_diagnosis(2.5, -1.0, 0.0, 5);
    for (std::size_t nu = 0; nu <= 5; ++nu)
        CHECK(w[nu].verdict == (nu <= 2 ? FormalVerdict::VanishesToZero : FormalVerdict::DivergesToInfinity));

    for (double rho : {0.5, 1.5, 2.5})
        for (double u : {0.0, -1.0}) {
            const auto s = power_exp_series(rho, u, 0.0);
            const auto diag = formal_power_diagnosis(rho, u, 0.0, 5);
            for (std::size_t nu = 0; nu <= 5; ++nu) {
                const auto probe = inner_mu_probe(s, nu, default_cutoffs());
                CAPTURE(rho);
                CAPTURE(u);
                CAPTURE(nu);
                if (diag[nu].verdict == FormalVerdict::VanishesToZero) {
                    CHECK(probe.verdict == InnerVerdict::Converges);
                    CHECK(std::fabs(probe.limit_estimate) < 1e-2);
                } else {
                    CHECK(probe.verdict == InnerVerdict::Diverges);
                }
            }
        }
}

TEST_CASE("binomial limits") {
    CHECK(binomial_1f0_limit(0, 0.5) == BinomialLimit::Zero);
    CHECK(binomial_1f0_limit(2, 0.5) == BinomialLimit::Infinite);
    CHECK(binomial_1f0_limit(1, -0.5) == BinomialLimit::Infinite);
    CHECK(binomial_1f0_limit(2, 2.0) == BinomialLimit::Finite);
}
