#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "lgs/errors.hpp"
#include "lgs/laguerre_series.hpp"
#include "lgs/specfun.hpp"

using namespace lgs;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

const QuadratureRule& rule(double alpha) { return gauss_laguerre_cached(kDefaultQuadratureNodes, alpha); }

}  // namespace

TEST_CASE("closed-form coefficients") {
    CHECK(coeff_monomial(1, 0.0, 0) == 1.0);
    CHECK(coeff_monomial(1, 0.0, 1) == -1.0);
    CHECK(coeff_monomial(0, 1.5, 0) == 1.0);
    CHECK(coeff_monomial(0, 1.5, 3) == 0.0);
    CHECK(coeff_monomial(3, 0.5, 2) == Approx(21.0).epsilon(1e-15));
    for (std::size_t n = 4; n < 10; ++n) CHECK(coeff_monomial(3, 0.5, n) == 0.0);

    CHECK(coeff_power(0.5, 0.0, 0) == Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-15));
    CHECK(coeff_power(0.5, 0.0, 1) == Approx(-std::sqrt(std::numbers::pi) / 4).epsilon(1e-15));
    CHECK(coeff_power(1.7, 1.0, 6) == Approx(0.002914920664842743410).epsilon(1e-13));
    CHECK_THROWS_AS(coeff_power(-0.6, 0.0, 0), DomainError);

    CHECK(coeff_power_exp(0.5, 0.0, 0.0, 1) == coeff_power(0.5, 0.0, 1));
    CHECK(coeff_power_exp(2.0, -1.0, 0.0, 0) == Approx(0.25).epsilon(1e-15));
    CHECK(coeff_power_exp(0.5, -1.0, 0.0, 10) == Approx(-0.01198435748874801682).epsilon(1e-12));
    CHECK(coeff_power_exp(2.0, -1.0, 0.0, 10) == Approx(0.00634765625).epsilon(1e-13));
    CHECK_THROWS_AS(coeff_power_exp(0.5, 0.5, 0.0, 0), DomainError);

    for (double rho : {0.5, 1.7, 3.0})
        for (double alpha : {0.0, 1.0, 2.5})
            for (std::size_t n : {0, 1, 7, 60, 300})
                CHECK(coeff_power_exp(rho, 0.0, alpha, n) == coeff_power(rho, alpha, n));
}

TEST_CASE("coefficient stream agrees with pointwise coefficients") {
    for (double u : {-1.0, -0.5, 0.2, 0.45}) {
        const auto all = coeffs_power_exp(0.5, u, 1.0, 120);
        const LaguerreSeries s = power_exp_series(0.5, u, 1.0);
        for (std::size_t n : {0, 3, 40, 120}) {
            const double v = coeff_power_exp(0.5, u, 1.0, n);
            CHECK(std::fabs(all[n] - v) <= 1e-12 * std::fabs(v) + 1e-300);
            CHECK(std::fabs(s.coeff(n) - v) <= 1e-12 * std::fabs(v) + 1e-300);
        }
    }
    const auto integral = coeffs_power_exp(2.0, -1.0, 0.0, 60);
    CHECK(std::fabs(integral[60] - coeff_power_exp(2.0, -1.0, 0.0, 60)) <= 1e-12 * std::fabs(integral[60]));
}

TEST_CASE("quadrature projection") {
    // f = L_3^{(alpha)}
    for (double alpha : {0.0, 1.0}) {
        auto f = [alpha](double z) { return laguerre_recurrence(3, alpha, z); };
        for (std::size_t n = 0; n <= 6; ++n)
            CHECK(std::fabs(coeff_numeric(f, alpha, n, rule(alpha)) - (n == 3 ? 1.0 : 0.0)) <= 1e-11);
    }
    auto one = [](double) { return 1.0; };
    CHECK(std::fabs(coeff_numeric(one, 0.0, 0, rule(0.0)) - 1.0) <= 1e-12);
    CHECK(std::fabs(coeff_numeric(one, 0.0, 4, rule(0.0))) <= 1e-12);

    // z^{1/2}: the fractional power is folded into the rule
    for (std::size_t n = 0; n <= 5; ++n)
        CHECK(std::fabs(coeff_numeric(RadialClosedForm{Power{0.5}}, 0.0, n, rule(0.0)) - coeff_power(0.5, 0.0, n)) <= 1e-10);
    // smooth callable against the analytic stream
    auto ex = [](double z) { return std::exp(-0.5 * z); };
    for (std::size_t n = 0; n <= 8; ++n)
        CHECK(std::fabs(coeff_numeric(ex, 0.0, n, rule(0.0)) - coeff_power_exp(0.0, -0.5, 0.0, n)) <= 1e-12);
    // power times exponential and the Slater function through the closed-form overload
    for (std::size_t n : {0, 4, 10})
        CHECK(std::fabs(coeff_numeric(RadialClosedForm{PowerExp{0.5, -1.0}}, 0.0, n, rule(0.0))
                        - coeff_power_exp(0.5, -1.0, 0.0, n)) <= 1e-11);
    const LaguerreSeries stf = stf_series(2.5, 0, 2.0, 1.0, 0.0);
    for (std::size_t n : {0, 3, 9}) {
        // chi(r) e^{gamma r} at z = 2 gamma r, gamma = 1, alpha = 2
        auto g = [](double z) { return std::pow(z, 1.5) * std::exp(-0.5 * z); };
        CHECK(std::fabs(coeff_numeric(g, 2.0, n, rule(2.0)) - stf.coeff(n)) <= 1e-8);
    }
}

TEST_CASE("series evaluation and norms") {
    CHECK(series_eval(monomial_series(1, 0.0), 2.4, 1) == Approx(2.4).epsilon(1e-15));
    const LaguerreSeries p = power_series(0.5, 0.0);
    CHECK(series_eval(p, 1.0, 0) == p.coeff(0));
    CHECK(std::fabs(series_eval(p, 1.0, 200) - 1.0) < 0.05);

    CHECK(weighted_l2_norm([](double z) { return normalized_laguerre(7, 1.5, z); }, 1.5, rule(1.5)) == Approx(1.0).epsilon(1e-10));
    CHECK(weighted_l2_norm([](double z) { return std::sqrt(z); }, 0.0, rule(0.0)) == Approx(1.0).epsilon(1e-12));
    CHECK(weighted_l2_norm([](double z) { return std::exp(-0.5 * z); }, 0.0, rule(0.0)) == Approx(std::sqrt(0.5)).epsilon(1e-12));

    auto rt = [](double z) { return std::sqrt(z); };
    CHECK(parseval_gap(p, rt, 0.0, 0, rule(0.0)) == Approx(1.0 - std::numbers::pi / 4).epsilon(1e-12));
    double prev = parseval_gap(p, rt, 0.0, 10, rule(0.0));
    for (std::size_t M : {20, 30, 50}) {
        const double g = parseval_gap(p, rt, 0.0, M, rule(0.0));
        CHECK(g > 0.0);
        CHECK(g < prev);
        prev = g;
    }
    const LaguerreSeries l2 = synthetic_series(0.5, [](std::size_t n) {
        return n == 2 ? std::sqrt(2.0 / std::exp(ln_gamma(3.5))) : 0.0;
    });
    CHECK(std::fabs(parseval_gap(l2, [](double z) { return normalized_laguerre(2, 0.5, z); }, 0.5, 4, rule(0.5))) <= 1e-10);
}

TEST_CASE("orthonormality of normalized Laguerre functions") {
    for (double alpha : {0.0, 1.0, 2.5}) {
        const QuadratureRule& r = rule(alpha);
        for (std::size_t n = 0; n <= 15; ++n)
            for (std::size_t m = 0; m <= 15; ++m) {
                double s = 0.0;
                for (std::size_t j = 0; j < r.count; ++j)
                    s += r.weights[j] * normalized_laguerre(n, alpha, r.nodes[j]) * normalized_laguerre(m, alpha, r.nodes[j]);
                CHECK(std::fabs(s - (n == m ? 1.0 : 0.0)) <= 1e-9);
            }
    }
}

TEST_CASE("coefficient asymptotics") {
    auto asym = [](double rho, double alpha, std::size_t n) {
        return std::exp(ln_gamma(rho + alpha + 1.0)) * rgamma(-rho) * std::pow(static_cast<double>(n), -alpha - rho - 1.0);
    };
    const double r100 = coeff_power(0.5, 0.0, 100) / asym(0.5, 0.0, 100);
    const double r200 = coeff_power(0.5, 0.0, 200) / asym(0.5, 0.0, 200);
    const double r400 = coeff_power(0.5, 0.0, 400) / asym(0.5, 0.0, 400);
    CHECK(std::fabs(r200 - 1.0) < 0.05);
    CHECK(std::fabs(r400 - 1.0) < std::fabs(r100 - 1.0));

    CHECK(std::fabs(coeff_power_exp(0.5, -1.0, 0.0, 200) / coeff_power(0.5, 0.0, 200) - 1.0) < 0.05);
    CHECK(coeff_power_exp(1.5, -0.5, 1.0, 200) / asym(1.5, 1.0, 200) == Approx(1.0271341129977724476).epsilon(1e-10));

    // integral power: geometric decay with ratio u/(u-1) approached like (1 + 1/n)^2
    const double q = coeff_power_exp(2.0, -1.0, 0.0, 101) / coeff_power_exp(2.0, -1.0, 0.0, 100);
    CHECK(q == Approx(0.5103136181856451273).epsilon(1e-12));
    const double q800 = coeff_power_exp(2.0, -1.0, 0.0, 801) / coeff_power_exp(2.0, -1.0, 0.0, 800);
    CHECK(std::fabs(q800 - 0.5) < 0.01 * 0.5);
}

TEST_CASE("Guseinov and Slater radial functions") {
    CHECK(guseinov_radial(0.0, 1.0, 1, 0, 0.0) == Approx(2.0).epsilon(1e-15));
    CHECK(guseinov_radial(-1.0, 2.0, 2, 1, 0.5) == Approx(1.201489223640340735).epsilon(1e-14));
    CHECK_THROWS_AS(guseinov_radial(0.0, 1.0, 1, 1, 0.5), DomainError);

    boost::math::quadrature::exp_sinh<double> integrator;
    auto overlap = [&](std::size_t n1, std::size_t n2, std::size_t l, double k) {
        return integrator.integrate([&](double r) {
            if (r > 300.0) return 0.0;
            return guseinov_radial(k, 1.0, n1, l, r) * guseinov_radial(k, 1.0, n2, l, r) * std::pow(r, k + 2.0);
        });
    };
    CHECK(std::fabs(overlap(1, 2, 0, 0.0)) <= 1e-10);
    CHECK(std::fabs(overlap(2, 2, 0, 0.0) - 1.0) <= 1e-10);
    CHECK(std::fabs(overlap(3, 5, 1, 1.0)) <= 1e-10);

    for (std::size_t n = 1; n <= 7; ++n)
        for (std::size_t l = 0; l < n; ++l) {
            const auto G = guseinov_to_stf_coeffs(0.0, 1.3, n, l);
            REQUIRE(G.size() == n - l);
            for (std::size_t j = 1; j < G.size(); ++j) CHECK(G[j] * G[j - 1] < 0.0);
            for (int i = 1; i <= 10; ++i) {
                const double r = 0.4 * i;
                double s = 0.0;
                for (std::size_t j = 0; j < G.size(); ++j) s += G[j] * stf_radial(static_cast<double>(j + l + 1), 1.3, r);
                const double psi = guseinov_radial(0.0, 1.3, n, l, r);
                CHECK(std::fabs(s - psi) <= 1e-12 * std::max(1.0, std::fabs(psi)));
            }
        }
}

TEST_CASE("Slater function in the Guseinov basis") {
    CHECK(stf_in_guseinov_coeffs(1.0, 0, 1.0, 1.0, 0.0, 2) == 0.0);
    CHECK(stf_in_guseinov_coeffs(2.5, 0, 1.0, 1.0, 0.0, 0) == Approx(1.028109253266621300).epsilon(1e-13));
    CHECK(stf_in_guseinov_coeffs(2.5, 0, 2.0, 1.0, 0.0, 3) == Approx(-0.06591603528854303450).epsilon(1e-12));
    for (std::size_t nu = 2; nu < 30; ++nu) CHECK(stf_in_guseinov_coeffs(3.0, 1, 0.8, 0.8, 0.0, nu) == 0.0);
    CHECK_THROWS_AS(stf_in_guseinov_coeffs(-0.7, 0, 1.0, 1.0, 0.0, 0), DomainError);

    // projection against the Guseinov functions
    boost::math::quadrature::exp_sinh<double> integrator;
    for (std::size_t nu : {0, 2, 5}) {
        const double proj = integrator.integrate([&](double r) {
            if (r > 300.0) return 0.0;
            return stf_radial(3.5, 1.4, r) * guseinov_radial(1.0, 0.9, nu + 2, 1, r) * std::pow(r, 3.0);
        });
        CHECK(std::fabs(stf_in_guseinov_coeffs(3.5, 1, 1.4, 0.9, 1.0, nu) - proj) <= 1e-10);
    }
}

TEST_CASE("lazy coefficient cache") {
    int calls = 0;
    const LaguerreSeries s(0.0, [&calls](std::size_t n, std::span<const double>) {
        ++calls;
        return 1.0 / static_cast<double>(n + 1);
    });
    CHECK(s.coeff(10) == Approx(1.0 / 11.0));
    const int after = calls;
    CHECK(s.coeff(3) == Approx(0.25));
    CHECK(calls == after);

    const LaguerreSeries p = power_series(0.5, 0.0);
    std::vector<double> a, b;
    std::thread t1([&] { a = p.coeffs(5000); });
    std::thread t2([&] { b = p.coeffs(5000); });
    t1.join();
    t2.join();
    CHECK(a == b);

    const LaguerreSeries bad = synthetic_series(0.0, [](std::size_t n) { return n == 2 ? std::nan("") : 1.0; });
    CHECK_THROWS_AS(bad.coeff(3), DomainError);
    CHECK_THROWS_AS(validate(RadialClosedForm{PowerExp{1.0, 0.7}}), DomainError);
    CHECK_THROWS_AS(validate(RadialClosedForm{GuseinovRadial{0.0, 1.0, 2, 2}}), DomainError);
}
