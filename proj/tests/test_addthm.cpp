#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/legendre.hpp>

#include "lgs/addthm.hpp"
#include "lgs/errors.hpp"
#include "lgs/specfun.hpp"

using namespace lgs;
using std::numbers::pi;

TEST_CASE("geometry") {
    CHECK_THROWS_AS(validate(TwoRangeGeometry{2.0, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate(TwoRangeGeometry{0.5, 1.0, 1.5}), DomainError);
    CHECK(displacement({1.0, 3.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(displacement({1.0, 3.0, 1.0}, Displacement::plus) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("F_eta direct and singularities") {
    CHECK(f_eta_direct(1.0, 3.0, 0.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f_eta_direct(0.0, 2.0, 0.0, -0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f_eta_direct(0.5, 1.0, pi / 3, 0.5) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));

    auto s = f_eta_singularities(1.5, 0.0);
    CHECK(std::abs(s.z1 - 1.5) < 1e-7);
    CHECK(std::abs(s.z2 - 1.5) < 1e-7);
    CHECK(s.radius == 1.5);
    s = f_eta_singularities(1.0, pi / 2);
    CHECK(std::abs(std::abs(s.z1) - 1.0) < 1e-15);
    CHECK(std::fabs(s.z1.real()) < 1e-15);
    s = f_eta_singularities(2.0, pi / 3);
    CHECK(std::abs(s.z1 - std::complex<double>(1.0, std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(s.z2 - std::complex<double>(1.0, -std::sqrt(3.0))) < 1e-14);
    CHECK(s.radius == 2.0);
    CHECK_THROWS_AS(f_eta_singularities(0.0, 1.0), DomainError);
}

TEST_CASE("Gegenbauer expansions") {
    const auto poly = gegenbauer_expand_small(0.7, 1.3, 0.4, 1.0, 20);
    CHECK(poly.diag.terminated);
    CHECK(poly.diag.verdict == ExpansionVerdict::Converged);
    CHECK(poly.value == doctest::Approx(f_eta_direct(0.7, 1.3, 0.4, 1.0)).epsilon(1e-14));
    for (std::size_t n = 3; n < poly.terms.size(); ++n) CHECK(poly.terms[n] == 0.0);

    const auto half = gegenbauer_expand_small(0.5, 1.0, pi / 3, 0.5, 60);
    CHECK(std::fabs(half.value - f_eta_direct(0.5, 1.0, pi / 3, 0.5)) <= 1e-10);

    const auto div = gegenbauer_expand_small(2.0, 1.0, pi / 3, 0.5, 200);
    CHECK(div.diag.verdict == ExpansionVerdict::Diverging);
    CHECK(div.diag.ratio_trend == doctest::Approx(2.0).epsilon(0.05));

    for (double z : {0.3, 1.7}) {
        const auto a = gegenbauer_expand_large(z, 0.9, 0.8, -0.5, 80);
        const auto b = gegenbauer_expand_small(0.9, z, 0.8, -0.5, 80);
        CHECK(a.value == b.value);
        CHECK(a.diag.verdict == b.diag.verdict);
    }
    const auto lg = gegenbauer_expand_large(2.5, 1.0, pi / 4, -0.5, 80);
    CHECK(std::fabs(lg.value - f_eta_direct(2.5, 1.0, pi / 4, -0.5)) <= 1e-10);
    CHECK(gegenbauer_expand_large(3.0, 1.0, 0.2, 1.0, 20).diag.terminated);
}

TEST_CASE("two-range dichotomy") {
    for (double th : {0.0, pi / 3, pi / 2}) {
        for (double q : {0.3, 0.7}) {
            const auto r = gegenbauer_expand_small(q, 1.0, th, 0.5, 200);
            CHECK(r.diag.verdict == ExpansionVerdict::Converged);
            CHECK(std::fabs(r.value - f_eta_direct(q, 1.0, th, 0.5)) <= 1e-10);
        }
        for (double q : {1.5, 3.0})
            CHECK(gegenbauer_expand_small(q, 1.0, th, 0.5, 200).diag.verdict == ExpansionVerdict::Diverging);
    }
}

TEST_CASE("radius law") {
    for (double th : {pi / 4, pi / 2}) {
        const auto r = gegenbauer_expand_small(0.5, 1.0, th, 0.5, 200);
        CHECK(r.diag.ratio_trend == doctest::Approx(0.5).epsilon(0.02));
    }
}

TEST_CASE("convergence probe") {
    auto geom = [](double q) {
        std::vector<double> t;
        for (int n = 0; n < 200; ++n) t.push_back(std::pow(q, n));
        return t;
    };
    CHECK(convergence_probe(geom(0.5), 200).verdict == ExpansionVerdict::Converged);
    auto big = geom(2.0);
    big.resize(60);
    CHECK(convergence_probe(big, 60).verdict == ExpansionVerdict::Diverging);
    CHECK(convergence_probe(geom(0.999), 200).verdict == ExpansionVerdict::SlowlyConverging);
}

TEST_CASE("Legendre expansion of powers") {
    const TwoRangeGeometry g{0.5, 1.0, 0.3};
    const auto lap = power_addition_legendre(-1.0, g, 60);
    for (std::size_t l = 0; l <= 10; ++l) {
        const double want = std::pow(0.5, static_cast<double>(l)) * boost::math::legendre_p(static_cast<int>(l), 0.3);
        CHECK(std::fabs(lap.terms[l] - want) <= 1e-12 * std::max(std::fabs(want), 1e-300));
    }
    CHECK(std::fabs(lap.value - 1.0 / std::sqrt(1.25 - 0.3)) <= 1e-12);

    for (double nu : {2.0, 4.0}) {
        for (auto sign : {Displacement::minus, Displacement::plus}) {
            const auto e = power_addition_legendre(nu, g, 12, sign);
            std::size_t nonzero = 0;
            for (double t : e.terms)
                if (t != 0.0) ++nonzero;
            CHECK(nonzero == static_cast<std::size_t>(nu / 2) + 1);
            CHECK(e.value == doctest::Approx(std::pow(displacement(g, sign), nu)).epsilon(1e-13));
        }
    }

    const auto one = power_addition_legendre(1.0, {0.5, 1.0, 0.5}, 40);
    CHECK(std::fabs(one.value - f_eta_direct(0.5, 1.0, pi / 3, 0.5)) <= 1e-10);
    CHECK_THROWS_AS(power_addition_legendre(1.0, {1.0, 1.0, 0.5}, 10), DomainError);
}

TEST_CASE("1s function") {
    CHECK(one_s_direct(1.3, {1.0, 1.0, 1.0}) == 1.0);
    CHECK(one_s_direct(1.0, {0.5, 1.0, 0.5}) == doctest::Approx(std::exp(-std::sqrt(0.75))).epsilon(1e-15));
    CHECK(one_s_direct(2.0, {1.0, 3.0, 1.0}) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));

    CHECK(std::fabs(one_s_addition(1.0, {0.5, 1.0, 0.5}, 30).value - std::exp(-std::sqrt(0.75))) <= 1e-8);
    CHECK(std::fabs(one_s_addition(1.0, {0.5, 1.0, 1.0}, 30).value - std::exp(-0.5)) <= 1e-8);
    CHECK(std::fabs(one_s_addition(1.0, {1e-9, 1.0, 0.4}, 30).value - std::exp(-1.0)) <= 1e-8);
    CHECK_THROWS_AS(one_s_addition(1.0, {1.0, 1.0, 0.4}, 30), DomainError);
}

TEST_CASE("reduced Bessel addition theorem") {
    const TwoRangeGeometry g{0.3, 0.9, -0.2};
    CHECK(rbf_addition(1, 1.7, g, 40).value == one_s_addition(1.7, g, 40).value);
    const TwoRangeGeometry g2{0.4, 1.2, std::cos(pi / 4)};
    CHECK(std::fabs(rbf_addition(2, 1.0, g2, 30).value - rbf_half(1, displacement(g2))) <= 1e-8);
    const TwoRangeGeometry g3{0.4, 1.2, 1.0};
    CHECK(std::fabs(rbf_addition(3, 1.0, g3, 40).value - rbf_half(2, 0.8)) <= 1e-8);

    double worst = 0.0;
    for (double t : {0.2, 0.5, 0.8})
        for (double th : {0.0, pi / 3, 2 * pi / 3})
            for (double b : {0.5, 1.0, 2.0})
                for (std::size_t n = 1; n <= 3; ++n)
                    for (auto sign : {Displacement::minus, Displacement::plus}) {
                        const TwoRangeGeometry gg{t, 1.0, std::cos(th)};
                        const double d = rbf_direct(n, b, gg, sign);
                        worst = std::max(worst, std::fabs(rbf_addition(n, b, gg, 150, sign).value - d) / d);
                    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("finite radial identities") {
    CHECK(stf_to_bfun_radial_check(1, 0, 1.3, 0.7) <= 1e-15);
    CHECK(stf_to_bfun_radial_check(3, 1, 1.0, 2.0) <= 1e-12);
    CHECK(stf_to_bfun_radial_check(4, 0, 0.5, 5.0) <= 1e-12);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 8; ++n)
        for (std::size_t l = 0; l < n; ++l)
            for (double r : {0.3, 1.0, 4.0}) worst = std::max(worst, stf_to_bfun_radial_check(n, l, 1.2, r));
    CHECK(worst <= 1e-11);

    CHECK(explag_to_rbf_check(0, 0.3, 1.0) <= 1e-15);
    CHECK(explag_to_rbf_check(2, 0.0, 1.5) <= 1e-12);
    CHECK(explag_to_rbf_check(5, 2.5, 0.7) <= 1e-11);
    worst = 0.0;
    for (std::size_t n = 0; n <= 10; ++n)
        for (double a : {0.0, 1.0, 2.5})
            for (double z : {0.5, 2.0}) worst = std::max(worst, explag_to_rbf_check(n, a, z));
    CHECK(worst <= 1e-11);
}
