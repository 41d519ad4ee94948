#include "lgs/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lgs {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

void require_alpha(double alpha, const char* who) {
    if (!(alpha > -1.0))
        throw DomainError(std::string(who) + ": alpha must exceed -1");
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive");
    int sign = 0;
    return lgamma_r(x, &sign);
}

SignedLog gamma_signed(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at nonpositive integer");
    int sign = 0;
    const double lg = lgamma_r(x, &sign);
    return {lg, sign};
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    const SignedLog g = gamma_signed(x);
    return g.sign * std::exp(-g.log_abs);
}

double gamma_ratio(double a, double b) {
    if (is_nonpositive_integer(b)) {
        if (is_nonpositive_integer(a)) throw PoleError("gamma_ratio: both arguments are poles");
        return 0.0;
    }
    return (gamma_signed(a) / gamma_signed(b)).value();
}

double pochhammer(double a, std::size_t n) {
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = a + static_cast<double>(k);
        if (f == 0.0) return 0.0;
        p *= f;
    }
    return p;
}

SignedLog pochhammer_log(double a, std::size_t n) {
    if (n == 0) return {0.0, 1};
    if (is_nonpositive_integer(a)) {
        const auto ma = static_cast<std::size_t>(-a);
        if (n > ma) return {};
        const int sign = (n % 2 == 0) ? 1 : -1;
        return {ln_factorial(ma) - ln_factorial(ma - n), sign};
    }
    if (n <= 64 && std::fabs(a) < 1e4) {
        // Direct product keeps full relative accuracy for short products.
        double p = 1.0;
        double log_scale = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            p *= a + static_cast<double>(k);
            if (std::fabs(p) > 1e250) {
                log_scale += std::log(std::fabs(p));
                p = p > 0 ? 1.0 : -1.0;
            }
        }
        SignedLog r = SignedLog::from(p);
        r.log_abs += log_scale;
        return r;
    }
    return gamma_signed(a + static_cast<double>(n)) / gamma_signed(a);
}

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

double ln_factorial(std::size_t n) {
    if (n < 2) return 0.0;
    return ln_gamma(static_cast<double>(n) + 1.0);
}

double laguerre_explicit(std::size_t n, double alpha, double z) {
    require_alpha(alpha, "laguerre_explicit");
    // (alpha+1)_n/n! * sum_k (-n)_k/((alpha+1)_k k!) z^k
    double t = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        t *= (alpha + static_cast<double>(k)) / static_cast<double>(k);
    CompensatedSum s;
    s.add(t);
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double dk = static_cast<double>(k);
        t *= (dk - dn) / ((alpha + 1.0 + dk) * (dk + 1.0)) * z;
        s.add(t);
    }
    return s.value();
}

double laguerre_recurrence(std::size_t n, double alpha, double z) {
    require_alpha(alpha, "laguerre_recurrence");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - z;
    for (std::size_t k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        const double next = ((2.0 * dk + 1.0 + alpha - z) * cur - (dk + alpha) * prev) / (dk + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> laguerre_table(std::size_t nmax, double alpha, double z) {
    require_alpha(alpha, "laguerre_table");
    std::vector<double> v(nmax + 1);
    v[0] = 1.0;
    if (nmax >= 1) v[1] = 1.0 + alpha - z;
    for (std::size_t k = 1; k < nmax; ++k) {
        const double dk = static_cast<double>(k);
        v[k + 1] = ((2.0 * dk + 1.0 + alpha - z) * v[k] - (dk + alpha) * v[k - 1]) / (dk + 1.0);
    }
    return v;
}

double hyp2f1_terminating(int neg_n, double b, double c, double z) {
    if (neg_n > 0) throw DomainError("hyp2f1_terminating: first parameter must be a nonpositive integer");
    const int n = -neg_n;
    CompensatedSum s;
    double t = 1.0;
    s.add(t);
    for (int k = 0; k < n; ++k) {
        const double den = c + k;
        if (den == 0.0) throw PoleError("hyp2f1_terminating: (c)_k vanishes before termination");
        t *= (static_cast<double>(neg_n + k) * (b + k)) / (den * (k + 1.0)) * z;
        s.add(t);
    }
    return s.value();
}

double hyp2f1_series(double a, double b, double c, double z, double tol) {
    long nterm = -1;
    if (is_nonpositive_integer(a)) nterm = static_cast<long>(-a);
    if (is_nonpositive_integer(b)) {
        const long nb = static_cast<long>(-b);
        nterm = nterm < 0 ? nb : std::min(nterm, nb);
    }
    if (nterm < 0 && !(std::fabs(z) < 1.0))
        throw DomainError("hyp2f1_series: |z| >= 1 outside the convergent region");

    CompensatedSum s;
    double t = 1.0;
    s.add(t);
    const long kmax = nterm >= 0 ? nterm : 1000000;
    int small_run = 0;
    for (long k = 0; k < kmax; ++k) {
        const double den = c + static_cast<double>(k);
        if (den == 0.0) throw PoleError("hyp2f1_series: (c)_k vanishes");
        const double dk = static_cast<double>(k);
        t *= ((a + dk) * (b + dk)) / (den * (dk + 1.0)) * z;
        s.add(t);
        if (nterm < 0) {
            if (std::fabs(t) <= tol * std::fabs(s.value())) {
                if (++small_run >= 3) break;
            } else {
                small_run = 0;
            }
            if (t == 0.0) break;
        }
    }
    return s.value();
}

double hyp2f1_transform_pfaff(double a, double b, double c, double z) {
    if (!(z < 1.0)) throw DomainError("hyp2f1_transform_pfaff: requires z < 1");
    const double x = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, x);
}

double hyp2f1_asymptotic_series(double rho, double alpha, double u, std::size_t n,
                                std::size_t k_terms) {
    if (!(u < 0.5)) throw DomainError("hyp2f1_asymptotic_series: requires u < 1/2");
    CompensatedSum s;
    double t = 1.0;
    s.add(t);
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < k_terms; ++k) {
        const double dk = static_cast<double>(k);
        const double den = rho - dn + 1.0 + dk;
        if (den == 0.0) throw PoleError("hyp2f1_asymptotic_series: (rho-n+1)_k vanishes");
        t *= ((rho + 1.0 + dk) * (alpha + rho + 1.0 + dk)) / (den * (dk + 1.0)) * u;
        s.add(t);
    }
    return s.value();
}

std::vector<double> hyp2f1_neg_n_sequence(double b, double c, double x, std::size_t nmax) {
    std::vector<double> g(nmax + 1);
    if (x == 1.0) {
        // Chu-Vandermonde: 2F1(-n, b; c; 1) = (c-b)_n/(c)_n
        double t = 1.0;
        g[0] = 1.0;
        for (std::size_t n = 0; n < nmax; ++n) {
            const double dn = static_cast<double>(n);
            if (c + dn == 0.0) throw PoleError("hyp2f1_neg_n_sequence: (c)_n vanishes");
            t *= (c - b + dn) / (c + dn);
            g[n + 1] = t;
        }
        return g;
    }
    const double cb = c - b;
    if (is_nonpositive_integer(cb)) {
        // Euler: (1-x)^{n-p} 2F1(c+n, -p; c; x), p = b-c.
        const auto p = static_cast<std::size_t>(-cb);
        for (std::size_t n = 0; n <= nmax; ++n) {
            const double dn = static_cast<double>(n);
            CompensatedSum s;
            double t = 1.0;
            s.add(t);
            for (std::size_t k = 0; k < p; ++k) {
                const double dk = static_cast<double>(k);
                if (c + dk == 0.0) throw PoleError("hyp2f1_neg_n_sequence: (c)_k vanishes");
                t *= ((c + dn + dk) * (dk - static_cast<double>(p))) / ((c + dk) * (dk + 1.0)) * x;
                s.add(t);
            }
            g[n] = std::pow(1.0 - x, dn - static_cast<double>(p)) * s.value();
        }
        return g;
    }
    g[0] = 1.0;
    if (nmax == 0) return g;
    if (c == 0.0) throw PoleError("hyp2f1_neg_n_sequence: c vanishes");
    g[1] = 1.0 - b * x / c;
    for (std::size_t n = 1; n < nmax; ++n) {
        const double dn = static_cast<double>(n);
        if (c + dn == 0.0) throw PoleError("hyp2f1_neg_n_sequence: (c)_n vanishes");
        g[n + 1] = ((2.0 * dn + c - (b + dn) * x) * g[n] + dn * (x - 1.0) * g[n - 1]) / (c + dn);
    }
    return g;
}

double gegenbauer(std::size_t n, double lambda, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lambda * x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double next = (2.0 * (dk + lambda - 1.0) * x * cur - (dk + 2.0 * lambda - 2.0) * prev) / dk;
        prev = cur;
        cur = next;
    }
    return cur;
}

double legendre(std::size_t n, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double next = ((2.0 * dk - 1.0) * x * cur - (dk - 1.0) * prev) / dk;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<LegendreWeight> gegenbauer_to_legendre(std::size_t m, double mu) {
    std::vector<LegendreWeight> out;
    for (std::size_t s = 0; 2 * s <= m; ++s) {
        const std::size_t d = m - 2 * s;
        const double w = pochhammer(mu, m - s) * pochhammer(mu - 0.5, s)
                         / (pochhammer(1.5, m - s) * factorial(s))
                         * (2.0 * static_cast<double>(d) + 1.0);
        out.push_back({d, w});
    }
    return out;
}

SignedLog bessel_i_half_log(std::size_t m, double z) {
    if (!(z > 0.0)) throw DomainError("bessel_i_half: requires z > 0");
    // log I_{1/2}(z) = log(sqrt(2/(pi z)) sinh z), safe for large z
    const SignedLog i_half{0.5 * std::log(2.0 / (std::numbers::pi * z)) + z + std::log1p(-std::exp(-2.0 * z)) - std::log(2.0), 1};
    if (m == 0) return i_half;
    // Miller: downward recurrence from far above both m and z, which is
    // stable for I at every order; normalized by I_{1/2}.
    const double dm = static_cast<double>(m);
    const auto start = static_cast<std::size_t>(std::max(dm, std::ceil(z)) + 50.0 + 10.0 * std::sqrt(z));
    double f_next = 0.0;
    double f = 1e-300;
    double log_scale = 0.0;
    SignedLog f_m;
    for (std::size_t j = start; j >= 1; --j) {
        // f = I_{j+1/2}, f_next = I_{j+3/2}; produce I_{j-1/2}.
        const double f_prev = (2.0 * (static_cast<double>(j) + 0.5) / z) * f + f_next;
        f_next = f;
        f = f_prev;
        if (std::fabs(f) > 1e200) {
            f *= 1e-200;
            f_next *= 1e-200;
            log_scale += 200.0 * std::log(10.0);
        }
        if (j - 1 == m) {
            f_m = SignedLog::from(f);
            f_m.log_abs += log_scale;
        }
    }
    SignedLog f0 = SignedLog::from(f);
    f0.log_abs += log_scale;
    return f_m / f0 * i_half;
}

SignedLog bessel_k_half_log(std::size_t m, double z) {
    if (!(z > 0.0)) throw DomainError("bessel_k_half: requires z > 0");
    double log_scale = 0.5 * std::log(std::numbers::pi / (2.0 * z)) - z;
    double prev = 1.0;
    if (m == 0) return {log_scale, 1};
    double cur = 1.0 + 1.0 / z;
    for (std::size_t j = 1; j < m; ++j) {
        const double next = prev + (2.0 * (static_cast<double>(j) + 0.5) / z) * cur;
        prev = cur;
        cur = next;
        if (cur > 1e200) {
            prev *= 1e-200;
            cur *= 1e-200;
            log_scale += 200.0 * std::log(10.0);
        }
    }
    return {std::log(cur) + log_scale, 1};
}

double bessel_i_half(std::size_t m, double z) { return bessel_i_half_log(m, z).value(); }

double bessel_k_half(std::size_t m, double z) { return bessel_k_half_log(m, z).value(); }

double bessel_k_halfint(int j, double z) {
    const int m = j >= 0 ? j : -j - 1;
    return bessel_k_half(static_cast<std::size_t>(m), z);
}

double bessel_i_halfint(int j, double z) {
    if (j >= 0) return bessel_i_half(static_cast<std::size_t>(j), z);
    const int m = -j - 1;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return bessel_i_half(static_cast<std::size_t>(m), z)
           + (2.0 / std::numbers::pi) * sign * bessel_k_half(static_cast<std::size_t>(m), z);
}

double rbf_half(std::size_t m, double z) {
    if (!(z >= 0.0)) throw DomainError("rbf_half: requires z >= 0");
    // 2^m (1/2)_m 1F1(-m; -2m; 2z); every term is positive.
    const double dm = static_cast<double>(m);
    double t = 1.0;
    double s = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dk = static_cast<double>(k);
        t *= (dk - dm) / ((dk - 2.0 * dm) * (dk + 1.0)) * 2.0 * z;
        s += t;
    }
    double dfact = 1.0;
    for (std::size_t k = 1; k <= m; ++k) dfact *= 2.0 * static_cast<double>(k) - 1.0;
    return dfact * s * std::exp(-z);
}

double laguerre_bs_convert(std::size_t n, std::size_t m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign / factorial(n + m);
}

}  // namespace lgs
