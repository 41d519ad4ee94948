#include "lgs/addthm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lgs/errors.hpp"
#include "lgs/numeric.hpp"
#include "lgs/specfun.hpp"

namespace lgs {

namespace {

bool is_nonneg_integer(double x) { return x >= 0.0 && std::floor(x) == x; }

double max_abs(const std::vector<double>& t, std::size_t from, std::size_t to) {
    double m = 0.0;
    for (std::size_t i = from; i < to; ++i) m = std::max(m, std::fabs(t[i]));
    return m;
}

void require_two_range(const TwoRangeGeometry& g, const char* who) {
    validate(g);
    if (!(g.r_less > 0.0)) throw DomainError(std::string(who) + ": requires r_less > 0");
    if (g.r_less == g.r_greater)
        throw DomainError(std::string(who) + ": expansion undefined at r_less = r_greater");
}

double signed_cos(const TwoRangeGeometry& g, Displacement sign) {
    return sign == Displacement::minus ? g.cos_theta : -g.cos_theta;
}

}  // namespace

void validate(const TwoRangeGeometry& g) {
    if (!(g.r_less >= 0.0) || !(g.r_greater > 0.0))
        throw DomainError("TwoRangeGeometry: radii must satisfy r_less >= 0, r_greater > 0");
    if (g.r_less > g.r_greater) throw DomainError("TwoRangeGeometry: requires r_less <= r_greater");
    if (!(std::fabs(g.cos_theta) <= 1.0)) throw DomainError("TwoRangeGeometry: |cos_theta| must not exceed 1");
}

double displacement(const TwoRangeGeometry& g, Displacement sign) {
    validate(g);
    const double c = signed_cos(g, sign);
    const double w2 = g.r_less * g.r_less + g.r_greater * g.r_greater - 2.0 * g.r_less * g.r_greater * c;
    return std::sqrt(std::max(0.0, w2));
}

ExpansionDiagnostics convergence_probe(const std::vector<double>& terms, std::size_t max_terms) {
    ExpansionDiagnostics d;
    const std::size_t N = std::min(max_terms, terms.size());
    d.terms = N;
    if (N == 0) return d;
    d.last_term = std::fabs(terms[N - 1]);
    CompensatedSum acc;
    for (std::size_t i = 0; i < N; ++i) acc.add(terms[i]);
    const double total = std::fabs(acc.value());

    std::size_t last_nz = N;
    for (std::size_t i = N; i-- > 0;)
        if (terms[i] != 0.0) { last_nz = i; break; }
    if (last_nz == N) {  // all zero
        d.terminated = true;
        d.verdict = ExpansionVerdict::Converged;
        return d;
    }
    const std::size_t W = kRatioWindow;
    d.tail_envelope = max_abs(terms, N > W ? N - W : 0, N);
    if (last_nz + W / 2 < N) {
        // a stream whose trailing terms vanish identically has terminated
        d.terminated = true;
        d.verdict = ExpansionVerdict::Converged;
        return d;
    }

    if (N >= 2 * W + 5) {
        for (std::size_t end = N - 4; end <= N; ++end) {
            const double a = max_abs(terms, end - W, end);
            const double b = max_abs(terms, end - 2 * W, end - W);
            d.ratios.push_back(b > 0.0 ? std::pow(a / b, 1.0 / static_cast<double>(W))
                                       : std::numeric_limits<double>::infinity());
        }
    } else {
        // short streams: ratios between consecutive nonzero terms, per index gap
        std::vector<std::size_t> nz;
        for (std::size_t i = 0; i < N; ++i)
            if (terms[i] != 0.0) nz.push_back(i);
        for (std::size_t k = nz.size() > 5 ? nz.size() - 5 : 1; k < nz.size(); ++k) {
            const double gap = static_cast<double>(nz[k] - nz[k - 1]);
            d.ratios.push_back(std::pow(std::fabs(terms[nz[k]] / terms[nz[k - 1]]), 1.0 / gap));
        }
    }
    if (d.ratios.empty()) {
        d.verdict = ExpansionVerdict::SlowlyConverging;
        return d;
    }
    double lsum = 0.0;
    for (double r : d.ratios) lsum += std::log(r);
    d.ratio_trend = std::exp(lsum / static_cast<double>(d.ratios.size()));

    const bool full = d.ratios.size() >= 5;
    const bool all_small = full && std::all_of(d.ratios.begin(), d.ratios.end(), [](double r) { return r < 0.95; });
    const bool all_large = full && std::all_of(d.ratios.begin(), d.ratios.end(), [](double r) { return r > 1.05; });
    if (all_small && d.tail_envelope < 1e-13 * total)
        d.verdict = ExpansionVerdict::Converged;
    else if (all_large)
        d.verdict = ExpansionVerdict::Diverging;
    else
        d.verdict = ExpansionVerdict::SlowlyConverging;
    return d;
}

double f_eta_direct(double z, double u, double theta, double eta) {
    const double scale = z * z + u * u;
    double base = scale - 2.0 * z * u * std::cos(theta);
    if (base < 0.0) {
        if (base > -1e-14 * scale) base = 0.0;
        else if (std::floor(eta) != eta) throw DomainError("f_eta_direct: negative base with nonintegral eta");
    }
    return std::pow(base, eta);
}

Singularities f_eta_singularities(double u, double theta) {
    if (u == 0.0) throw DomainError("f_eta_singularities: requires u != 0");
    const std::complex<double> c(std::cos(theta), 0.0);
    const std::complex<double> root = std::sqrt(c * c - 1.0);
    return {(c + root) * u, (c - root) * u, std::fabs(u)};
}

ExpansionResult gegenbauer_expand_small(double z, double u, double theta, double eta, std::size_t J) {
    if (u == 0.0) throw DomainError("gegenbauer_expand_small: requires u != 0");
    const double x = std::cos(theta);
    const double lambda = -eta;
    const double q = z / u;
    ExpansionResult r;
    r.terms.reserve(J + 1);
    double cprev = 1.0, c = 1.0;
    double qn = 1.0;
    for (std::size_t n = 0; n <= J; ++n) {
        if (n == 1) {
            cprev = 1.0;
            c = 2.0 * lambda * x;
        } else if (n >= 2) {
            const double dn = static_cast<double>(n);
            const double next = (2.0 * (dn + lambda - 1.0) * x * c - (dn + 2.0 * lambda - 2.0) * cprev) / dn;
            cprev = c;
            c = next;
        }
        r.terms.push_back(c * qn);
        qn *= q;
    }
    const double pref = std::pow(u * u, eta);
    CompensatedSum s;
    for (double t : r.terms) s.add(t);
    r.value = pref * s.value();
    for (double& t : r.terms) t *= pref;
    r.diag = convergence_probe(r.terms, J + 1);
    r.diag.outside_radius = std::fabs(q) >= 1.0;
    // Outside the disc of convergence a terminated series is an analytic
    // continuation on the wrong branch unless F_eta is itself a polynomial.
    if (r.diag.outside_radius && !is_nonneg_integer(eta)) r.diag.verdict = ExpansionVerdict::Diverging;
    return r;
}

ExpansionResult gegenbauer_expand_large(double z, double u, double theta, double eta, std::size_t J) {
    if (z == 0.0) throw DomainError("gegenbauer_expand_large: requires z != 0");
    return gegenbauer_expand_small(u, z, theta, eta, J);
}

LegendreExpansion power_addition_legendre(double nu, const TwoRangeGeometry& g, std::size_t L,
                                          Displacement sign) {
    validate(g);
    if (g.r_less == g.r_greater) throw DomainError("power_addition_legendre: undefined at r_less = r_greater");
    const double t = g.r_less / g.r_greater;
    const double x = g.cos_theta;
    const double scale = std::pow(g.r_greater, nu);
    LegendreExpansion e;
    CompensatedSum acc;
    double tl = 1.0;
    for (std::size_t l = 0; l <= L; ++l) {
        const double dl = static_cast<double>(l);
        const double poch = pochhammer(-0.5 * nu, l) / pochhammer(1.5, l);
        double term = 0.0;
        if (poch != 0.0) {
            const double f = hyp2f1_series(dl - 0.5 * nu, -0.5 * (nu + 1.0), dl + 1.5, t * t, 1e-16);
            const double s = (sign == Displacement::plus && l % 2 == 1) ? -1.0 : 1.0;
            term = scale * s * (2.0 * dl + 1.0) * legendre(l, x) * tl * poch * f;
        }
        acc.add(term);
        e.terms.push_back(term);
        e.partial_sums.push_back(acc.value());
        tl *= t;
    }
    e.value = acc.value();
    e.diag = convergence_probe(e.terms, L + 1);
    return e;
}

double one_s_direct(double beta, const TwoRangeGeometry& g, Displacement sign) {
    if (!(beta > 0.0)) throw DomainError("one_s_direct: beta must be positive");
    return std::exp(-beta * displacement(g, sign));
}

double rbf_direct(std::size_t n, double beta, const TwoRangeGeometry& g, Displacement sign) {
    if (n < 1) throw DomainError("rbf_direct: requires n >= 1");
    if (!(beta > 0.0)) throw DomainError("rbf_direct: beta must be positive");
    return rbf_half(n - 1, beta * displacement(g, sign));
}

ExpansionResult rbf_addition(std::size_t n, double beta, const TwoRangeGeometry& g, std::size_t L,
                             Displacement sign) {
    if (n < 1) throw DomainError("rbf_addition: requires n >= 1");
    if (!(beta > 0.0)) throw DomainError("rbf_addition: beta must be positive");
    require_two_range(g, "rbf_addition");
    const double dn = static_cast<double>(n);
    const double mu = 0.5 - dn;
    const double a = beta * g.r_less;
    const double b = beta * g.r_greater;
    // (2/pi)^{1/2} beta^{2n-1} 2^mu Gamma(mu) (r_< r_>)^{n-1/2}
    const SignedLog pref = SignedLog{0.5 * std::log(2.0 / std::numbers::pi) + (2.0 * dn - 1.0) * std::log(beta)
                                         + mu * std::log(2.0) + (dn - 0.5) * std::log(g.r_less * g.r_greater), 1}
                           * gamma_signed(mu);
    ExpansionResult r;
    CompensatedSum acc;
    for (std::size_t l = 0; l <= L; ++l) {
        const double dl = static_cast<double>(l);
        CompensatedSum inner;
        for (std::size_t s = 0; s <= n; ++s) {
            const double ds = static_cast<double>(s);
            const double order = mu + dl + 2.0 * ds;
            if (order == 0.0) continue;
            const int j = static_cast<int>(l + 2 * s) - static_cast<int>(n);  // order = j + 1/2
            SignedLog c = pochhammer_log(mu, l + s) * pochhammer_log(-dn, s)
                          / (pochhammer_log(1.5, l + s) * SignedLog{ln_factorial(s), 1});
            if (c.is_zero()) continue;
            SignedLog ik;
            if (j >= 0) {
                ik = bessel_i_half_log(static_cast<std::size_t>(j), a)
                     * bessel_k_half_log(static_cast<std::size_t>(j), b);
            } else {
                ik = SignedLog::from(bessel_i_halfint(j, a) * bessel_k_halfint(j, b));
            }
            inner.add((pref * c * SignedLog::from(order) * ik).value());
        }
        const double sl = (sign == Displacement::plus && l % 2 == 1) ? -1.0 : 1.0;
        const double term = sl * (2.0 * dl + 1.0) * legendre(l, g.cos_theta) * inner.value();
        r.terms.push_back(term);
        acc.add(term);
    }
    r.value = acc.value();
    r.diag = convergence_probe(r.terms, L + 1);
    return r;
}

ExpansionResult one_s_addition(double beta, const TwoRangeGeometry& g, std::size_t L, Displacement sign) {
    require_two_range(g, "one_s_addition");
    return rbf_addition(1, beta, g, L, sign);
}

double bfun_radial(std::size_t p, std::size_t l, double beta, double r) {
    if (p < 1) throw DomainError("bfun_radial: requires p >= 1");
    const double x = beta * r;
    const double norm = std::exp(static_cast<double>(p + l) * std::log(2.0) + ln_factorial(p + l));
    return rbf_half(p - 1, x) * std::pow(x, static_cast<double>(l)) / norm;
}

namespace {

// e^x khat_{m+1/2}(x) = (2m-1)!! 1F1(-m; -2m; 2x) in double-double.
DD rbf_poly_dd(std::size_t m, double x) {
    const double dm = static_cast<double>(m);
    DD t = 1.0, s = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double dk = static_cast<double>(k);
        t = t * x * (2.0 * (dk - dm)) / ((dk - 2.0 * dm) * (dk + 1.0));
        s += t;
    }
    for (std::size_t k = 1; k <= m; ++k) s = s * (2.0 * static_cast<double>(k) - 1.0);
    return s;
}

DD factorial_dd(std::size_t n) {
    DD f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f = f * static_cast<double>(k);
    return f;
}

}  // namespace

// Both checks divide the common factor e^{-x} out of each side and sum in
// double-double: the finite sums cancel by many orders of magnitude at
// small arguments.
double stf_to_bfun_radial_check(std::size_t n, std::size_t l, double beta, double r) {
    if (n < l + 1) throw DomainError("stf_to_bfun_radial_check: requires n >= l+1");
    if (!(r > 0.0) || !(beta > 0.0)) throw DomainError("stf_to_bfun_radial_check: requires r, beta > 0");
    const double x = beta * r;
    const double dn = static_cast<double>(n);
    const double dl = static_cast<double>(l);
    DD chi = 1.0;
    for (std::size_t k = 1; k < n; ++k) chi = chi * x;
    DD xl = 1.0;
    for (std::size_t k = 0; k < l; ++k) xl = xl * x;
    DD s = 0.0;
    DD poch = 1.0;  // (-(n-l-1)/2)_sigma (-(n-l)/2)_sigma / sigma!
    for (std::size_t sigma = 0; 2 * sigma <= n - l; ++sigma) {
        if (sigma > 0) {
            const double ds = static_cast<double>(sigma - 1);
            poch = poch * ((-0.5 * (dn - dl - 1.0) + ds) * (-0.5 * (dn - dl) + ds)) / static_cast<double>(sigma);
        }
        if (poch.hi == 0.0) break;
        const std::size_t p = n - l - sigma;
        // 2^n (n-sigma)! / (2^{p+l} (p+l)!) = 2^sigma
        DD term = poch * std::ldexp(1.0, static_cast<int>(sigma)) * rbf_poly_dd(p - 1, x) * xl;
        if (sigma % 2 == 1) term = -term;
        s += term;
    }
    return std::fabs((chi - s).value()) / std::fabs(chi.value());
}

double explag_to_rbf_check(std::size_t n, double alpha, double z) {
    if (!(z > 0.0)) throw DomainError("explag_to_rbf_check: requires z > 0");
    if (!(alpha > -1.0)) throw DomainError("explag_to_rbf_check: alpha must exceed -1");
    // L_n^alpha(2z) by the three-term recurrence in double-double
    const double x = 2.0 * z;
    DD lm1 = 1.0, lag = DD(1.0 + alpha - x);
    if (n == 0) lag = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        const DD next = (lag * DD(2.0 * dk + alpha + 1.0 - x) - lm1 * (dk + alpha)) / (dk + 1.0);
        lm1 = lag;
        lag = next;
    }
    const double dn = static_cast<double>(n);
    DD s = 0.0;
    for (std::size_t sigma = 0; sigma <= n; ++sigma) {
        const double ds = static_cast<double>(sigma);
        // Gamma(alpha+n+sigma+1) / Gamma(alpha+2 sigma+2)
        DD ratio = 1.0;
        if (sigma < n)
            for (std::size_t k = 0; k + sigma + 1 < n; ++k) ratio = ratio * (alpha + 2.0 * ds + 2.0 + static_cast<double>(k));
        else
            ratio = DD(1.0) / (alpha + 2.0 * dn + 1.0);
        DD term = ratio * std::ldexp(1.0, static_cast<int>(sigma)) / (factorial_dd(n - sigma) * factorial_dd(sigma))
                  * rbf_poly_dd(sigma, z);
        if (sigma % 2 == 1) term = -term;
        s += term;
    }
    const DD rhs = s * (alpha + 2.0 * dn + 1.0);
    const double den = lag.value() != 0.0 ? std::fabs(lag.value()) : 1.0;
    return std::fabs((lag - rhs).value()) / den;
}

const char* to_string(ExpansionVerdict v) {
    switch (v) {
        case ExpansionVerdict::Converged: return "Converged";
        case ExpansionVerdict::Diverging: return "Diverging";
        case ExpansionVerdict::SlowlyConverging: return "SlowlyConverging";
    }
    return "?";
}

}  // namespace lgs
