#include "lgs/laguerre_series.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "lgs/errors.hpp"
#include "lgs/numeric.hpp"
#include "lgs/specfun.hpp"

namespace lgs {

namespace {

bool is_integer(double x) { return std::floor(x) == x; }

void require_alpha(double alpha, const char* who) {
    if (!(alpha > -1.0)) throw DomainError(std::string(who) + ": alpha must exceed -1");
}

void require_norm(double rho, double alpha, const char* who) {
    require_alpha(alpha, who);
    if (!(alpha + 2.0 * rho > -1.0))
        throw DomainError(std::string(who) + ": z^rho is not in the weighted space (alpha + 2 rho <= -1)");
}

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// log of (1-u)^{-alpha-rho-1} Gamma(alpha+rho+1)/Gamma(alpha+1)
double log_power_exp_prefactor(double rho, double u, double alpha) {
    return (-alpha - rho - 1.0) * std::log1p(-u) + ln_gamma(alpha + rho + 1.0) - ln_gamma(alpha + 1.0);
}

// Transformed representation
//   Gamma(alpha+rho+1)/Gamma(alpha+1) (-rho)_n/(alpha+1)_n 2F1(rho+1, alpha+rho+1; rho-n+1; u).
// Returns false when the series shows cancellation beyond 1e3.
bool power_exp_transformed(double rho, double u, double alpha, std::size_t n, double& out) {
    const double dn = static_cast<double>(n);
    CompensatedSum s;
    double t = 1.0;
    double tmax = 1.0;
    s.add(t);
    int small_run = 0;
    for (std::size_t k = 0; k < n + 2000; ++k) {
        const double dk = static_cast<double>(k);
        t *= ((rho + 1.0 + dk) * (alpha + rho + 1.0 + dk)) / ((rho - dn + 1.0 + dk) * (dk + 1.0)) * u;
        s.add(t);
        tmax = std::max(tmax, std::fabs(t));
        if (k > n && std::fabs(t) <= 1e-17 * std::fabs(s.value())) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    const double f = s.value();
    if (!std::isfinite(f) || tmax > 1e3 * std::fabs(f)) return false;
    SignedLog r{ln_gamma(alpha + rho + 1.0) - ln_gamma(alpha + 1.0), 1};
    r = r * pochhammer_log(-rho, n) / pochhammer_log(alpha + 1.0, n) * SignedLog::from(f);
    out = r.value();
    return true;
}

bool use_transformed(double u, std::size_t n) { return std::fabs(u) <= 0.25 && n <= 2000; }

void check_power_exp(double rho, double u, double alpha, const char* who) {
    if (!(u < 0.5)) throw DomainError(std::string(who) + ": requires u < 1/2");
    require_norm(rho, alpha, who);
}

}  // namespace

void validate(const RadialClosedForm& f) {
    std::visit(overloaded{
        [](const Monomial&) {},
        [](const Power&) {},
        [](const PowerExp& p) {
            if (!(p.u < 0.5)) throw DomainError("PowerExp: requires u < 1/2");
        },
        [](const StfRadial& s) {
            if (!(s.beta > 0.0)) throw DomainError("StfRadial: beta must be positive");
            if (!(2.0 * (s.N + static_cast<double>(s.L)) > -1.0))
                throw DomainError("StfRadial: requires N + L > -1/2");
        },
        [](const GuseinovRadial& g) {
            if (g.n < g.l + 1) throw DomainError("GuseinovRadial: requires n >= l+1");
            if (!(g.gamma > 0.0)) throw DomainError("GuseinovRadial: gamma must be positive");
            if (!(g.k >= -1.0)) throw DomainError("GuseinovRadial: requires k >= -1");
        },
        [](const RbfRadial& b) {
            if (!(b.beta > 0.0)) throw DomainError("RbfRadial: beta must be positive");
        },
    }, f);
}

double radial_value(const RadialClosedForm& f, double x) {
    return std::visit(overloaded{
        [x](const Monomial& m) { return std::pow(x, static_cast<double>(m.m)); },
        [x](const Power& p) { return std::pow(x, p.rho); },
        [x](const PowerExp& p) { return std::pow(x, p.rho) * std::exp(p.u * x); },
        [x](const StfRadial& s) { return stf_radial(s.N, s.beta, x); },
        [x](const GuseinovRadial& g) { return guseinov_radial(g.k, g.gamma, g.n, g.l, x); },
        [x](const RbfRadial& b) { return rbf_half(b.m, b.beta * x); },
    }, f);
}

struct LaguerreSeries::Cache {
    std::mutex mu;
    std::vector<double> values;
    Provider provider;
};

LaguerreSeries::LaguerreSeries(double alpha, Provider provider, std::optional<RadialClosedForm> tag)
    : alpha_(alpha), tag_(std::move(tag)), cache_(std::make_shared<Cache>()) {
    require_alpha(alpha, "LaguerreSeries");
    if (tag_) validate(*tag_);
    cache_->provider = std::move(provider);
}

void LaguerreSeries::fill(std::size_t upto) const {
    auto& v = cache_->values;
    while (v.size() <= upto) {
        const std::size_t n = v.size();
        const double c = cache_->provider(n, std::span<const double>(v.data(), n));
        if (!std::isfinite(c))
            throw DomainError("LaguerreSeries: coefficient " + std::to_string(n) + " is not finite");
        v.push_back(c);
    }
}

double LaguerreSeries::coeff(std::size_t n) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    fill(n);
    return cache_->values[n];
}

std::vector<double> LaguerreSeries::coeffs(std::size_t count) const {
    if (count == 0) return {};
    std::lock_guard<std::mutex> lock(cache_->mu);
    fill(count - 1);
    return {cache_->values.begin(), cache_->values.begin() + static_cast<std::ptrdiff_t>(count)};
}

double coeff_monomial(std::size_t m, double alpha, std::size_t n) {
    require_alpha(alpha, "coeff_monomial");
    if (!(alpha + 2.0 * static_cast<double>(m) > -1.0))
        throw DomainError("coeff_monomial: requires alpha + 2m > -1");
    if (n > m) return 0.0;
    // (alpha+1)_m (-m)_n/(alpha+1)_n written without the division.
    return pochhammer(-static_cast<double>(m), n) * pochhammer(alpha + static_cast<double>(n) + 1.0, m - n);
}

double coeff_power(double rho, double alpha, std::size_t n) {
    require_norm(rho, alpha, "coeff_power");
    SignedLog r{ln_gamma(rho + alpha + 1.0) - ln_gamma(alpha + 1.0), 1};
    r = r * pochhammer_log(-rho, n) / pochhammer_log(alpha + 1.0, n);
    return r.value();
}

double coeff_power_exp(double rho, double u, double alpha, std::size_t n) {
    check_power_exp(rho, u, alpha, "coeff_power_exp");
    if (u == 0.0) return coeff_power(rho, alpha, n);
    if (!is_integer(rho) && use_transformed(u, n)) {
        double v = 0.0;
        if (power_exp_transformed(rho, u, alpha, n, v)) return v;
    }
    const double g = hyp2f1_neg_n_sequence(alpha + rho + 1.0, alpha + 1.0, 1.0 / (1.0 - u), n).back();
    return std::exp(log_power_exp_prefactor(rho, u, alpha)) * g;
}

std::vector<double> coeffs_power_exp(double rho, double u, double alpha, std::size_t nmax) {
    check_power_exp(rho, u, alpha, "coeffs_power_exp");
    std::vector<double> out(nmax + 1);
    if (u == 0.0) {
        for (std::size_t n = 0; n <= nmax; ++n) out[n] = coeff_power(rho, alpha, n);
        return out;
    }
    const std::vector<double> g =
        hyp2f1_neg_n_sequence(alpha + rho + 1.0, alpha + 1.0, 1.0 / (1.0 - u), nmax);
    const double pref = std::exp(log_power_exp_prefactor(rho, u, alpha));
    for (std::size_t n = 0; n <= nmax; ++n) {
        double v = 0.0;
        if (!is_integer(rho) && use_transformed(u, n) && power_exp_transformed(rho, u, alpha, n, v))
            out[n] = v;
        else
            out[n] = pref * g[n];
    }
    return out;
}

double normalized_laguerre(std::size_t n, double alpha, double z) {
    const double c = std::exp(0.5 * (ln_factorial(n) - ln_gamma(static_cast<double>(n) + alpha + 1.0)));
    return c * laguerre_recurrence(n, alpha, z);
}

double coeff_numeric(const std::function<double(double)>& f, double alpha, std::size_t n,
                     const QuadratureRule& rule) {
    require_alpha(alpha, "coeff_numeric");
    const double shift = alpha - rule.alpha;
    CompensatedSum s;
    for (std::size_t j = 0; j < rule.count; ++j) {
        if (rule.weights[j] == 0.0) continue;
        const double x = rule.nodes[j];
        double g = rule.weights[j] * laguerre_recurrence(n, alpha, x);
        if (shift != 0.0) g *= std::pow(x, shift);
        s.add(g * f(x));
    }
    const double norm = std::exp(ln_factorial(n) - ln_gamma(static_cast<double>(n) + alpha + 1.0));
    return norm * s.value();
}

double coeff_numeric(const RadialClosedForm& f, double alpha, std::size_t n, const QuadratureRule& rule) {
    validate(f);
    // f = z^p * reduced(z) with p fractional: integrate reduced against z^{alpha+p} e^{-z}.
    double p = 0.0;
    std::function<double(double)> reduced;
    if (const auto* pw = std::get_if<Power>(&f); pw && !is_integer(pw->rho)) {
        p = pw->rho;
        reduced = [](double) { return 1.0; };
    } else if (const auto* pe = std::get_if<PowerExp>(&f); pe && !is_integer(pe->rho)) {
        p = pe->rho;
        const double u = pe->u;
        reduced = [u](double x) { return std::exp(u * x); };
    } else if (const auto* st = std::get_if<StfRadial>(&f); st && !is_integer(st->N)) {
        p = st->N - 1.0;
        const double beta = st->beta;
        const double scale = std::pow(beta, p);
        reduced = [beta, scale](double x) { return scale * std::exp(-beta * x); };
    }
    if (p != 0.0 && alpha + p > -1.0) {
        const QuadratureRule& folded = gauss_laguerre_cached(rule.count, alpha + p);
        CompensatedSum s;
        for (std::size_t j = 0; j < folded.count; ++j) {
            if (folded.weights[j] == 0.0) continue;
            const double x = folded.nodes[j];
            s.add(folded.weights[j] * laguerre_recurrence(n, alpha, x) * reduced(x));
        }
        const double norm = std::exp(ln_factorial(n) - ln_gamma(static_cast<double>(n) + alpha + 1.0));
        return norm * s.value();
    }
    return coeff_numeric([&f](double x) { return radial_value(f, x); }, alpha, n, rule);
}

double series_eval(const LaguerreSeries& s, double z, std::size_t M) {
    if (!(z >= 0.0)) throw DomainError("series_eval: requires z >= 0");
    const std::vector<double> lam = s.coeffs(M + 1);
    const std::vector<double> L = laguerre_table(M, s.alpha(), z);
    CompensatedSum acc;
    for (std::size_t n = 0; n <= M; ++n) acc.add(lam[n] * L[n]);
    return acc.value();
}

double weighted_l2_norm(const std::function<double(double)>& f, double alpha, const QuadratureRule& rule) {
    require_alpha(alpha, "weighted_l2_norm");
    const double shift = alpha - rule.alpha;
    CompensatedSum s;
    for (std::size_t j = 0; j < rule.count; ++j) {
        if (rule.weights[j] == 0.0) continue;
        const double x = rule.nodes[j];
        const double v = f(x);
        double w = rule.weights[j];
        if (shift != 0.0) w *= std::pow(x, shift);
        s.add(w * v * v);
    }
    return std::sqrt(std::max(0.0, s.value()));
}

double parseval_gap(const LaguerreSeries& s, const std::function<double(double)>& f, double alpha,
                    std::size_t M, const QuadratureRule& rule) {
    const double nf = weighted_l2_norm(f, alpha, rule);
    const std::vector<double> lam = s.coeffs(M + 1);
    CompensatedSum acc;
    acc.add(nf * nf);
    for (std::size_t n = 0; n <= M; ++n) {
        const double h = std::exp(ln_gamma(alpha + static_cast<double>(n) + 1.0) - ln_factorial(n));
        acc.add(-lam[n] * lam[n] * h);
    }
    return acc.value();
}

LaguerreSeries monomial_series(std::size_t m, double alpha) {
    coeff_monomial(m, alpha, 0);
    return LaguerreSeries(alpha, [m, alpha](std::size_t n, std::span<const double>) {
        return coeff_monomial(m, alpha, n);
    }, Monomial{m});
}

LaguerreSeries power_series(double rho, double alpha) {
    coeff_power(rho, alpha, 0);
    return LaguerreSeries(alpha, [rho, alpha](std::size_t n, std::span<const double> prev) {
        if (n <= 64) return coeff_power(rho, alpha, n);
        const double dn = static_cast<double>(n);
        return prev[n - 1] * (dn - 1.0 - rho) / (alpha + dn);
    }, Power{rho});
}

LaguerreSeries power_exp_series(double rho, double u, double alpha) {
    check_power_exp(rho, u, alpha, "power_exp_series");
    if (u == 0.0) {
        LaguerreSeries base = power_series(rho, alpha);
        return LaguerreSeries(alpha, [base](std::size_t n, std::span<const double>) {
            return base.coeff(n);
        }, PowerExp{rho, u});
    }
    const double b = alpha + rho + 1.0;
    const double c = alpha + 1.0;
    const double x = 1.0 / (1.0 - u);
    const double pref = std::exp(log_power_exp_prefactor(rho, u, alpha));
    const bool integral = is_integer(rho);
    return LaguerreSeries(alpha, [=](std::size_t n, std::span<const double> prev) {
        if (!integral && use_transformed(u, n)) {
            double v = 0.0;
            if (power_exp_transformed(rho, u, alpha, n, v)) return v;
        }
        if (integral || n < 2) return pref * hyp2f1_neg_n_sequence(b, c, x, n).back();
        const double dn = static_cast<double>(n - 1);
        const double g1 = prev[n - 1] / pref;
        const double g0 = prev[n - 2] / pref;
        const double g = ((2.0 * dn + c - (b + dn) * x) * g1 + dn * (x - 1.0) * g0) / (c + dn);
        return pref * g;
    }, PowerExp{rho, u});
}

LaguerreSeries synthetic_series(double alpha, std::function<double(std::size_t)> lambda) {
    return LaguerreSeries(alpha, [lambda = std::move(lambda)](std::size_t n, std::span<const double>) {
        return lambda(n);
    });
}

double stf_radial(double N, double beta, double r) {
    if (!(beta > 0.0)) throw DomainError("stf_radial: beta must be positive");
    return std::pow(beta * r, N - 1.0) * std::exp(-beta * r);
}

double guseinov_radial(double k, double gamma, std::size_t n, std::size_t l, double r) {
    validate(GuseinovRadial{k, gamma, n, l});
    if (!(r >= 0.0)) throw DomainError("guseinov_radial: requires r >= 0");
    const std::size_t nu = n - l - 1;
    const double dl = static_cast<double>(l);
    const double alpha = 2.0 * dl + k + 2.0;
    const double log_norm = 0.5 * ((k + 3.0) * std::log(2.0 * gamma) + ln_factorial(nu)
                                   - ln_gamma(static_cast<double>(n) + dl + k + 2.0));
    const double z = 2.0 * gamma * r;
    return std::exp(log_norm) * std::exp(-gamma * r) * laguerre_recurrence(nu, alpha, z) * std::pow(z, dl);
}

std::vector<double> guseinov_to_stf_coeffs(double k, double gamma, std::size_t n, std::size_t l) {
    validate(GuseinovRadial{k, gamma, n, l});
    const std::size_t nu = n - l - 1;
    const double dl = static_cast<double>(l);
    const double log_pref = dl * std::log(2.0)
        + 0.5 * ((k + 3.0) * std::log(2.0 * gamma) + ln_gamma(static_cast<double>(n) + dl + k + 2.0)
                 - ln_factorial(nu));
    std::vector<double> g(nu + 1);
    for (std::size_t j = 0; j <= nu; ++j) {
        const double dj = static_cast<double>(j);
        SignedLog t{log_pref + dj * std::log(2.0) - ln_gamma(2.0 * dl + k + dj + 3.0) - ln_factorial(j), 1};
        t = t * pochhammer_log(-static_cast<double>(nu), j);
        g[j] = t.value();
    }
    return g;
}

double stf_in_guseinov_coeffs(double N, std::size_t L, double beta, double gamma, double k,
                              std::size_t nu) {
    if (!(beta > 0.0) || !(gamma > 0.0)) throw DomainError("stf_in_guseinov_coeffs: beta, gamma must be positive");
    if (!(k >= -1.0)) throw DomainError("stf_in_guseinov_coeffs: requires k >= -1");
    if (!(2.0 * N + k > -1.0)) throw DomainError("stf_in_guseinov_coeffs: requires 2N + k > -1");
    const double dL = static_cast<double>(L);
    const double dnu = static_cast<double>(nu);
    const double a = N + dL + k + 2.0;     // > 0 under the guard
    const double c = 2.0 * dL + k + 3.0;
    if (beta == gamma) {
        SignedLog r{-0.5 * (k + 3.0) * std::log(2.0 * gamma) + (1.0 - N) * std::log(2.0) + ln_gamma(a)
                        - 0.5 * (ln_gamma(dnu + c) + ln_factorial(nu)), 1};
        r = r * pochhammer_log(-N + dL + 1.0, nu);
        return r.value();
    }
    const double x = 2.0 * gamma / (beta + gamma);
    const double g = hyp2f1_neg_n_sequence(a, c, x, nu).back();
    const double log_pref = (dL + 0.5 * (k + 3.0)) * std::log(2.0 * gamma) + (N - 1.0) * std::log(beta)
        - a * std::log(beta + gamma) + ln_gamma(a) - ln_gamma(c)
        + 0.5 * (ln_gamma(dnu + c) - ln_factorial(nu));
    return std::exp(log_pref) * g;
}

LaguerreSeries stf_series(double N, std::size_t L, double beta, double gamma, double k) {
    if (!(beta > 0.0) || !(gamma > 0.0)) throw DomainError("stf_series: beta, gamma must be positive");
    if (!(k >= -1.0)) throw DomainError("stf_series: requires k >= -1");
    if (!(2.0 * N + k > -1.0)) throw DomainError("stf_series: requires 2N + k > -1");
    const double dL = static_cast<double>(L);
    const double alpha = 2.0 * dL + k + 2.0;
    const double rho = N - dL - 1.0;
    const double u = (gamma - beta) / (2.0 * gamma);
    const double scale = std::pow(beta / (2.0 * gamma), N - 1.0);
    LaguerreSeries base = power_exp_series(rho, u, alpha);
    return LaguerreSeries(alpha, [base, scale](std::size_t n, std::span<const double>) {
        return scale * base.coeff(n);
    });
}

}  // namespace lgs
