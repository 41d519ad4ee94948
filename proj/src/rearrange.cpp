#include "lgs/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "lgs/errors.hpp"
#include "lgs/numeric.hpp"
#include "lgs/specfun.hpp"

namespace lgs {

namespace {

// Inner sum sum_{mu=0}^{K} (alpha+nu+1)_mu/mu! lam[mu+nu] in double-double.
// The shifted parameter alpha+nu+1+mu is formed exactly with two_sum.
DD inner_sum_dd(const std::vector<double>& lam, double alpha, std::size_t nu, std::size_t K) {
    DD w(1.0);
    DD acc;
    for (std::size_t mu = 0; mu <= K; ++mu) {
        acc += w * lam[mu + nu];
        const DD a = two_sum(alpha, static_cast<double>(nu + 1 + mu));
        w = w * a / static_cast<double>(mu + 1);
    }
    return acc;
}

DD signed_inverse_factorial(std::size_t nu) {
    DD f(1.0);
    for (std::size_t k = 2; k <= nu; ++k) f = f / static_cast<double>(k);
    return (nu % 2 == 0) ? f : -f;
}

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace

double PolynomialTruncation::evaluate(double z) const {
    if (gamma_coeffs.empty()) return 0.0;
    std::size_t k = gamma_coeffs.size() - 1;
    DD p(gamma_coeffs[k], gamma_lo[k]);
    while (k-- > 0) p = p * z + DD(gamma_coeffs[k], gamma_lo[k]);
    return p.value();
}

double PolynomialTruncation::evaluate_rounded(double z) const {
    double p = 0.0;
    for (std::size_t k = gamma_coeffs.size(); k-- > 0;) p = p * z + gamma_coeffs[k];
    return p;
}

PolynomialTruncation rearrange_truncated(const LaguerreSeries& s, std::size_t M) {
    const std::vector<double> lam = s.coeffs(M + 1);
    PolynomialTruncation t;
    t.M = M;
    t.gamma_coeffs.resize(M + 1);
    t.gamma_lo.resize(M + 1);
    for (std::size_t nu = 0; nu <= M; ++nu) {
        const DD g = inner_sum_dd(lam, s.alpha(), nu, M - nu) * signed_inverse_factorial(nu);
        t.gamma_coeffs[nu] = g.hi;
        t.gamma_lo[nu] = g.lo;
    }
    return t;
}

double rearranged_coefficient(const LaguerreSeries& s, std::size_t nu, std::size_t M) {
    if (nu > M) return 0.0;
    const std::vector<double> lam = s.coeffs(M + 1);
    return (inner_sum_dd(lam, s.alpha(), nu, M - nu) * signed_inverse_factorial(nu)).value();
}

std::vector<double> inner_mu_partial_sums(const LaguerreSeries& s, std::size_t nu,
                                          const std::vector<std::size_t>& cutoffs) {
    std::vector<double> out;
    if (cutoffs.empty()) return out;
    if (!std::is_sorted(cutoffs.begin(), cutoffs.end()))
        throw DomainError("inner_mu_partial_sums: cutoffs must be increasing");
    const std::size_t top = cutoffs.back();
    const std::vector<double> lam = s.coeffs(top + nu + 1);
    DD w(1.0);
    DD acc;
    std::size_t next = 0;
    for (std::size_t mu = 0; mu <= top; ++mu) {
        acc += w * lam[mu + nu];
        while (next < cutoffs.size() && cutoffs[next] == mu) {
            out.push_back(acc.value());
            ++next;
        }
        w = w * two_sum(s.alpha(), static_cast<double>(nu + 1 + mu)) / static_cast<double>(mu + 1);
    }
    return out;
}

std::vector<std::size_t> default_cutoffs() {
    return {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
}

InnerSeriesProbe inner_mu_probe(const LaguerreSeries& s, std::size_t nu,
                                const std::vector<std::size_t>& cutoffs) {
    if (cutoffs.size() < 3) throw DomainError("inner_mu_probe: need at least three cutoffs");
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        if (cutoffs[i] <= cutoffs[i - 1]) throw DomainError("inner_mu_probe: cutoffs must be strictly increasing");

    InnerSeriesProbe p;
    p.nu = nu;
    p.cutoffs = cutoffs;
    p.partial_sums = inner_mu_partial_sums(s, nu, cutoffs);
    for (double v : p.partial_sums)
        p.log10_abs.push_back(v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log10(std::fabs(v)));

    const std::size_t top = cutoffs.back();
    const std::vector<double> lam = s.coeffs(top + nu + 1);

    // Terminating stream: the upper half of the probed coefficients vanish.
    bool tail_zero = true;
    for (std::size_t mu = top / 2; mu <= top && tail_zero; ++mu)
        if (lam[mu + nu] != 0.0) tail_zero = false;
    if (tail_zero) {
        p.verdict = InnerVerdict::Converges;
        p.limit_estimate = p.partial_sums.back();
        return p;
    }

    // Fit window: cutoffs within the top decade, at least the last three.
    std::size_t first = cutoffs.size() - 3;
    while (first > 0 && cutoffs[first - 1] * 10 >= top) --first;
    std::vector<double> lx, ly;
    bool has_zero = false;
    for (std::size_t i = first; i < cutoffs.size(); ++i) {
        if (p.partial_sums[i] == 0.0) has_zero = true;
        lx.push_back(std::log(static_cast<double>(cutoffs[i])));
        ly.push_back(std::log(std::fabs(p.partial_sums[i])));
    }
    if (!has_zero) {
        const LineFit f = fit_line(lx, ly);
        p.growth_exponent = f.slope;
        p.fit_residual = f.rms;
        if (f.slope > 0.1 && f.rms < 0.05) {
            p.verdict = InnerVerdict::Diverges;
            return p;
        }
    }

    // Decade points M_top/100, M_top/10, M_top (largest cutoff not above each target).
    auto at_or_below = [&](double target) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < cutoffs.size(); ++i)
            if (static_cast<double>(cutoffs[i]) <= target) idx = i;
        return idx;
    };
    std::size_t i3 = cutoffs.size() - 1;
    std::size_t i2 = at_or_below(static_cast<double>(top) / 10.0);
    std::size_t i1 = at_or_below(static_cast<double>(top) / 100.0);
    if (!(i1 < i2 && i2 < i3)) { i1 = i3 - 2; i2 = i3 - 1; }
    const double s1 = p.partial_sums[i1], s2 = p.partial_sums[i2], s3 = p.partial_sums[i3];
    const double d1 = s2 - s1, d2 = s3 - s2;
    double scale = 0.0;
    for (double v : p.partial_sums) scale = std::max(scale, std::fabs(v));
    const bool settled = std::fabs(d2) <= 1e-13 * scale;
    if (settled || std::fabs(d2) <= 0.5 * std::fabs(d1)) {
        p.verdict = InnerVerdict::Converges;
        const double den = d2 - d1;
        p.limit_estimate = (settled || den == 0.0) ? s3 : s3 - d2 * d2 / den;
        return p;
    }
    p.verdict = InnerVerdict::Inconclusive;
    return p;
}

DecayClass classify_decay(const LaguerreSeries& s, std::size_t n_lo, std::size_t n_hi) {
    if (n_hi < n_lo + kDecaySignWindow) throw DomainError("classify_decay: requires n_hi >= n_lo + 32");
    const std::vector<double> lam = s.coeffs(n_hi + 1);
    std::vector<double> xlog, xlin, xfac, y;
    for (std::size_t n = std::max<std::size_t>(n_lo, 1); n <= n_hi; ++n) {
        if (lam[n] == 0.0) continue;
        const double dn = static_cast<double>(n);
        xlog.push_back(std::log(dn));
        xlin.push_back(dn);
        xfac.push_back(dn * std::log(dn));
        y.push_back(std::log(std::fabs(lam[n])));
    }
    DecayClass d;
    if (y.size() < 3) return d;

    const double yrange = *std::max_element(y.begin(), y.end()) - *std::min_element(y.begin(), y.end());
    auto normalized = [&](double rms) { return yrange > 0.0 ? rms / yrange : 0.0; };
    const LineFit fp = fit_line(xlog, y);
    const LineFit fe = fit_line(xlin, y);
    const LineFit ff = fit_line(xfac, y);
    d.exponent = fp.slope;
    d.power_residual = normalized(fp.rms);
    d.exp_residual = normalized(fe.rms);
    d.factorial_residual = normalized(ff.rms);

    Eigen::MatrixXd A(static_cast<Eigen::Index>(y.size()), 3);
    Eigen::VectorXd b(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        A(r, 0) = 1.0;
        A(r, 1) = xlog[i];
        A(r, 2) = xlin[i];
        b[r] = y[i];
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
    d.ratio = std::exp(coef[2]);

    int sign_state = 0;
    bool constant = true, alternating = true;
    for (std::size_t n = n_hi + 1 - kDecaySignWindow; n <= n_hi; ++n) {
        if (lam[n] == 0.0) { constant = alternating = false; break; }
        if (n > n_hi + 1 - kDecaySignWindow) {
            const bool same = (lam[n] > 0) == (lam[n - 1] > 0);
            constant = constant && same;
            alternating = alternating && !same;
        }
    }
    sign_state = constant ? 1 : (alternating ? -1 : 0);
    d.sign_pattern = sign_state;

    const double best_exp = std::min(d.exp_residual, d.factorial_residual);
    if (best_exp < d.power_residual && best_exp < kDecayResidualThreshold) {
        d.kind = DecayKind::ExponentialOrFactorial;
    } else if (d.power_residual < kDecayResidualThreshold) {
        if (sign_state == 1) d.kind = DecayKind::AlgebraicMonotone;
        else if (sign_state == -1) d.kind = DecayKind::AlgebraicAlternating;
    }
    return d;
}

TailValue power_tail(double s, std::size_t M) {
    if (!(s > 1.0)) throw DomainError("power_tail: requires s > 1");
    if (M < 1) throw DomainError("power_tail: requires M >= 1");
    const std::size_t a = std::max<std::size_t>(M, 20);
    CompensatedSum acc;
    for (std::size_t mu = M; mu < a; ++mu) acc.add(std::pow(static_cast<double>(mu), -s));
    const double da = static_cast<double>(a);
    acc.add(std::pow(da, 1.0 - s) / (s - 1.0));
    acc.add(0.5 * std::pow(da, -s));
    // B_2/2!, B_4/4!, B_6/6!, B_8/8!
    static constexpr double kB[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
    for (int j = 1; j <= 4; ++j)
        acc.add(kB[j - 1] * pochhammer(s, 2 * j - 1) * std::pow(da, -s - 2.0 * j + 1.0));
    // first omitted term, B_10/10! = 1/47900160
    const double bound = std::fabs(pochhammer(s, 9) * std::pow(da, -s - 9.0) / 47900160.0);
    return {acc.value(), bound};
}

double zeta_tail(double rho, double alpha, std::size_t nu, std::size_t M) {
    if (!(alpha > -1.0)) throw DomainError("zeta_tail: alpha must exceed -1");
    const double dnu = static_cast<double>(nu);
    if (!(dnu < rho)) throw DomainError("zeta_tail: requires nu < rho");
    const double pref = std::exp(ln_gamma(rho + alpha + 1.0) - ln_gamma(alpha + dnu + 1.0)) * rgamma(-rho);
    if (pref == 0.0) return 0.0;
    return pref * power_tail(rho - dnu + 1.0, M).value;
}

std::vector<FormalDiagnosis> formal_power_diagnosis(double rho, double u, double alpha, std::size_t nu_max,
                                                    std::size_t reference_cutoff) {
    if (!(u < 0.5)) throw DomainError("formal_power_diagnosis: requires u < 1/2");
    if (!(alpha > -1.0)) throw DomainError("formal_power_diagnosis: alpha must exceed -1");
    const bool analytic = rho >= 0.0 && std::floor(rho) == rho;
    std::vector<FormalDiagnosis> out;
    for (std::size_t nu = 0; nu <= nu_max; ++nu) {
        FormalDiagnosis d;
        d.nu = nu;
        if (analytic) {
            d.verdict = FormalVerdict::FiniteNonzero;
        } else if (static_cast<double>(nu) < rho) {
            d.verdict = FormalVerdict::VanishesToZero;
            d.tail_magnitude = std::fabs(zeta_tail(rho, alpha, nu, reference_cutoff));
        } else {
            d.verdict = FormalVerdict::DivergesToInfinity;
        }
        out.push_back(d);
    }
    return out;
}

BinomialLimit binomial_1f0_limit(std::size_t k, double rho) {
    const double dk = static_cast<double>(k);
    if (rho < 0.0) return BinomialLimit::Infinite;
    if (dk < rho) return BinomialLimit::Zero;
    if (dk == rho) return BinomialLimit::Finite;
    return BinomialLimit::Infinite;
}

const char* to_string(InnerVerdict v) {
    switch (v) {
        case InnerVerdict::Converges: return "Converges";
        case InnerVerdict::Diverges: return "Diverges";
        case InnerVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(DecayKind k) {
    switch (k) {
        case DecayKind::AlgebraicMonotone: return "AlgebraicMonotone";
        case DecayKind::ExponentialOrFactorial: return "ExponentialOrFactorial";
        case DecayKind::AlgebraicAlternating: return "AlgebraicAlternating";
        case DecayKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(FormalVerdict v) {
    switch (v) {
        case FormalVerdict::VanishesToZero: return "VanishesToZero";
        case FormalVerdict::DivergesToInfinity: return "DivergesToInfinity";
        case FormalVerdict::FiniteNonzero: return "FiniteNonzero";
    }
    return "?";
}

const char* to_string(BinomialLimit v) {
    switch (v) {
        case BinomialLimit::Zero: return "0";
        case BinomialLimit::Infinite: return "inf";
        case BinomialLimit::Finite: return "finite";
    }
    return "?";
}

}  // namespace lgs
