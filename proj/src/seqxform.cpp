#include "lgs/seqxform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lgs/errors.hpp"
#include "lgs/rearrange.hpp"

namespace lgs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_input(const std::vector<double>& s, std::size_t min_len, const char* who) {
    if (s.size() < min_len)
        throw DomainError(std::string(who) + ": too few partial sums");
    for (double v : s)
        if (!std::isfinite(v)) throw DegenerateTable(std::string(who) + ": non-finite partial sum");
}

// Index from which the sequence is exactly constant up to its end.
std::size_t stationary_from(const std::vector<double>& s) {
    std::size_t i = s.size() - 1;
    while (i > 0 && s[i - 1] == s.back()) --i;
    return i;
}

void finish(TransformTable& t) {
    t.top.clear();
    for (const auto& row : t.orders) t.top.push_back(row.empty() ? kInf : row.back());
    t.best_order = 0;
    t.best_estimate = t.input.back();
    for (std::size_t k = t.orders.size(); k-- > 0;) {
        if (t.orders[k].empty()) continue;
        if (!t.saturated[k].back() && std::isfinite(t.orders[k].back())) {
            t.best_order = k;
            t.best_estimate = t.orders[k].back();
            break;
        }
    }
    // A sequence that has reached its limit (last three entries identical) is its own estimate.
    const std::size_t n = t.input.size();
    if (n >= 3 && t.input[n - 1] == t.input[n - 2] && t.input[n - 2] == t.input[n - 3])
        t.best_estimate = t.input.back();
}

double binomial(std::size_t k, std::size_t j) {
    double c = 1.0;
    for (std::size_t i = 1; i <= j; ++i)
        c = c * static_cast<double>(k - j + i) / static_cast<double>(i);
    return c;
}

TransformTable levin_family(const std::vector<double>& s, Remainder remainder, double beta, bool use_s,
                            const char* who) {
    check_input(s, remainder == Remainder::d ? 3 : 2, who);
    const std::size_t K = s.size();
    std::vector<double> omega;
    if (remainder == Remainder::d) {
        for (std::size_t m = 0; m + 1 < K; ++m) omega.push_back(s[m + 1] - s[m]);
    } else {
        for (std::size_t m = 0; m < K; ++m) {
            const double a = m == 0 ? s[0] : s[m] - s[m - 1];
            omega.push_back((beta + static_cast<double>(m)) * a);
        }
    }
    const std::size_t stat = stationary_from(s);

    TransformTable t;
    t.input = s;
    t.orders.push_back(s);
    t.saturated.emplace_back(K, false);
    t.min_abs_denominator = kInf;
    const std::size_t m_max = omega.size() - 1;
    for (std::size_t k = 1; k <= m_max; ++k) {
        std::vector<double> row;
        std::vector<bool> sat;
        for (std::size_t n = 0; n + k <= m_max; ++n) {
            bool zero_omega = false;
            for (std::size_t j = 0; j <= k; ++j) {
                const std::size_t m = n + j;
                if (omega[m] != 0.0) continue;
                // Only legitimate once the sequence has become stationary.
                const std::size_t legit_from = remainder == Remainder::d ? stat : stat + 1;
                if (m < legit_from)
                    throw DegenerateTable(std::string(who) + ": vanishing remainder estimate");
                zero_omega = true;
            }
            if (zero_omega) {
                row.push_back(s.back());
                sat.push_back(true);
                continue;
            }
            const double dn = static_cast<double>(n);
            const double dk = static_cast<double>(k);
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j <= k; ++j) {
                const double dj = static_cast<double>(j);
                double c;
                if (use_s) {
                    c = 1.0;
                    for (std::size_t i = 0; i + 1 < k; ++i) {
                        const double di = static_cast<double>(i);
                        c *= (beta + dn + dj + di) / (beta + dn + dk + di);
                    }
                } else {
                    c = std::pow((beta + dn + dj) / (beta + dn + dk), dk - 1.0);
                }
                const double w = ((j % 2 == 0) ? 1.0 : -1.0) * binomial(k, j) * c / omega[n + j];
                num += w * s[n + j];
                den += w;
            }
            t.min_abs_denominator = std::min(t.min_abs_denominator, std::fabs(den));
            if (!(std::fabs(den) >= kDenominatorGuard) || !std::isfinite(num / den)) {
                row.push_back(kInf);
                sat.push_back(true);
            } else {
                row.push_back(num / den);
                sat.push_back(false);
            }
        }
        t.orders.push_back(std::move(row));
        t.saturated.push_back(std::move(sat));
    }
    finish(t);
    return t;
}

}  // namespace

TransformTable wynn_epsilon(const std::vector<double>& s) {
    check_input(s, 3, "wynn_epsilon");
    const std::size_t K = s.size();
    TransformTable t;
    t.input = s;
    t.orders.push_back(s);
    t.saturated.emplace_back(K, false);
    t.min_abs_denominator = kInf;

    std::vector<double> prev(K + 1, 0.0);  // eps_{-1}
    std::vector<double> cur = s;            // eps_0
    std::vector<bool> cur_sat(K, false);
    std::size_t total = 0, underflow = 0;
    for (std::size_t col = 1; col < K; ++col) {
        const std::size_t len = K - col;
        std::vector<double> next(len);
        std::vector<bool> next_sat(len, false);
        const bool even = col % 2 == 0;
        for (std::size_t n = 0; n < len; ++n) {
            const double den = cur[n + 1] - cur[n];
            const bool bad_inputs = cur_sat[n] || cur_sat[n + 1];
            ++total;
            if (!bad_inputs) t.min_abs_denominator = std::min(t.min_abs_denominator, std::fabs(den));
            if (bad_inputs || !(std::fabs(den) >= kDenominatorGuard)) {
                if (!bad_inputs) ++underflow;
                next_sat[n] = true;
                // 1/den -> infinity in odd columns; in even columns the
                // saturated odd neighbours contribute nothing.
                next[n] = even ? prev[n + 1] : kInf;
                if (even && !std::isfinite(next[n])) next[n] = cur[n + 1];
            } else {
                next[n] = prev[n + 1] + 1.0 / den;
            }
        }
        if (even) {
            t.orders.push_back(next);
            t.saturated.push_back(next_sat);
        }
        prev = cur;
        cur = std::move(next);
        cur_sat = std::move(next_sat);
    }
    bool constant = true;
    for (double v : s) constant = constant && v == s[0];
    if (total > 0 && underflow == total && !constant)
        throw DegenerateTable("wynn_epsilon: every denominator underflowed");
    finish(t);
    return t;
}

TransformTable levin_type(const std::vector<double>& s, Remainder remainder, double beta) {
    return levin_family(s, remainder, beta, false, "levin_type");
}

TransformTable s_transform(const std::vector<double>& s, Remainder remainder, double beta) {
    return levin_family(s, remainder, beta, true, "s_transform");
}

double last_orders_spread(const TransformTable& t) {
    std::vector<double> vals;
    for (std::size_t k = t.orders.size(); k-- > 1 && vals.size() < 3;) {
        if (t.orders[k].empty()) continue;
        const double v = t.orders[k].back();
        if (t.saturated[k].back() || !std::isfinite(v)) return kInf;
        vals.push_back(v);
    }
    if (vals.size() < 3) return kInf;
    double spread = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const double scale = std::max(std::fabs(vals[i]), std::fabs(vals[j]));
            const double diff = std::fabs(vals[i] - vals[j]);
            spread = std::max(spread, scale > 0.0 ? diff / scale : (diff > 0.0 ? kInf : 0.0));
        }
    return spread;
}

namespace {

TransformTable transform(const std::vector<double>& partial_sums, SumMethod method) {
    switch (method) {
        case SumMethod::epsilon: return wynn_epsilon(partial_sums);
        case SumMethod::levin: return levin_type(partial_sums, Remainder::d);
        case SumMethod::s_transform: return s_transform(partial_sums, Remainder::d);
    }
    throw DomainError("unknown summation method");
}

// Relative spread of the best estimates from the input with the last one
// and two partial sums dropped.  A divergent input can have a stable table
// for one length while the estimate drifts from length to length.
double prefix_spread(const std::vector<double>& partial_sums, SumMethod method, double full) {
    double spread = 0.0;
    for (std::size_t drop : {1, 2}) {
        if (partial_sums.size() < drop + 5) break;
        const std::vector<double> head(partial_sums.begin(), partial_sums.end() - static_cast<std::ptrdiff_t>(drop));
        double est = 0.0;
        try {
            est = transform(head, method).best_estimate;
        } catch (const DegenerateTable&) {
            return kInf;
        }
        const double scale = std::max(std::fabs(est), std::fabs(full));
        const double diff = std::fabs(est - full);
        spread = std::max(spread, scale > 0.0 ? diff / scale : 0.0);
    }
    return spread;
}

}  // namespace

InnerSummation sum_partial_sums(const std::vector<double>& partial_sums, SumMethod method) {
    InnerSummation r;
    try {
        r.table = transform(partial_sums, method);
    } catch (const DegenerateTable&) {
        r.verdict = SumVerdict::NotSummable;
        r.spread = kInf;
        r.table.input = partial_sums;
        r.estimate = partial_sums.empty() ? 0.0 : partial_sums.back();
        return r;
    }
    r.min_abs_denominator = r.table.min_abs_denominator;
    for (const auto& row : r.table.saturated)
        r.saturated_entries += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
    r.estimate = r.table.best_estimate;
    const std::size_t n = partial_sums.size();
    const bool stationary = n >= 3 && partial_sums[n - 1] == partial_sums[n - 2] && partial_sums[n - 2] == partial_sums[n - 3];
    r.spread = stationary ? 0.0 : std::max(last_orders_spread(r.table), prefix_spread(partial_sums, method, r.estimate));
    r.verdict = (r.spread <= kNotSummableSpread) ? SumVerdict::Summable : SumVerdict::NotSummable;
    return r;
}

InnerSummation sum_inner_series(const LaguerreSeries& s, std::size_t nu, std::size_t K, SumMethod method) {
    if (K < 3) throw DomainError("sum_inner_series: need at least three terms");
    std::vector<std::size_t> cutoffs(K);
    for (std::size_t i = 0; i < K; ++i) cutoffs[i] = i;
    return sum_partial_sums(inner_mu_partial_sums(s, nu, cutoffs), method);
}

const char* to_string(SumMethod m) {
    switch (m) {
        case SumMethod::epsilon: return "epsilon";
        case SumMethod::levin: return "levin";
        case SumMethod::s_transform: return "s_transform";
    }
    return "?";
}

const char* to_string(SumVerdict v) {
    return v == SumVerdict::Summable ? "Summable" : "NotSummable";
}

SumMethod parse_sum_method(const std::string& s) {
    if (s == "epsilon") return SumMethod::epsilon;
    if (s == "levin") return SumMethod::levin;
    if (s == "s_transform") return SumMethod::s_transform;
    throw DomainError("unknown summation method: " + s);
}

}  // namespace lgs
