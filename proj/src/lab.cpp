#include "lgs/lab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "lgs/addthm.hpp"
#include "lgs/errors.hpp"
#include "lgs/laguerre_series.hpp"
#include "lgs/numeric.hpp"
#include "lgs/quadrature.hpp"
#include "lgs/rearrange.hpp"
#include "lgs/seqxform.hpp"
#include "lgs/specfun.hpp"

namespace lgs::lab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void allow_keys(const json& p, std::initializer_list<const char*> keys, const std::string& where) {
    if (!p.is_object()) throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : p.items())
        if (!ok.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

double num(const json& p, const char* key, double def) {
    if (!p.contains(key)) return def;
    const json& v = p.at(key);
    if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
    return v.get<double>();
}

std::size_t count(const json& p, const char* key, std::size_t def) {
    if (!p.contains(key)) return def;
    const json& v = p.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ConfigError(std::string("parameter '") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::string str(const json& p, const char* key, const std::string& def) {
    if (!p.contains(key)) return def;
    const json& v = p.at(key);
    if (!v.is_string()) throw ConfigError(std::string("parameter '") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<std::size_t> count_list(const json& p, const char* key, std::vector<std::size_t> def,
                                    bool increasing) {
    if (p.contains(key)) {
        const json& v = p.at(key);
        if (!v.is_array()) throw ConfigError(std::string("parameter '") + key + "' must be an array");
        def.clear();
        for (const auto& e : v) {
            if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
                throw ConfigError(std::string("parameter '") + key + "' must hold nonnegative integers");
            def.push_back(e.get<std::size_t>());
        }
    }
    if (def.empty()) throw ConfigError(std::string("parameter '") + key + "' must not be empty");
    if (increasing)
        for (std::size_t i = 1; i < def.size(); ++i)
            if (def[i] <= def[i - 1]) throw ConfigError(std::string("parameter '") + key + "' must be strictly increasing");
    return def;
}

std::vector<double> num_list(const json& p, const char* key, std::vector<double> def) {
    if (p.contains(key)) {
        const json& v = p.at(key);
        if (!v.is_array()) throw ConfigError(std::string("parameter '") + key + "' must be an array");
        def.clear();
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(std::string("parameter '") + key + "' must hold numbers");
            def.push_back(e.get<double>());
        }
    }
    if (def.empty()) throw ConfigError(std::string("parameter '") + key + "' must not be empty");
    return def;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

struct SeriesSpec {
    std::string label;
    std::string kind;
    LaguerreSeries series;
};

// {kind: monomial|power|power_exp|stf|alternating|geometric, ...}
SeriesSpec series_from_json(const json& j) {
    allow_keys(j, {"label", "kind", "alpha", "m", "rho", "u", "N", "L", "beta", "gamma", "k", "power", "t"},
               "series");
    const std::string kind = str(j, "kind", "power");
    const double alpha = num(j, "alpha", 0.0);
    require(alpha > -1.0, "series: alpha must exceed -1");
    auto label = [&](const std::string& def) { return str(j, "label", def); };
    if (kind == "monomial") {
        const std::size_t m = count(j, "m", 1);
        return {label("monomial"), kind, monomial_series(m, alpha)};
    }
    if (kind == "power") {
        const double rho = num(j, "rho", 0.5);
        require(alpha + 2.0 * rho > -1.0, "series: requires alpha + 2 rho > -1");
        return {label("power"), kind, power_series(rho, alpha)};
    }
    if (kind == "power_exp") {
        const double rho = num(j, "rho", 0.5);
        const double u = num(j, "u", 0.0);
        require(u < 0.5, "series: requires u < 1/2");
        require(alpha + 2.0 * rho > -1.0, "series: requires alpha + 2 rho > -1");
        return {label("power_exp"), kind, power_exp_series(rho, u, alpha)};
    }
    if (kind == "stf") {
        const double N = num(j, "N", 2.5);
        const std::size_t L = count(j, "L", 0);
        const double beta = num(j, "beta", 1.0);
        const double gamma = num(j, "gamma", 1.0);
        const double k = num(j, "k", 0.0);
        require(beta > 0.0 && gamma > 0.0, "series: beta, gamma must be positive");
        require(k >= -1.0 && 2.0 * N + k > -1.0, "series: requires k >= -1 and 2N + k > -1");
        return {label("stf"), kind, stf_series(N, L, beta, gamma, k)};
    }
    if (kind == "alternating") {
        const double p = num(j, "power", 2.0);
        return {label("alternating"), kind, synthetic_series(alpha, [p](std::size_t n) {
                    const double v = std::pow(static_cast<double>(n + 1), -p);
                    return n % 2 == 0 ? v : -v;
                })};
    }
    if (kind == "geometric") {
        const double t = num(j, "t", 0.5);
        return {label("geometric"), kind, synthetic_series(alpha, [t](std::size_t n) {
                    return std::pow(-t, static_cast<double>(n));
                })};
    }
    throw ConfigError("series: unknown kind '" + kind + "'");
}

double log_abs(double x) { return std::log(std::fabs(x)); }

// log of the weighted squared difference w (g - p)^2, robust when g or p overflow.
double weighted_sq_diff(double log_w, double log_g, double p) {
    const double g = std::exp(log_g);
    if (std::isfinite(g) && std::isfinite(p)) {
        const double d = g - p;
        if (d == 0.0) return 0.0;
        return std::exp(log_w + 2.0 * log_abs(d));
    }
    const double big = std::max(log_g, std::isfinite(p) ? log_abs(p) : std::numeric_limits<double>::max());
    return std::exp(log_w + 2.0 * big);
}

std::vector<Segment> monotone_segments(const std::vector<std::size_t>& orders, const std::vector<double>& err) {
    std::vector<Segment> segs;
    if (orders.empty()) return segs;
    Segment cur{orders[0], orders[0], true};
    bool fixed = false;
    for (std::size_t i = 1; i < orders.size(); ++i) {
        const bool down = err[i] <= err[i - 1];
        if (!fixed) {
            cur.decreasing = down;
            fixed = true;
        } else if (down != cur.decreasing && err[i] != err[i - 1]) {
            segs.push_back(cur);
            cur = Segment{orders[i - 1], orders[i - 1], down};
        }
        cur.last_order = orders[i];
    }
    segs.push_back(cur);
    return segs;
}

json cell_json(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) return *d;
        return format_double(*d);
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    return std::get<std::string>(c);
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ConfigError("missing column '" + name + "'");
}

RunConfig parse_config(const json& j) {
    allow_keys(j, {"experiment", "params", "out", "format"}, "config");
    RunConfig cfg;
    cfg.experiment = str(j, "experiment", "");
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw ConfigError("config: params must be an object");
        cfg.params = j.at("params");
    }
    cfg.out = str(j, "out", "");
    const std::string fmt = str(j, "format", "csv");
    if (fmt == "csv") cfg.format = Format::csv;
    else if (fmt == "json") cfg.format = Format::json;
    else throw ConfigError("config: format must be csv or json");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, p);
    if (s.find_first_of(".eni") == std::string::npos) s += ".0";
    return s;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit([&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) out += format_double(v);
                else if constexpr (std::is_same_v<T, std::int64_t>) out += std::to_string(v);
                else out += v;
            }, row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) o[t.header[i]] = cell_json(row[i]);
        rows.push_back(std::move(o));
    }
    json doc = {{"columns", t.header}, {"rows", rows}, {"summary", t.summary}};
    return doc.dump(2) + "\n";
}

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> f;
        std::string cur;
        for (char c : l) {
            if (c == ',') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        f.push_back(cur);
        return f;
    };
    if (!std::getline(in, line)) throw ConfigError("empty CSV");
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() != t.header.size()) throw ConfigError("CSV row width differs from header");
        std::vector<Cell> row;
        for (const auto& f : fields) {
            const char* b = f.data();
            const char* e = f.data() + f.size();
            std::int64_t iv = 0;
            auto ri = std::from_chars(b, e, iv);
            if (!f.empty() && ri.ec == std::errc() && ri.ptr == e) {
                row.emplace_back(iv);
                continue;
            }
            double dv = 0.0;
            auto rd = std::from_chars(b, e, dv);
            if (!f.empty() && rd.ec == std::errc() && rd.ptr == e) {
                row.emplace_back(dv);
                continue;
            }
            row.emplace_back(f);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

SemiconvergenceReport run_semiconvergence(const RunConfig& cfg) {
    const json& p = cfg.params;
    allow_keys(p, {"N", "L", "beta", "gamma", "k", "orders", "grid_step", "grid_points", "quadrature_nodes"},
               "semiconv");
    const double N = num(p, "N", 2.5);
    const std::size_t L = count(p, "L", 0);
    const double beta = num(p, "beta", 1.0);
    const double gamma = num(p, "gamma", 1.0);
    const double k = num(p, "k", 0.0);
    std::vector<std::size_t> def(60);
    for (std::size_t i = 0; i < def.size(); ++i) def[i] = i + 1;
    const auto orders = count_list(p, "orders", def, true);
    const double step = num(p, "grid_step", 0.05);
    const std::size_t points = count(p, "grid_points", 200);
    const std::size_t nodes = count(p, "quadrature_nodes", kDefaultQuadratureNodes);
    require(beta > 0.0 && gamma > 0.0, "semiconv: beta, gamma must be positive");
    require(k >= -1.0, "semiconv: requires k >= -1");
    require(2.0 * N + k > -1.0, "semiconv: requires 2N + k > -1");
    require(step > 0.0 && points > 0, "semiconv: grid must be nonempty");
    require(nodes >= 2, "semiconv: need at least two quadrature nodes");

    const double dL = static_cast<double>(L);
    const double alpha = 2.0 * dL + k + 2.0;
    const std::size_t Mmax = orders.back();

    // Laguerre coefficients in z = 2 gamma r from the Guseinov-basis coefficients.
    std::vector<double> lambda(Mmax + 1);
    for (std::size_t nu = 0; nu <= Mmax; ++nu) {
        const double c = stf_in_guseinov_coeffs(N, L, beta, gamma, k, nu);
        const double dnu = static_cast<double>(nu);
        const double log_norm = 0.5 * ((k + 3.0) * std::log(2.0 * gamma) + ln_factorial(nu) - ln_gamma(dnu + alpha + 1.0));
        lambda[nu] = c * std::exp(log_norm);
    }
    const LaguerreSeries s = synthetic_series(alpha, [lambda](std::size_t n) {
        return n < lambda.size() ? lambda[n] : 0.0;
    });

    std::vector<double> r(points), exact(points);
    for (std::size_t j = 0; j < points; ++j) {
        r[j] = step * static_cast<double>(j + 1);
        exact[j] = stf_radial(N, beta, r[j]);
    }
    const QuadratureRule& rule = gauss_laguerre_cached(nodes, alpha);
    std::vector<double> log_g(rule.count);
    for (std::size_t j = 0; j < rule.count; ++j) {
        const double z = rule.nodes[j];
        log_g[j] = (N - 1.0) * std::log(beta * z / (2.0 * gamma)) - (beta - gamma) * z / (2.0 * gamma) - dL * std::log(z);
    }

    SemiconvergenceReport rep;
    rep.orders = orders;
    for (std::size_t M : orders) {
        const PolynomialTruncation poly = rearrange_truncated(s, M);
        double sup = 0.0;
        for (std::size_t j = 0; j < points; ++j) {
            const double z = 2.0 * gamma * r[j];
            const double approx = std::exp(-gamma * r[j]) * std::pow(z, dL) * poly.evaluate_rounded(z);
            sup = std::max(sup, std::fabs(approx - exact[j]));
        }
        CompensatedSum sq;
        for (std::size_t j = 0; j < rule.count; ++j)
            sq.add(weighted_sq_diff(rule.log_weights[j], log_g[j], poly.evaluate_rounded(rule.nodes[j])));
        rep.sup_error.push_back(sup);
        rep.norm_error.push_back(std::sqrt(std::max(0.0, sq.value())));
    }
    const auto it = std::min_element(rep.sup_error.begin(), rep.sup_error.end());
    const std::size_t imin = static_cast<std::size_t>(it - rep.sup_error.begin());
    rep.argmin_order = orders[imin];
    rep.min_error = *it;
    rep.boundary_minimum = imin == 0 || imin + 1 == orders.size();
    rep.segments = monotone_segments(orders, rep.sup_error);
    for (std::size_t i = imin + 1; i < orders.size(); ++i)
        if (rep.sup_error[i] > 2.0 * rep.min_error) {
            rep.onset_order = orders[i];
            break;
        }
    return rep;
}

Table semiconvergence_table(const SemiconvergenceReport& r) {
    Table t;
    t.header = {"order", "sup_error", "norm_error", "marker"};
    for (std::size_t i = 0; i < r.orders.size(); ++i) {
        std::string marker = "-";
        if (r.orders[i] == r.argmin_order) marker = "minimum";
        else if (r.onset_order && r.orders[i] == *r.onset_order) marker = "onset";
        t.rows.push_back({as_int(r.orders[i]), r.sup_error[i], r.norm_error[i], marker});
    }
    json segs = json::array();
    for (const auto& s : r.segments)
        segs.push_back({{"first_order", s.first_order}, {"last_order", s.last_order},
                        {"direction", s.decreasing ? "decreasing" : "increasing"}});
    t.summary = {{"argmin_order", r.argmin_order},
                 {"min_error", r.min_error},
                 {"boundary_minimum", r.boundary_minimum},
                 {"onset_order", r.onset_order ? json(*r.onset_order) : json(nullptr)},
                 {"segments", segs}};
    return t;
}

Table run_coefficient_flow(const RunConfig& cfg) {
    const json& p = cfg.params;
    allow_keys(p, {"series", "nus", "cutoffs"}, "coeff-flow");
    const SeriesSpec spec = series_from_json(p.contains("series") ? p.at("series") : json::object());
    const auto nus = count_list(p, "nus", {0, 1, 2}, true);
    const auto cutoffs = count_list(p, "cutoffs", {100, 1000, 10000}, true);
    Table t;
    t.header = {"nu", "M", "gamma", "sign", "log10_abs"};
    json slopes = json::object();
    for (std::size_t nu : nus) {
        std::vector<double> lx, ly;
        for (std::size_t M : cutoffs) {
            if (M < nu) continue;
            const double g = rearranged_coefficient(spec.series, nu, M);
            const std::int64_t sg = g > 0.0 ? 1 : (g < 0.0 ? -1 : 0);
            const double l10 = g == 0.0 ? -kInf : std::log10(std::fabs(g));
            t.rows.push_back({as_int(nu), as_int(M), g, sg, l10});
            if (g != 0.0 && M > 0) {
                lx.push_back(std::log(static_cast<double>(M)));
                ly.push_back(std::log(std::fabs(g)));
            }
        }
        if (lx.size() >= 2) {
            const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
            const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
            double sxy = 0.0, sxx = 0.0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sxy += (lx[i] - mx) * (ly[i] - my);
                sxx += (lx[i] - mx) * (lx[i] - mx);
            }
            slopes[std::to_string(nu)] = sxy / sxx;
        }
    }
    t.summary = {{"series", spec.label}, {"loglog_slope", slopes}};
    return t;
}

Table run_region_map(const RunConfig& cfg) {
    const json& p = cfg.params;
    allow_keys(p, {"expansion", "ratios", "thetas", "eta", "beta", "terms"}, "region-map");
    const std::string kind = str(p, "expansion", "gegenbauer");
    require(kind == "gegenbauer" || kind == "one_s", "region-map: expansion must be gegenbauer or one_s");
    const auto ratios = num_list(p, "ratios", kind == "gegenbauer" ? std::vector<double>{0.3, 0.5, 0.8, 1.2, 1.5, 3.0}
                                                                  : std::vector<double>{0.2, 0.5, 0.8});
    const auto thetas = num_list(p, "thetas", {0.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0});
    const double eta = num(p, "eta", 0.5);
    const double beta = num(p, "beta", 1.0);
    const std::size_t terms = count(p, "terms", kind == "gegenbauer" ? 200 : 150);
    require(beta > 0.0, "region-map: beta must be positive");
    for (double q : ratios) {
        require(q >= 0.0, "region-map: ratios must be nonnegative");
        if (kind == "one_s") require(q > 0.0 && q < 1.0, "region-map: one_s ratios must lie in (0, 1)");
    }

    Table t;
    t.header = {"ratio", "theta", "expansion", "terms", "ratio_trend", "verdict", "value", "direct", "abs_error"};
    for (double q : ratios)
        for (double th : thetas) {
            ExpansionResult res;
            double direct = 0.0;
            if (kind == "gegenbauer") {
                res = gegenbauer_expand_small(q, 1.0, th, eta, terms);
                direct = f_eta_direct(q, 1.0, th, eta);
            } else {
                const TwoRangeGeometry g{q, 1.0, std::cos(th)};
                res = one_s_addition(beta, g, terms);
                direct = one_s_direct(beta, g);
            }
            t.rows.push_back({q, th, kind, as_int(res.diag.terms), res.diag.ratio_trend,
                              std::string(to_string(res.diag.verdict)), res.value, direct,
                              std::fabs(res.value - direct)});
        }
    t.summary = {{"expansion", kind}, {"eta", eta}, {"beta", beta}};
    return t;
}

Table run_decay_report(const RunConfig& cfg) {
    const json& p = cfg.params;
    allow_keys(p, {"series", "n_lo", "n_hi"}, "decay");
    const std::size_t n_lo = count(p, "n_lo", 100);
    const std::size_t n_hi = count(p, "n_hi", 400);
    require(n_hi >= n_lo + kDecaySignWindow, "decay: requires n_hi >= n_lo + 32");
    json list = p.contains("series") ? p.at("series")
                                     : json::array({{{"kind", "power"}, {"rho", 0.5}, {"alpha", 0.0}},
                                                    {{"kind", "power_exp"}, {"rho", 2.0}, {"u", -1.0}, {"alpha", 0.0}},
                                                    {{"kind", "alternating"}, {"power", 2.0}, {"alpha", 0.0}}});
    require(list.is_array() && !list.empty(), "decay: series must be a nonempty array");
    Table t;
    t.header = {"label", "kind", "exponent", "ratio", "power_residual", "exp_residual", "factorial_residual",
                "sign_pattern", "decay_class"};
    for (const auto& j : list) {
        const SeriesSpec spec = series_from_json(j);
        const DecayClass d = classify_decay(spec.series, n_lo, n_hi);
        t.rows.push_back({spec.label, spec.kind, d.exponent, d.ratio, d.power_residual, d.exp_residual,
                          d.factorial_residual, static_cast<std::int64_t>(d.sign_pattern), std::string(to_string(d.kind))});
    }
    t.summary = {{"n_lo", n_lo}, {"n_hi", n_hi}};
    return t;
}

Table run_sum(const RunConfig& cfg) {
    const json& p = cfg.params;
    allow_keys(p, {"input", "column", "series", "nu", "K", "methods"}, "sum");
    std::vector<std::string> methods = {"epsilon", "levin", "s_transform"};
    if (p.contains("methods")) {
        require(p.at("methods").is_array(), "sum: methods must be an array");
        methods.clear();
        for (const auto& m : p.at("methods")) {
            require(m.is_string(), "sum: methods must be strings");
            methods.push_back(m.get<std::string>());
        }
    }
    std::vector<SumMethod> parsed;
    for (const auto& m : methods) {
        try {
            parsed.push_back(parse_sum_method(m));
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }

    std::vector<double> partial;
    std::string source;
    if (p.contains("input")) {
        const std::string path = str(p, "input", "");
        std::ifstream in(path);
        if (!in) throw ConfigError("sum: cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        const Table src = parse_csv(ss.str());
        const std::string col = str(p, "column", "term");
        require(col == "term" || col == "partial_sum", "sum: column must be term or partial_sum");
        const std::size_t c = src.column(col);
        CompensatedSum acc;
        for (const auto& row : src.rows) {
            double v = 0.0;
            if (const double* d = std::get_if<double>(&row[c])) v = *d;
            else if (const auto* i = std::get_if<std::int64_t>(&row[c])) v = static_cast<double>(*i);
            else throw ConfigError("sum: non-numeric entry in column " + col);
            if (col == "term") {
                acc.add(v);
                partial.push_back(acc.value());
            } else {
                partial.push_back(v);
            }
        }
        if (p.contains("K")) {
            const std::size_t K = count(p, "K", partial.size());
            if (K < partial.size()) partial.resize(K);
        }
        source = path;
    } else {
        const SeriesSpec spec = series_from_json(p.contains("series") ? p.at("series") : json::object());
        const std::size_t nu = count(p, "nu", 0);
        const std::size_t K = count(p, "K", 20);
        std::vector<std::size_t> cutoffs(K);
        for (std::size_t i = 0; i < K; ++i) cutoffs[i] = i;
        partial = inner_mu_partial_sums(spec.series, nu, cutoffs);
        source = spec.label;
    }
    require(partial.size() >= 3, "sum: need at least three partial sums");

    Table t;
    t.header = {"method", "terms", "estimate", "verdict", "spread", "min_abs_denominator"};
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const InnerSummation r = sum_partial_sums(partial, parsed[i]);
        t.rows.push_back({std::string(to_string(parsed[i])), as_int(partial.size()), r.estimate,
                          std::string(to_string(r.verdict)), r.spread, r.min_abs_denominator});
    }
    t.summary = {{"source", source}, {"last_partial_sum", partial.back()}};
    return t;
}

Table run_check(const RunConfig& cfg) {
    allow_keys(cfg.params, {}, "check");
    Table t;
    t.header = {"check", "value", "tolerance", "status"};
    auto add = [&](const std::string& name, double value, double tol) {
        t.rows.push_back({name, value, tol, std::string(value <= tol ? "pass" : "fail")});
    };

    {
        const double oracle = 65845.895237867227927;
        add("laguerre_recurrence_n60", std::fabs(laguerre_recurrence(60, 2.0, 30.0) - oracle) / oracle, 1e-10);
    }
    {
        const QuadratureRule& rule = gauss_laguerre_cached(kDefaultQuadratureNodes, 1.0);
        double worst = 0.0;
        for (std::size_t n = 0; n <= 15; ++n)
            for (std::size_t m = 0; m <= n; ++m) {
                CompensatedSum g;
                for (std::size_t j = 0; j < rule.count; ++j)
                    if (rule.weights[j] > 0.0)
                        g.add(rule.weights[j] * normalized_laguerre(n, 1.0, rule.nodes[j])
                              * normalized_laguerre(m, 1.0, rule.nodes[j]));
                worst = std::max(worst, std::fabs(g.value() - (n == m ? 1.0 : 0.0)));
            }
        add("laguerre_orthonormality", worst, 1e-9);
    }
    {
        const PolynomialTruncation poly = rearrange_truncated(monomial_series(5, 0.5), 5);
        double worst = std::fabs(poly.gamma_coeffs[5] - 1.0);
        for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::fabs(poly.gamma_coeffs[i]));
        add("monomial_roundtrip_m5", worst, 1e-12);
    }
    add("stf_to_bfun_n3_l1", stf_to_bfun_radial_check(3, 1, 1.0, 2.0), 1e-11);
    add("explag_to_rbf_n5", explag_to_rbf_check(5, 2.5, 0.7), 1e-11);
    {
        const TwoRangeGeometry g{0.5, 1.0, 0.5};
        const double d = one_s_direct(1.0, g);
        add("one_s_addition", std::fabs(one_s_addition(1.0, g, 60).value - d) / d, 1e-8);
    }
    {
        const double th = std::numbers::pi / 3.0;
        add("gegenbauer_small_z", std::fabs(gegenbauer_expand_small(0.5, 1.0, th, 0.5, 60).value
                                            - f_eta_direct(0.5, 1.0, th, 0.5)), 1e-10);
    }
    {
        std::vector<double> ps;
        CompensatedSum acc;
        for (std::size_t k = 0; k <= 20; ++k) {
            acc.add((k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(k + 1));
            ps.push_back(acc.value());
        }
        add("wynn_alternating_harmonic", std::fabs(wynn_epsilon(ps).best_estimate - std::numbers::ln2), 1e-10);
    }
    std::size_t failed = 0;
    for (const auto& row : t.rows) failed += std::get<std::string>(row[3]) == "fail";
    t.summary = {{"checks", t.rows.size()}, {"failed", failed}};
    return t;
}

Table run(const RunConfig& cfg) {
    const std::string& e = cfg.experiment;
    if (e == "semiconv") return semiconvergence_table(run_semiconvergence(cfg));
    if (e == "coeff-flow") return run_coefficient_flow(cfg);
    if (e == "region-map") return run_region_map(cfg);
    if (e == "decay") return run_decay_report(cfg);
    if (e == "sum") return run_sum(cfg);
    if (e == "check") return run_check(cfg);
    throw ConfigError("unknown experiment '" + e + "'");
}

void write_table(const Table& t, const RunConfig& cfg) {
    const std::string text = cfg.format == Format::csv ? to_csv(t) : to_json(t);
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + cfg.out);
    out << text;
}

}  // namespace lgs::lab
