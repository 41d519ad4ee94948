#pragma once

// Experiment driver behind the lgs_lab CLI.  Every run produces a Table
// that is written as CSV or JSON; numbers use the shortest decimal that
// round-trips the binary64 value.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace lgs::lab {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Format { csv, json };

struct RunConfig {
    std::string experiment;
    nlohmann::json params = nlohmann::json::object();
    std::string out;  // empty: stdout
    Format format = Format::csv;
};

// Accepts {"experiment": ..., "params": {...}, "out": ..., "format": ...};
// keys other than these are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json summary = nlohmann::json::object();

    std::size_t column(const std::string& name) const;  // throws ConfigError if absent
};

std::string format_double(double x);
std::string to_csv(const Table& t);
std::string to_json(const Table& t);
// Cells that parse completely as integers become int64, then doubles,
// otherwise strings.
Table parse_csv(const std::string& text);

struct Segment {
    std::size_t first_order = 0;
    std::size_t last_order = 0;
    bool decreasing = true;
};

struct SemiconvergenceReport {
    std::vector<std::size_t> orders;
    std::vector<double> sup_error;
    std::vector<double> norm_error;
    std::size_t argmin_order = 0;
    double min_error = 0.0;
    bool boundary_minimum = false;
    std::vector<Segment> segments;
    std::optional<std::size_t> onset_order;  // first order past the minimum with error > 2x min
};

// params: N, L, beta, gamma, k, orders (default 1..60), grid_step (0.05),
// grid_points (200), quadrature_nodes (300)
SemiconvergenceReport run_semiconvergence(const RunConfig& cfg);
Table semiconvergence_table(const SemiconvergenceReport& r);

// params: rho, u, alpha (or N, L, k, beta, gamma for a Slater function),
// nus, cutoffs.  Columns: nu, M, gamma, sign, log10_abs
Table run_coefficient_flow(const RunConfig& cfg);

// params: expansion (gegenbauer | one_s), ratios, thetas, eta, beta, terms.
// Columns: ratio, theta, expansion, terms, ratio_trend, verdict, value, direct, abs_error
Table run_region_map(const RunConfig& cfg);

// params: series (list of {label, kind, rho, u, alpha, m, power}), n_lo, n_hi.
// Columns: label, kind, exponent, ratio, power_residual, exp_residual, factorial_residual, sign_pattern
Table run_decay_report(const RunConfig& cfg);

// params: input (CSV with a term or partial_sum column) or series
// {rho, u, alpha, nu}, K, methods.  Columns: method, terms, estimate, verdict, spread, min_abs_denominator
Table run_sum(const RunConfig& cfg);

// Built-in identity suite.  Columns: check, value, tolerance, status
Table run_check(const RunConfig& cfg);

Table run(const RunConfig& cfg);

void write_table(const Table& t, const RunConfig& cfg);

}  // namespace lgs::lab
