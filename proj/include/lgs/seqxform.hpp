#pragma once

// Sequence transformations: Wynn's epsilon algorithm, Levin's
// transformation and the S transformation, plus a driver for the inner
// mu series of a rearranged Laguerre expansion.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgs/laguerre_series.hpp"

namespace lgs {

class DegenerateTable : public std::runtime_error {
public:
    explicit DegenerateTable(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kDenominatorGuard = 1e-300;

struct TransformTable {
    std::vector<double> input;
    // orders[k][n]: order-k estimate from the window starting at n.
    // orders[0] is the input.  For Wynn these are the even columns eps_{2k}.
    std::vector<std::vector<double>> orders;
    std::vector<std::vector<bool>> saturated;
    // top[k]: the order-k entry whose window ends at the last usable partial sum.
    std::vector<double> top;
    double best_estimate = 0.0;
    std::size_t best_order = 0;
    double min_abs_denominator = 0.0;
};

enum class Remainder { u, d };

TransformTable wynn_epsilon(const std::vector<double>& partial_sums);
TransformTable levin_type(const std::vector<double>& partial_sums, Remainder remainder = Remainder::d,
                          double beta = 1.0);
TransformTable s_transform(const std::vector<double>& partial_sums, Remainder remainder = Remainder::d,
                         double beta = 1.0);

// Largest pairwise relative difference among the top estimates of the
// last three orders; +inf if fewer than three orders carry a finite entry.
double last_orders_spread(const TransformTable& t);

inline constexpr double kNotSummableSpread = 0.10;

enum class SumMethod { epsilon, levin, s_transform };
enum class SumVerdict { Summable, NotSummable };

// NotSummable when spread > kNotSummableSpread.  spread is the larger of
// last_orders_spread and the drift of the best estimate when the last one
// or two partial sums are dropped.
struct InnerSummation {
    double estimate = 0.0;
    SumVerdict verdict = SumVerdict::NotSummable;
    double spread = 0.0;
    double min_abs_denominator = 0.0;
    std::size_t saturated_entries = 0;
    TransformTable table;
};

InnerSummation sum_inner_series(const LaguerreSeries& s, std::size_t nu, std::size_t K, SumMethod method);

// Summation of an arbitrary list of partial sums by one of the methods.
InnerSummation sum_partial_sums(const std::vector<double>& partial_sums, SumMethod method);

const char* to_string(SumMethod m);
const char* to_string(SumVerdict v);
SumMethod parse_sum_method(const std::string& s);

}  // namespace lgs
