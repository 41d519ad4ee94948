#pragma once

// Small floating-point helpers shared by all modules: compensated sums,
// double-double arithmetic built on error-free transformations, and a
// sign/log-magnitude pair for products that leave the double range.

#include <cmath>
#include <limits>

namespace lgs {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) { add(x); return *this; }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD operator+(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD operator*(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = a - b * q1;
    const double q2 = r.hi / b.hi;
    r = r - b * q2;
    const double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return q + DD(q3);
}

inline DD operator/(DD a, double b) { return a / DD(b); }

inline DD& operator+=(DD& a, DD b) { return a = a + b; }

// Value sign * exp(log_abs).  sign == 0 encodes an exact zero.
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static SignedLog from(double x) {
        if (x == 0.0) return {};
        return {std::log(std::fabs(x)), x < 0 ? -1 : 1};
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    bool is_zero() const { return sign == 0; }
};

inline SignedLog operator*(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.log_abs + b.log_abs, a.sign * b.sign};
}

inline SignedLog operator/(SignedLog a, SignedLog b) {
    if (a.sign == 0) return {};
    return {a.log_abs - b.log_abs, a.sign * b.sign};
}

}  // namespace lgs
