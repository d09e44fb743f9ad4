#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace dhlab {

/// Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
/// giving roughly 106 significant bits.  Used wherever a plain double would
/// corrupt a result: phase reduction f(n)*alpha mod 1, continued-fraction
/// digits of irrational constants, and near-threshold form evaluation.
///
/// The arithmetic below is the classical error-free-transform toolkit
/// (Dekker / Knuth two_sum, FMA-based two_prod).
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
    explicit operator double() const { return hi + lo; }
};

namespace detail {

// Exact sum of two doubles: a + b = s + e with s = fl(a + b).
inline DoubleDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

// two_sum when |a| >= |b| is known.
inline DoubleDouble quick_two_sum(double a, double b) {
    double s = a + b;
    double e = b - (s - a);
    return {s, e};
}

// Exact product: a * b = p + e.
inline DoubleDouble two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

} // namespace detail

inline DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
    using namespace detail;
    DoubleDouble s = two_sum(a.hi, b.hi);
    DoubleDouble t = two_sum(a.lo, b.lo);
    double lo = s.lo + t.hi;
    DoubleDouble r = quick_two_sum(s.hi, lo);
    lo = r.lo + t.lo;
    return quick_two_sum(r.hi, lo);
}

inline DoubleDouble dd_neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

inline DoubleDouble dd_sub(DoubleDouble a, DoubleDouble b) { return dd_add(a, dd_neg(b)); }

inline DoubleDouble dd_mul(DoubleDouble a, DoubleDouble b) {
    using namespace detail;
    DoubleDouble p = two_prod(a.hi, b.hi);
    double lo = p.lo + (a.hi * b.lo + a.lo * b.hi);
    return quick_two_sum(p.hi, lo);
}

inline DoubleDouble dd_mul(DoubleDouble a, double b) {
    using namespace detail;
    DoubleDouble p = two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return quick_two_sum(p.hi, lo);
}

inline DoubleDouble dd_div(DoubleDouble a, DoubleDouble b) {
    using namespace detail;
    double q1 = a.hi / b.hi;
    DoubleDouble r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    DoubleDouble q = quick_two_sum(q1, q2);
    return dd_add(q, DoubleDouble(q3));
}

inline DoubleDouble dd_from_ratio(double num, double den) {
    return dd_div(DoubleDouble(num), DoubleDouble(den));
}

inline bool dd_less(DoubleDouble a, DoubleDouble b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline DoubleDouble dd_abs(DoubleDouble a) {
    return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? dd_neg(a) : a;
}

/// Largest integer-valued dd not exceeding a.  Both components of the result
/// are exact (floor of a double is exact).
inline DoubleDouble dd_floor(DoubleDouble a) {
    double fhi = std::floor(a.hi);
    if (fhi != a.hi) return {fhi, 0.0};
    // hi already integral: the fractional information lives in lo.
    double flo = std::floor(a.lo);
    return detail::quick_two_sum(fhi, flo);
}

/// Fractional part in [0, 1).
inline DoubleDouble dd_frac(DoubleDouble a) {
    DoubleDouble f = dd_sub(a, dd_floor(a));
    // Guard against f == 1 after rounding.
    if (f.hi >= 1.0) f = dd_sub(f, DoubleDouble(1.0));
    if (f.hi < 0.0) f = dd_add(f, DoubleDouble(1.0));
    return f;
}

/// Fractional part reduced to [-1/2, 1/2), the natural window for e(x).
inline double dd_frac_centered(DoubleDouble a) {
    DoubleDouble f = dd_frac(a);
    double x = f.to_double();
    return (x >= 0.5) ? x - 1.0 : x;
}

// 106-bit constants: hi = nearest double, lo = residual.
namespace dd_const {
inline constexpr DoubleDouble sqrt2{1.4142135623730951, -9.667293313452913e-17};
inline constexpr DoubleDouble sqrt3{1.7320508075688772, 1.0035084221806903e-16};
inline constexpr DoubleDouble sqrt5{2.23606797749979, -1.0864230407365012e-16};
inline constexpr DoubleDouble pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr DoubleDouble euler_e{2.718281828459045, 1.4456468917292502e-16};
} // namespace dd_const

} // namespace dhlab
