#pragma once

#include <cstdint>

namespace dhlab {

/// Exact rational, kept reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// S'(n) = product over odd primes p | n of (p-1)/(p-2), exact.
/// Throws DomainError for n <= 0.
Rational sfrak_prime(std::int64_t n);

/// C(q1, q2) = (log 2 + C S'(q1))^{1/2} (log 2 + C S'(q2))^{1/2}
/// with C = 10.0219168340.
double capC(std::int64_t q1, std::int64_t q2);

struct Theorem2Input {
    double lambda1 = 2.0; // > 1
    std::int64_t q1 = 1;
    std::int64_t q2 = 1;
    double eta = 0.1; // > 0
};

/// Intermediate quantities of the s_0 evaluation, for reporting.
struct SZeroBreakdown {
    double capC_value = 0.0;
    double numerator = 0.0;   // log(C(q1,q2) lambda1) - log eta
    double denominator = 0.0; // -log(0.884472132)
    double ratio = 0.0;
    int s0 = 0;
};

/// s0 = 2 + ceil((log(C(q1,q2) lambda1) - log eta) / (-log nu)) with
/// nu = 0.884472132; the ceiling argument is clamped at 0 so the function is
/// total.  Throws DomainError if eta <= 0.
SZeroBreakdown s_zero(const Theorem2Input& input);

/// L = floor(log2(eps X / (2 M))).  Throws DomainError if eps X <= 2 M.
int L_bound(double eps, double X, double M);

} // namespace dhlab
