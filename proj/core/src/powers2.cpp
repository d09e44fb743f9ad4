#include "dhlab/powers2.hpp"

#include <cmath>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {
constexpr double kPintzRuzsaC = 10.0219168340;
constexpr double kNu = 0.884472132;
} // namespace

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational sfrak_prime(std::int64_t n) {
    if (n <= 0) throw DomainError("sfrak_prime: n must be positive");
    __int128 num = 1, den = 1;
    auto fold = [&](std::int64_t p) {
        num *= p - 1;
        den *= p - 2;
        __int128 g = gcd128(num, den);
        num /= g;
        den /= g;
    };
    while (n % 2 == 0) n /= 2;
    for (std::int64_t p = 3; p <= n / p; p += 2) {
        if (n % p) continue;
        fold(p);
        while (n % p == 0) n /= p;
    }
    if (n > 2) fold(n); // leftover odd prime factor
    constexpr __int128 kMax = std::int64_t(1) << 62;
    if (num > kMax || den > kMax)
        throw DomainError("sfrak_prime: reduced rational exceeds 64 bits");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

double capC(std::int64_t q1, std::int64_t q2) {
    if (q1 < 1 || q2 < 1) throw DomainError("capC: q1, q2 must be >= 1");
    double f1 = std::log(2.0) + kPintzRuzsaC * sfrak_prime(q1).to_double();
    double f2 = std::log(2.0) + kPintzRuzsaC * sfrak_prime(q2).to_double();
    return std::sqrt(f1) * std::sqrt(f2);
}

SZeroBreakdown s_zero(const Theorem2Input& input) {
    if (!(input.eta > 0.0)) throw DomainError("s_zero: eta must be positive");
    SZeroBreakdown out;
    out.capC_value = capC(input.q1, input.q2);
    out.numerator = std::log(out.capC_value * input.lambda1) - std::log(input.eta);
    out.denominator = -std::log(kNu);
    out.ratio = out.numerator / out.denominator;
    double ceiled = std::max(0.0, std::ceil(out.ratio));
    out.s0 = 2 + static_cast<int>(ceiled);
    return out;
}

int L_bound(double eps, double X, double M) {
    double r = eps * X / (2.0 * M);
    if (!(r > 1.0)) throw DomainError("L_bound: need eps X > 2 M");
    int k = static_cast<int>(std::floor(std::log2(r)));
    // settle exactly on the floor of the double r
    while (std::ldexp(1.0, k + 1) <= r) ++k;
    while (k > 0 && std::ldexp(1.0, k) > r) --k;
    return k;
}

} // namespace dhlab
