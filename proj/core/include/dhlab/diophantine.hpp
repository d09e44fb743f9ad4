#pragma once

#include <cstdint>
#include <vector>

#include "dhlab/dd.hpp"

namespace dhlab {

/// One rational approximation a/q to a real number, with the quality
/// certificate |q xi - a|.  gcd(|a|, q) = 1 and q >= 1 always hold for
/// values produced by this module.
struct Convergent {
    std::int64_t a = 0;
    std::int64_t q = 1;
    double quality = 0.0;
};

/// Continued-fraction prefix.  `exhausted` is set when the working precision
/// can no longer certify the next partial quotient; the convergents already
/// listed remain certified.
struct ConvergentList {
    std::vector<Convergent> convergents;
    bool exhausted = false;
};

/// First `count` convergents of xi by the standard recurrence
/// p_k = a_k p_{k-1} + p_{k-2}.  Inputs are double-doubles (>= 100 bits) so
/// irrational constants keep certified digits well past q ~ 1e7; plain
/// doubles are accepted and treated as exact binary rationals.  When xi lies
/// in (0, 1) the trivial approximation 0/1 is not counted.  Each returned
/// convergent satisfies |xi - a/q| <= 1/q^2.  Throws DomainError if xi is
/// not finite or count < 1.
ConvergentList continued_fraction(DoubleDouble xi, int count);
ConvergentList continued_fraction(double xi, int count);

/// Best rational approximation with denominator at most N:
/// returns (a, q) with 1 <= q <= N, gcd(|a|, q) = 1 and
/// |q alpha - a| <= 1/(N+1) (Dirichlet's guarantee; realized by the last
/// convergent with denominator <= N).  Throws DomainError if N < 1.
Convergent dirichlet_approx(DoubleDouble alpha, std::int64_t N);
Convergent dirichlet_approx(double alpha, std::int64_t N);

/// The scale ladder X = q^{9/5} attached to a convergent denominator.
double choose_X(std::int64_t q);

} // namespace dhlab
