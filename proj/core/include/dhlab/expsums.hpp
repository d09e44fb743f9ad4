#pragma once

#include <complex>
#include <cstdint>

#include "dhlab/dd.hpp"
#include "dhlab/primes.hpp"

namespace dhlab {

enum class SumKind { Linear, Square };

/// Shape of one exponential sum: S_1 / S_2 (weighted = log-weighted over
/// primes) or U_1 / U_2 (unweighted over all integers in range).
/// Linear sums run over delta X <= n <= X, Square sums over
/// delta X <= n^2 <= X; both memberships are decided by integer
/// comparisons against ceil(delta X) and floor(X).
struct SumSpec {
    SumKind kind = SumKind::Linear;
    bool weighted = true;
    double X = 0.0;
    double delta = 0.1;
};

/// Integer summation window [lo, hi] of a SumSpec (empty if lo > hi).
/// For Square kind the window is in the base variable n, not n^2.
struct SumWindow {
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
    bool empty() const { return lo > hi; }
};
SumWindow sum_window(const SumSpec& spec);

/// Evaluate sum of w(n) e(f(n) alpha) with f(n) = n or n^2, w = log p on
/// primes (weighted) or 1 on all integers (unweighted).  Phases are reduced
/// mod 1 in double-double before the trig call; accumulation is compensated.
/// `table` may be null for unweighted sums.  Throws CoverageError if a
/// weighted sum lacks table coverage, DomainError if delta is outside (0,1).
std::complex<double> prime_exp_sum(const SumSpec& spec, DoubleDouble alpha,
                                   const PrimeTable* table);
std::complex<double> prime_exp_sum(const SumSpec& spec, double alpha,
                                   const PrimeTable* table);

/// Smooth approximants:
///   Linear: T_1(alpha) = integral_{delta X}^{X} e(t alpha) dt, closed form.
///   Square: T_2(alpha) = integral_{sqrt(delta X)}^{sqrt(X)} e(t^2 alpha) dt,
///   Gauss-Legendre 16 per panel, panels split so the endpoint phase change
///   stays below pi/2; absolute error target 1e-10.
/// delta = 0 is accepted (the full interval [0, X]).
std::complex<double> smooth_approx(SumKind kind, double alpha, double X, double delta);

/// G(alpha) = sum_{1 <= n <= L} e(2^n alpha).  The phase 2^n alpha mod 1 is
/// produced by repeated doubling mod 1 (exact in dd), never by forming 2^n.
std::complex<double> powers_of_two_sum(DoubleDouble alpha, int L);
std::complex<double> powers_of_two_sum(double alpha, int L);

/// V(alpha) = min(|S_1(lambda1 alpha)|^{1/2}, |S_2(lambda2 alpha)|) at scale
/// (X, delta).  Needs a table covering the linear range and one covering the
/// square range (one table covering both is fine to pass twice).
double dichotomy_V(DoubleDouble alpha, DoubleDouble lambda1, DoubleDouble lambda2,
                   double X, double delta,
                   const PrimeTable& linear_table, const PrimeTable& square_table);

} // namespace dhlab
