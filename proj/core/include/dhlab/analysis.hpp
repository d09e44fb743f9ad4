#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "dhlab/arcs.hpp"
#include "dhlab/primes.hpp"
#include "dhlab/problem.hpp"

namespace dhlab {

/// Sum over prime quadruples (p1 in the linear range, p_j^2 in the square
/// range) of log p1 log p2 log p3 log p4 * max(0, eta - |form|), computed by
/// exact enumeration: the three square loops are tiny, and for each triple
/// only p1 inside a window of length 2 eta / |lambda_1| can contribute.
/// This is the right-hand side of the flagship identity.
double weighted_solution_sum(const ProblemSpec& spec);

// ---------------------------------------------------------------------------
// integral_I

struct Region {
    enum class Kind { Major, Minor, TrivialTruncated, Interval };
    Kind kind = Kind::Interval;
    double a = 0.0, b = 0.0; // Interval bounds; TrivialTruncated stores A in b

    static Region major() { return {Kind::Major, 0, 0}; }
    static Region minor() { return {Kind::Minor, 0, 0}; }
    static Region trivial_truncated(double A) { return {Kind::TrivialTruncated, 0, A}; }
    static Region interval(double a, double b) { return {Kind::Interval, a, b}; }
};

struct QuadratureSpec {
    std::optional<double> step; // must not exceed the Nyquist-safe 1/(4B)
    int threads = 1;
};

enum class IntegrandKind { PrimeSums, SmoothApprox };

struct IntegralResult {
    double value = 0.0;         // real part
    double imag_residual = 0.0; // imaginary part (vanishes on symmetric regions)
    double abs_mass = 0.0;      // quadrature of |integrand|, the scale for residuals
    double step = 0.0;          // step actually used
    double quad_error = 0.0;    // declared rounding + phasor-drift budget
    std::uint64_t nodes = 0;
};

/// Total bandwidth B of the integrand: |l1| X + (|l2|+|l3|+|l4|) X + |varpi|
/// + eta.  Steps h <= 1/(4B) are alias-free for the prime-sum integrand.
double integrand_bandwidth(const ProblemSpec& spec);

/// Midpoint quadrature of S1(l1 a) S2(l2 a) S2(l3 a) S2(l4 a) K_eta(a)
/// e(varpi a) over the region (or of the smooth T-approximant product).
/// Throws BandwidthError if a requested step exceeds 1/(4B), RangeError on
/// malformed regions, DegenerateParams for Minor with an empty minor arc.
IntegralResult integral_I(const ProblemSpec& spec, const Region& region,
                          const QuadratureSpec& quad = {},
                          IntegrandKind integrand = IntegrandKind::PrimeSums);

// ---------------------------------------------------------------------------
// mean values

struct MeanValueL2 {
    double exact = 0.0;      // sum of log^2 p over the linear range
    double quadrature = 0.0; // Riemann mean of |S1|^2 on >= 2 floor(X) + 3 nodes
};
MeanValueL2 mean_value_L2(double X, double delta, const PrimeTable& table);

struct MeanValueL4 {
    double exact = 0.0;       // weighted count of p1^2+p2^2 = p3^2+p4^2
    double diagonal = 0.0;    // {p1,p2} = {p3,p4} multiset contribution
    double offdiagonal = 0.0; // exact - diagonal
};
MeanValueL4 mean_value_L4(double X, double delta, const PrimeTable& table);

/// Riemann mean of |S|^power over [0, 1) on `nodes` equispaced nodes
/// (exact for the trig polynomial once nodes exceed its degree).
double power_mean_quadrature(const SumSpec& spec, int power, std::uint64_t nodes,
                             const PrimeTable* table);

// ---------------------------------------------------------------------------
// Selberg integrals

enum class SelbergVariant { Linear, Sqrt };

/// J(X,h)  = integral_{dX}^{X} (theta(x+h) - theta(x) - h)^2 dx   (Linear)
/// J*(X,h) = same with theta(sqrt(.)) and sqrt(x+h) - sqrt(x)     (Sqrt)
/// computed exactly by an event-driven sweep over the breakpoints {p, p^2}
/// shifted by h, each piece integrated in closed form.
double selberg_J(double X, double h, double delta, SelbergVariant variant,
                 const PrimeTable& table);

// ---------------------------------------------------------------------------
// envelopes

/// (X / sqrt(q) + sqrt(X q) + X^{4/5}) log^4 X  with constant 1.
double vaughan_envelope(std::int64_t a, std::int64_t q, double X);
/// X^{1/2 + eps} (1/q + 1/X^{1/4} + q/X)^{1/4} with constant 1.
double ghosh_envelope(std::int64_t a, std::int64_t q, double X, double ghosh_eps);

// ---------------------------------------------------------------------------
// minor-arc scan

struct DichotomyViolation {
    double alpha = 0.0;
    std::int64_t q1 = 0, q2 = 0;
};

struct ScanSample {
    double alpha = 0.0;
    double V = 0.0;
    std::int64_t q1 = 0, q2 = 0;
    Arc label = Arc::Minor;
};

struct ScanReport {
    double sup_V = 0.0;
    double argmax_alpha = 0.0;
    std::uint64_t samples = 0;
    std::vector<DichotomyViolation> dichotomy_violations;
    double max_vaughan_ratio = 0.0; // sup |S1(l1 a)| / vaughan_envelope(a1,q1,X)
    double max_ghosh_ratio = 0.0;   // sup |S2(l2 a)| / ghosh_envelope(a2,q2,X,eps)
};

/// Sample alpha log-uniformly over (P/X, R); at each sample compute V,
/// Dirichlet approximations of lambda_i alpha with denominators up to X/Q,
/// and audit the dichotomy: both q_i <= Q (with a1 a2 != 0) is a violation
/// unless the small-combination inequality fails to reach the contradiction
/// threshold 1/(2q) at this scale.  Profile rows are appended to `profile`
/// when given.  Throws DegenerateParams when the minor arc is empty.
ScanReport minor_arc_scan(const ProblemSpec& spec, std::uint64_t samples,
                          std::uint64_t seed, int threads = 1,
                          std::vector<ScanSample>* profile = nullptr);

// ---------------------------------------------------------------------------
// kernel-weighted means over the minor arc

enum class PowerSpec { S1Squared, S2Fourth };

struct KernelMeanResult {
    double value = 0.0;
    double envelope = 0.0; // eta X log X  (S1Squared)  /  eta X log^2 X (S2Fourth)
    double ratio = 0.0;    // value / envelope, the fitted constant
    double step = 0.0;
    std::uint64_t nodes = 0;
};

/// Nyquist-safe quadrature of |S1(l1 a)|^2 K_eta (or |S2(l_j a)|^4 K_eta,
/// j = 2, 3 or 4) over the minor arc.
KernelMeanResult kernel_weighted_mean(const ProblemSpec& spec, PowerSpec power,
                                      int which = 2, int threads = 1);

// ---------------------------------------------------------------------------
// trivial-arc tail

struct TailBoundResult {
    double bound = 0.0;  // rigorous upper bound for |I(eta, varpi, |a| > A)|
    double A_term = 0.0; // mean_value_L2 * sum_{n >= |l1| A} (n-1)^{-2} / pi^2
    double B_term2 = 0.0, B_term3 = 0.0; // analogous L4 terms for lambda_2,3
    double sup_S2 = 0.0;                 // S2(0), the trivial sup
};

/// Explicit-constant version of the trivial-arc chain: Cauchy splits, the
/// kernel bound K_eta <= 1/(pi^2 alpha^2), unit-interval periodicity, and
/// the exact L2/L4 mean values.  Requires A >= R and |lambda_j| A >= 1.
TailBoundResult trivial_tail_bound(const ProblemSpec& spec, double A);

// ---------------------------------------------------------------------------
// major-arc main-term lower bound

struct J1Result {
    double mc_estimate = 0.0;        // stratified MC of the 4-dim integral over D
    double constructive_bound = 0.0; // certified box construction, 0 if none found
    bool certified = false;
    std::uint64_t samples = 0;
};

/// The main-term integral  over D = [dX, X] x [sqrt(dX), sqrt(X)]^3 of
/// max(0, eta - |l1 t1 + l2 t2^2 + l3 t3^2 + l4 t4^2 + varpi|), estimated by
/// deterministic stratified Monte Carlo, plus the exact interval-box lower
/// bound (free-variable tent argument).  Throws SignPatternError when all
/// lambdas share a sign.
J1Result major_lower_J1(const ProblemSpec& spec, std::uint64_t mc_samples,
                        std::uint64_t seed, int threads = 1);

} // namespace dhlab
