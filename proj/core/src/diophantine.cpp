#include "dhlab/diophantine.hpp"

#include <cmath>
#include <limits>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

// Numerators and denominators are kept below 2^52 so their double images
// stay exact inside the dd quality computation.  Partial quotients larger
// than kMaxQuotient cannot be folded in; the residual is then below
// certification anyway.
constexpr double kMaxQuotient = 4.5e15;
constexpr std::int64_t kMaxDenominator = std::int64_t(1) << 52;

bool mul_add_fits(std::int64_t a, std::int64_t x, std::int64_t y, std::int64_t* out) {
    __int128 v = static_cast<__int128>(a) * x + y;
    if (v > kMaxDenominator || v < -static_cast<__int128>(kMaxDenominator)) return false;
    *out = static_cast<std::int64_t>(v);
    return true;
}

double quality_of(DoubleDouble xi, std::int64_t a, std::int64_t q) {
    // q xi - a in dd; both integers are exact in dd up to 2^106.
    DoubleDouble v = dd_sub(dd_mul(xi, static_cast<double>(q)), DoubleDouble(static_cast<double>(a)));
    return std::abs(v.to_double());
}

// Full expansion including a leading 0/1 convergent; the public wrapper
// filters it.  Stops after max_terms convergents, on exact rational
// termination, or when `err` (an absolute bound on the residual) makes the
// next digit uncertifiable.
ConvergentList expand(DoubleDouble xi, int max_terms, std::int64_t stop_denominator) {
    ConvergentList out;
    DoubleDouble x = xi;
    double err = (std::abs(xi.to_double()) + 1.0) * 1e-31;

    std::int64_t p_prev = 1, p_prev2 = 0; // p_{k-1}, p_{k-2}
    std::int64_t q_prev = 0, q_prev2 = 1;

    while (static_cast<int>(out.convergents.size()) < max_terms) {
        DoubleDouble fl = dd_floor(x);
        if (std::abs(fl.to_double()) > kMaxQuotient) {
            out.exhausted = true;
            break;
        }
        std::int64_t ak = static_cast<std::int64_t>(fl.to_double());
        DoubleDouble r = dd_sub(x, fl);
        double rv = r.to_double();

        // A residual of exactly zero is a genuine rational termination (under
        // the contract that inputs are exactly-held dd values); otherwise the
        // digit is trusted only when the residual clears the error bound on
        // both sides of the integer lattice.
        bool exact_term = rv == 0.0 && r.lo == 0.0;
        bool digit_certain = out.convergents.empty() || exact_term ||
                             (rv > err && 1.0 - rv > err);
        if (!digit_certain) {
            out.exhausted = true;
            break;
        }

        std::int64_t pk, qk;
        if (!mul_add_fits(ak, p_prev, p_prev2, &pk) ||
            !mul_add_fits(ak, q_prev, q_prev2, &qk)) {
            out.exhausted = true;
            break;
        }
        out.convergents.push_back({pk, qk, quality_of(xi, pk, qk)});
        p_prev2 = p_prev; p_prev = pk;
        q_prev2 = q_prev; q_prev = qk;

        if (exact_term) break; // rational: expansion ends here
        if (stop_denominator > 0 && qk > stop_denominator) break;
        if (rv <= err) { // residual below certification
            out.exhausted = true;
            break;
        }
        // x <- 1/r; the residual error grows like err / r^2 plus dd rounding.
        DoubleDouble inv = dd_div(DoubleDouble(1.0), r);
        err = err / (rv * rv) + std::abs(inv.to_double()) * 1e-31;
        x = inv;
    }
    return out;
}

} // namespace

ConvergentList continued_fraction(DoubleDouble xi, int count) {
    if (!std::isfinite(xi.hi) || !std::isfinite(xi.lo))
        throw DomainError("continued_fraction: xi must be finite");
    if (count < 1) throw DomainError("continued_fraction: count must be >= 1");

    // Ask for one extra term in case the leading 0/1 gets dropped.
    ConvergentList raw = expand(xi, count + 1, 0);
    ConvergentList out;
    out.exhausted = raw.exhausted;
    for (const Convergent& c : raw.convergents) {
        if (out.convergents.empty() && c.a == 0 && c.q == 1) continue;
        if (static_cast<int>(out.convergents.size()) == count) break;
        out.convergents.push_back(c);
    }
    return out;
}

ConvergentList continued_fraction(double xi, int count) {
    return continued_fraction(DoubleDouble(xi), count);
}

Convergent dirichlet_approx(DoubleDouble alpha, std::int64_t N) {
    if (N < 1) throw DomainError("dirichlet_approx: N must be >= 1");
    ConvergentList list = expand(alpha, 128, N);
    if (list.convergents.empty())
        throw DomainError("dirichlet_approx: |alpha| too large for 64-bit numerators");
    Convergent best = list.convergents.front();
    for (const Convergent& c : list.convergents) {
        if (c.q <= N) best = c;
    }
    return best;
}

Convergent dirichlet_approx(double alpha, std::int64_t N) {
    return dirichlet_approx(DoubleDouble(alpha), N);
}

double choose_X(std::int64_t q) {
    if (q < 1) throw DomainError("choose_X: q must be >= 1");
    return std::pow(static_cast<double>(q), 9.0 / 5.0);
}

} // namespace dhlab
