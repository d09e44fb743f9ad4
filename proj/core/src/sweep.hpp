#pragma once

// Internal quadrature engine: evaluates trigonometric sums
//   F(alpha) = sum_i w_i e(f_i alpha)
// on long runs of equispaced nodes via per-term phasor recurrences.  One
// complex multiply per term per node, no trig in the inner loop; blocks are
// re-synced from dd-reduced phases so rotation drift never accumulates past
// a block.  Block boundaries are fixed by index, so partial sums can be
// reduced in block order and the result is independent of the thread count.

#include <complex>
#include <cstdint>
#include <vector>

#include "dhlab/dd.hpp"

namespace dhlab::detail {

struct BankSpec {
    std::vector<DoubleDouble> freq; // f_i in cycles per unit alpha
    std::vector<double> weight;

    void add(DoubleDouble f, double w) {
        freq.push_back(f);
        weight.push_back(w);
    }
    std::size_t size() const { return freq.size(); }

    /// F(0) = sum of weights (the trivial bound).
    double weight_sum() const;
};

struct BankState {
    std::vector<double> zr, zi; // current w_i e(f_i alpha)
    std::vector<double> rr, ri; // rotation e(f_i h)
};

/// Build rotation phasors for step h.
void bank_set_step(const BankSpec& spec, BankState& state, DoubleDouble h);

/// Position the bank at alpha0 (dd-reduced trig per term).
void bank_sync(const BankSpec& spec, BankState& state, DoubleDouble alpha0);

/// Current value of F, then advance one step.
inline std::complex<double> bank_step(BankState& s) {
    double sr = 0.0, si = 0.0;
    const std::size_t n = s.zr.size();
    double* __restrict zr = s.zr.data();
    double* __restrict zi = s.zi.data();
    const double* __restrict rr = s.rr.data();
    const double* __restrict ri = s.ri.data();
    for (std::size_t i = 0; i < n; ++i) {
        double a = zr[i], b = zi[i];
        sr += a;
        si += b;
        double c = rr[i], d = ri[i];
        zr[i] = a * c - b * d;
        zi[i] = a * d + b * c;
    }
    return {sr, si};
}

constexpr std::uint64_t kSweepBlock = 1u << 13;

} // namespace dhlab::detail
