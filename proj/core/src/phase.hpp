#pragma once

// Internal helpers: unit phasors e(x) = exp(2 pi i x) with the argument
// reduced mod 1 in double-double before any trig call.  For sums like
// e(p^2 alpha) with p^2 alpha ~ 1e12 a plain double product has no phase
// accuracy left; the dd product keeps ~1e-22 cycles.

#include <cmath>
#include <complex>
#include <numbers>

#include "dhlab/dd.hpp"

namespace dhlab::detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e(cycles) with dd-reduced argument.
inline std::complex<double> unit_phasor(DoubleDouble cycles) {
    double w = dd_frac_centered(cycles);
    return {std::cos(kTwoPi * w), std::sin(kTwoPi * w)};
}

/// e(freq * t), both factors carried in dd for the reduction.
inline std::complex<double> unit_phasor(DoubleDouble freq, DoubleDouble t) {
    return unit_phasor(dd_mul(freq, t));
}

} // namespace dhlab::detail
