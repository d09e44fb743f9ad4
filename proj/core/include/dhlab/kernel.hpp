#pragma once

namespace dhlab {

/// Fejer-type kernel K_eta(alpha) = (sin(pi eta alpha) / (pi alpha))^2,
/// continuous at 0 with K_eta(0) = eta^2.  Throws DomainError if eta <= 0.
double fejer(double eta, double alpha);

/// Fourier transform of K_eta: the tent max(0, eta - |theta|).
double fejer_hat(double eta, double theta);

/// Rigorous upper bound 2 / (pi^2 A) for the tail integral of K_eta over
/// |alpha| > A (uses K_eta(alpha) <= 1/(pi^2 alpha^2)).  Throws DomainError
/// if A <= 0.
double fejer_tail_bound(double eta, double A);

/// Midpoint-rule quadrature of the truncated transform
///   integral_{-A}^{A} K_eta(alpha) e(theta alpha) d alpha
/// (real part; the imaginary part vanishes by symmetry).  The step is chosen
/// below the band limit of the integrand, so the result differs from the
/// tent fejer_hat(eta, theta) by at most fejer_tail_bound(eta, A) plus
/// rounding.  Used by the Fourier-pair verification.
double fejer_transform_quadrature(double eta, double theta, double A);

} // namespace dhlab
