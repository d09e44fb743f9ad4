#include "dhlab/kernel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "dhlab/dd.hpp"
#include "dhlab/errors.hpp"
#include "phase.hpp"

namespace dhlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double fejer(double eta, double alpha) {
    if (!(eta > 0.0)) throw DomainError("fejer: eta must be positive");
    double x = kPi * eta * alpha;
    if (std::abs(x) < 1e-4) {
        // sinc series keeps the removable singularity at alpha = 0 stable:
        // K = eta^2 sinc^2(pi eta alpha), sinc(x) = 1 - x^2/6 + x^4/120.
        double x2 = x * x;
        double sinc = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
        return eta * eta * sinc * sinc;
    }
    double s = std::sin(x) / (kPi * alpha);
    return s * s;
}

double fejer_hat(double eta, double theta) {
    return std::max(0.0, eta - std::abs(theta));
}

double fejer_tail_bound(double /*eta*/, double A) {
    if (!(A > 0.0)) throw DomainError("fejer_tail_bound: A must be positive");
    return 2.0 / (kPi * kPi * A);
}

double fejer_transform_quadrature(double eta, double theta, double A) {
    if (!(eta > 0.0)) throw DomainError("fejer_transform_quadrature: eta must be positive");
    if (!(A > 0.0)) throw DomainError("fejer_transform_quadrature: A must be positive");
    theta = std::abs(theta);

    // The integrand's transform is the tent fejer_hat(eta, . - theta),
    // supported in [theta - eta, theta + eta]; any step with 1/h beyond
    // eta + theta is alias-free.  Factor 2 of headroom.
    double h = 1.0 / (2.0 * (eta + theta) + eta);
    std::uint64_t half_nodes = static_cast<std::uint64_t>(std::ceil(A / h));
    h = A / static_cast<double>(half_nodes);

    // Even integrand: 2 * sum over midpoints in (0, A) of K(a) cos(2 pi theta a).
    // cos evaluated by phasor recurrence, re-synced in blocks so rotation
    // drift stays below rounding noise.
    constexpr std::uint64_t kBlock = 1u << 13;
    double sum = 0.0, comp = 0.0;
    const DoubleDouble dd_h(h);
    const std::complex<double> rot_eta = detail::unit_phasor(dd_mul(DoubleDouble(eta), dd_h));
    const std::complex<double> rot_theta = detail::unit_phasor(dd_mul(DoubleDouble(theta), dd_h));
    for (std::uint64_t b0 = 0; b0 < half_nodes; b0 += kBlock) {
        std::uint64_t b1 = std::min(half_nodes, b0 + kBlock);
        DoubleDouble a0 = dd_mul(dd_h, static_cast<double>(b0) + 0.5);
        std::complex<double> ze = detail::unit_phasor(dd_mul(DoubleDouble(eta), a0));
        std::complex<double> zt = detail::unit_phasor(dd_mul(DoubleDouble(theta), a0));
        for (std::uint64_t m = b0; m < b1; ++m) {
            double a = (static_cast<double>(m) + 0.5) * h;
            double x = kPi * eta * a;
            double k;
            if (std::abs(x) < 1e-3) {
                k = fejer(eta, a);
            } else {
                // K = (1 - cos(2 pi eta a)) / (2 pi^2 a^2)
                k = (1.0 - ze.real()) / (2.0 * kPi * kPi * a * a);
            }
            double term = k * zt.real();
            double y = term - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            ze *= rot_eta;
            zt *= rot_theta;
        }
    }
    return 2.0 * h * sum;
}

} // namespace dhlab
