#include "dhlab/expsums.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "dhlab/errors.hpp"
#include "phase.hpp"

namespace dhlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t isqrt_floor(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<__uint128_t>(r) * r > n) --r;
    while (static_cast<__uint128_t>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t isqrt_ceil(std::uint64_t n) {
    std::uint64_t r = isqrt_floor(n);
    return r * r == n ? r : r + 1;
}

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<std::array<double, 2>, 16> kGL16 = {{
    {-0.9894009349916499, 0.027152459411754037},
    {-0.9445750230732326, 0.062253523938647706},
    {-0.8656312023878318, 0.09515851168249259},
    {-0.755404408355003, 0.12462897125553403},
    {-0.6178762444026438, 0.14959598881657676},
    {-0.45801677765722737, 0.16915651939500262},
    {-0.2816035507792589, 0.1826034150449236},
    {-0.09501250983763745, 0.18945061045506859},
    {0.09501250983763745, 0.18945061045506859},
    {0.2816035507792589, 0.1826034150449236},
    {0.45801677765722737, 0.16915651939500262},
    {0.6178762444026438, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.8656312023878318, 0.09515851168249259},
    {0.9445750230732326, 0.062253523938647706},
    {0.9894009349916499, 0.027152459411754037},
}};

} // namespace

SumWindow sum_window(const SumSpec& spec) {
    if (!(spec.delta > 0.0 && spec.delta < 1.0))
        throw DomainError("sum_window: delta must lie in (0,1)");
    if (!(spec.X > 0.0)) throw DomainError("sum_window: X must be positive");
    double lo_real = spec.delta * spec.X;
    std::uint64_t lo_int = lo_real <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(lo_real));
    std::uint64_t hi_int = static_cast<std::uint64_t>(std::floor(spec.X));
    SumWindow w;
    if (spec.kind == SumKind::Linear) {
        w.lo = std::max<std::uint64_t>(lo_int, 1);
        w.hi = hi_int;
    } else {
        w.lo = isqrt_ceil(lo_int);
        w.hi = isqrt_floor(hi_int);
        w.lo = std::max<std::uint64_t>(w.lo, 1);
    }
    return w;
}

std::complex<double> prime_exp_sum(const SumSpec& spec, DoubleDouble alpha,
                                   const PrimeTable* table) {
    SumWindow w = sum_window(spec);
    if (w.empty()) return {0.0, 0.0};

    Kahan re, im;
    if (spec.weighted) {
        if (table == nullptr)
            throw CoverageError("prime_exp_sum: weighted sum needs a prime table");
        if (table->lo() > w.lo || table->hi() < w.hi)
            throw CoverageError("prime_exp_sum: table does not cover the summation window");
        std::size_t i = table->first_at_least(w.lo);
        std::size_t j = table->first_greater(w.hi);
        const auto& primes = table->primes();
        const auto& logs = table->logs();
        for (std::size_t k = i; k < j; ++k) {
            double p = static_cast<double>(primes[k]);
            double f = spec.kind == SumKind::Linear ? p : p * p;
            auto z = detail::unit_phasor(dd_mul(alpha, f));
            re.add(logs[k] * z.real());
            im.add(logs[k] * z.imag());
        }
    } else {
        for (std::uint64_t n = w.lo; n <= w.hi; ++n) {
            double nd = static_cast<double>(n);
            double f = spec.kind == SumKind::Linear ? nd : nd * nd;
            auto z = detail::unit_phasor(dd_mul(alpha, f));
            re.add(z.real());
            im.add(z.imag());
        }
    }
    return {re.sum, im.sum};
}

std::complex<double> prime_exp_sum(const SumSpec& spec, double alpha,
                                   const PrimeTable* table) {
    return prime_exp_sum(spec, DoubleDouble(alpha), table);
}

namespace {

// T_2 panel integral of e(t^2 alpha) over [t0, t1] by GL16.  t^2 is carried
// as an exact double-double so the phase survives t ~ 1e7.
std::complex<double> t2_panel(DoubleDouble alpha, double t0, double t1) {
    double c = 0.5 * (t0 + t1), r = 0.5 * (t1 - t0);
    Kahan re, im;
    for (const auto& [x, wgt] : kGL16) {
        double t = c + r * x;
        auto z = detail::unit_phasor(dd_mul(alpha, detail::two_prod(t, t)));
        re.add(wgt * z.real());
        im.add(wgt * z.imag());
    }
    return {r * re.sum, r * im.sum};
}

} // namespace

std::complex<double> smooth_approx(SumKind kind, double alpha, double X, double delta) {
    if (!(X > 0.0)) throw DomainError("smooth_approx: X must be positive");
    if (!(delta >= 0.0 && delta < 1.0))
        throw DomainError("smooth_approx: delta must lie in [0,1)");

    if (kind == SumKind::Linear) {
        double a = delta * X, b = X;
        if (alpha == 0.0) return {b - a, 0.0};
        // T_1 = e(a alpha + w/2) sin(pi w) / (pi alpha), w = (b-a) alpha.
        // sin(pi w) has period 2, so the parity of floor(w) must survive the
        // mod-1 reduction: sin(pi w) = (-1)^floor(w) sin(pi frac(w)).
        DoubleDouble a_alpha = dd_mul(DoubleDouble(alpha), a);
        DoubleDouble w_dd = dd_mul(DoubleDouble(alpha), b - a);
        DoubleDouble fl = dd_floor(w_dd);
        double frac = dd_sub(w_dd, fl).to_double();
        int parity = (static_cast<int>(std::fmod(fl.hi, 2.0)) +
                      static_cast<int>(std::fmod(fl.lo, 2.0))) & 1;
        double s = std::sin(kPi * frac);
        if (parity) s = -s;
        auto phase = detail::unit_phasor(dd_add(a_alpha, dd_mul(w_dd, 0.5)));
        double amp = s / (kPi * alpha);
        return phase * amp;
    }

    // Square: oscillatory panels with phase change <= pi/2 each.
    double ta = std::sqrt(delta * X), tb = std::sqrt(X);
    if (alpha == 0.0) return {tb - ta, 0.0};
    DoubleDouble alpha_dd(alpha);
    double step_sq = 0.25 / std::abs(alpha); // t_next^2 - t^2 per panel
    Kahan re, im;
    double t = ta;
    while (t < tb) {
        double t_next = std::sqrt(t * t + step_sq);
        if (t_next > tb) t_next = tb;
        if (t_next <= t) t_next = std::nextafter(t, tb); // pathological step underflow
        auto z = t2_panel(alpha_dd, t, t_next);
        re.add(z.real());
        im.add(z.imag());
        t = t_next;
    }
    return {re.sum, im.sum};
}

std::complex<double> powers_of_two_sum(DoubleDouble alpha, int L) {
    if (L < 1) throw DomainError("powers_of_two_sum: L must be >= 1");
    Kahan re, im;
    DoubleDouble x = dd_frac(DoubleDouble(2.0 * alpha.hi, 2.0 * alpha.lo));
    for (int n = 1; n <= L; ++n) {
        double w = x.to_double();
        if (w >= 0.5) w -= 1.0;
        re.add(std::cos(detail::kTwoPi * w));
        im.add(std::sin(detail::kTwoPi * w));
        x = dd_frac(DoubleDouble(2.0 * x.hi, 2.0 * x.lo)); // doubling mod 1, exact
    }
    return {re.sum, im.sum};
}

std::complex<double> powers_of_two_sum(double alpha, int L) {
    return powers_of_two_sum(DoubleDouble(alpha), L);
}

double dichotomy_V(DoubleDouble alpha, DoubleDouble lambda1, DoubleDouble lambda2,
                   double X, double delta,
                   const PrimeTable& linear_table, const PrimeTable& square_table) {
    SumSpec s1{SumKind::Linear, true, X, delta};
    SumSpec s2{SumKind::Square, true, X, delta};
    auto v1 = prime_exp_sum(s1, dd_mul(lambda1, alpha), &linear_table);
    auto v2 = prime_exp_sum(s2, dd_mul(lambda2, alpha), &square_table);
    return std::min(std::sqrt(std::abs(v1)), std::abs(v2));
}

} // namespace dhlab
