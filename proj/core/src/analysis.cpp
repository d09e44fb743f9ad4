#include "dhlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "dhlab/errors.hpp"
#include "dhlab/expsums.hpp"
#include "dhlab/kernel.hpp"
#include "dhlab/rng.hpp"
#include "dhlab/threads.hpp"
#include "phase.hpp"
#include "sweep.hpp"

namespace dhlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Indices of a problem's square-range primes inside its square table.
struct SquareRange {
    std::size_t begin = 0, end = 0;
};

SquareRange square_range(const ProblemSpec& spec) {
    SumWindow w = spec.square_window();
    if (w.empty()) return {};
    const PrimeTable& t = spec.square_table;
    return {t.first_at_least(w.lo), t.first_greater(w.hi)};
}

SquareRange linear_range(const ProblemSpec& spec) {
    SumWindow w = spec.linear_window();
    if (w.empty()) return {};
    const PrimeTable& t = spec.linear_table;
    return {t.first_at_least(w.lo), t.first_greater(w.hi)};
}

} // namespace

double weighted_solution_sum(const ProblemSpec& spec) {
    SquareRange sq = square_range(spec);
    SquareRange ln = linear_range(spec);
    if (sq.begin >= sq.end || ln.begin >= ln.end) return 0.0;

    const auto& sp = spec.square_table.primes();
    const auto& sl = spec.square_table.logs();
    const auto& lp = spec.linear_table.primes();
    const auto& ll = spec.linear_table.logs();

    const double eta = spec.eta();
    const double l1 = spec.lambdas[0].to_double();
    const SumWindow lw = spec.linear_window();

    Kahan acc;
    for (std::size_t i2 = sq.begin; i2 < sq.end; ++i2) {
        double p2 = static_cast<double>(sp[i2]);
        DoubleDouble c2 = dd_add(dd_mul(spec.lambdas[1], p2 * p2), spec.varpi);
        for (std::size_t i3 = sq.begin; i3 < sq.end; ++i3) {
            double p3 = static_cast<double>(sp[i3]);
            DoubleDouble c3 = dd_add(c2, dd_mul(spec.lambdas[2], p3 * p3));
            for (std::size_t i4 = sq.begin; i4 < sq.end; ++i4) {
                double p4 = static_cast<double>(sp[i4]);
                DoubleDouble c = dd_add(c3, dd_mul(spec.lambdas[3], p4 * p4));
                // p1 window: |l1 p1 + c| < eta, widened one integer each way;
                // the dd test below is the actual membership decision.
                double cv = c.to_double();
                double e0 = (-eta - cv) / l1, e1 = (eta - cv) / l1;
                if (e0 > e1) std::swap(e0, e1);
                double plo_d = std::max(e0 - 1.0, static_cast<double>(lw.lo));
                double phi_d = std::min(e1 + 1.0, static_cast<double>(lw.hi));
                if (plo_d > phi_d) continue;
                std::uint64_t plo = static_cast<std::uint64_t>(plo_d);
                std::uint64_t phi = static_cast<std::uint64_t>(phi_d);
                std::size_t k0 = spec.linear_table.first_at_least(plo);
                std::size_t k1 = spec.linear_table.first_greater(phi);
                double w234 = sl[i2] * sl[i3] * sl[i4];
                for (std::size_t k = k0; k < k1; ++k) {
                    DoubleDouble form =
                        dd_add(dd_mul(spec.lambdas[0], static_cast<double>(lp[k])), c);
                    double hat = eta - std::abs(form.to_double());
                    if (hat > 0.0) acc.add(ll[k] * w234 * hat);
                }
            }
        }
    }
    return acc.sum;
}

// ---------------------------------------------------------------------------
// integral_I

double integrand_bandwidth(const ProblemSpec& spec) {
    double X = spec.X();
    double B = std::abs(spec.lambdas[0].to_double()) * X;
    for (int j = 1; j < 4; ++j) B += std::abs(spec.lambdas[j].to_double()) * X;
    return B + std::abs(spec.varpi.to_double()) + spec.eta();
}

namespace {

struct Interval {
    double a, b;
};

std::vector<Interval> region_intervals(const ProblemSpec& spec, const Region& region) {
    const ArcParams& p = spec.params;
    switch (region.kind) {
        case Region::Kind::Major:
            return {{-p.major_edge(), p.major_edge()}};
        case Region::Kind::Minor:
            if (p.empty_minor)
                throw DegenerateParams("integral_I: minor arc is empty (P/X >= R)");
            return {{-p.R, -p.major_edge()}, {p.major_edge(), p.R}};
        case Region::Kind::TrivialTruncated: {
            double A = region.b;
            if (A < p.R)
                throw RangeError("integral_I: trivial-arc truncation A must be >= R");
            if (A == p.R) return {};
            return {{-A, -p.R}, {p.R, A}};
        }
        case Region::Kind::Interval:
        default:
            if (region.a > region.b)
                throw RangeError("integral_I: interval with a > b");
            if (region.a == region.b) return {};
            return {{region.a, region.b}};
    }
}

struct ProductBanks {
    detail::BankSpec factors[4];
    detail::BankSpec eta_osc;
    detail::BankSpec varpi_osc;
};

ProductBanks build_banks(const ProblemSpec& spec) {
    ProductBanks pb;
    SquareRange ln = linear_range(spec);
    const auto& lp = spec.linear_table.primes();
    const auto& ll = spec.linear_table.logs();
    for (std::size_t k = ln.begin; k < ln.end; ++k)
        pb.factors[0].add(dd_mul(spec.lambdas[0], static_cast<double>(lp[k])), ll[k]);
    SquareRange sq = square_range(spec);
    const auto& sp = spec.square_table.primes();
    const auto& sl = spec.square_table.logs();
    for (int j = 1; j < 4; ++j)
        for (std::size_t k = sq.begin; k < sq.end; ++k) {
            double p = static_cast<double>(sp[k]);
            pb.factors[j].add(dd_mul(spec.lambdas[j], p * p), sl[k]);
        }
    pb.eta_osc.add(DoubleDouble(spec.eta()), 1.0);
    pb.varpi_osc.add(spec.varpi, 1.0);
    return pb;
}

} // namespace

IntegralResult integral_I(const ProblemSpec& spec, const Region& region,
                          const QuadratureSpec& quad, IntegrandKind integrand) {
    const double B = integrand_bandwidth(spec);
    const double h_safe = 1.0 / (4.0 * B);
    double h = h_safe;
    if (quad.step) {
        if (*quad.step > h_safe * (1.0 + 1e-12))
            throw BandwidthError("integral_I: requested step exceeds the Nyquist-safe 1/(4B)");
        if (!(*quad.step > 0.0)) throw DomainError("integral_I: step must be positive");
        h = *quad.step;
    }

    std::vector<Interval> intervals = region_intervals(spec, region);
    IntegralResult res;
    res.step = h;
    if (intervals.empty()) return res;

    const double eta = spec.eta();
    const bool prime_sums = integrand == IntegrandKind::PrimeSums;
    ProductBanks banks;
    if (prime_sums) banks = build_banks(spec);

    Kahan total_re, total_im, total_abs;
    for (const Interval& iv : intervals) {
        double len = iv.b - iv.a;
        std::uint64_t M = static_cast<std::uint64_t>(std::ceil(len / h));
        if (M == 0) M = 1;
        if (M > (std::uint64_t(1) << 33))
            throw RangeError("integral_I: region needs more than 2^33 nodes at this step");
        double h_eff = len / static_cast<double>(M);
        DoubleDouble h_dd(h_eff);

        if (prime_sums) {
            // Rotation phasors for this interval's step, shared by all blocks.
            detail::BankState proto[4], proto_eta, proto_varpi;
            for (int j = 0; j < 4; ++j) bank_set_step(banks.factors[j], proto[j], h_dd);
            bank_set_step(banks.eta_osc, proto_eta, h_dd);
            bank_set_step(banks.varpi_osc, proto_varpi, h_dd);

            std::uint64_t n_blocks = (M + detail::kSweepBlock - 1) / detail::kSweepBlock;
            std::vector<double> block_re(n_blocks), block_im(n_blocks), block_abs(n_blocks);

            parallel_blocks(n_blocks, quad.threads, [&](std::size_t blk) {
                std::uint64_t m0 = blk * detail::kSweepBlock;
                std::uint64_t m1 = std::min<std::uint64_t>(M, m0 + detail::kSweepBlock);
                detail::BankState st[4] = {proto[0], proto[1], proto[2], proto[3]};
                detail::BankState st_eta = proto_eta, st_varpi = proto_varpi;
                DoubleDouble alpha0 =
                    dd_add(DoubleDouble(iv.a), dd_mul(h_dd, static_cast<double>(m0) + 0.5));
                for (int j = 0; j < 4; ++j) bank_sync(banks.factors[j], st[j], alpha0);
                bank_sync(banks.eta_osc, st_eta, alpha0);
                bank_sync(banks.varpi_osc, st_varpi, alpha0);

                Kahan bre, bim, babs;
                for (std::uint64_t m = m0; m < m1; ++m) {
                    double alpha = iv.a + (static_cast<double>(m) + 0.5) * h_eff;
                    std::complex<double> z = bank_step(st[0]);
                    z *= bank_step(st[1]);
                    z *= bank_step(st[2]);
                    z *= bank_step(st[3]);
                    std::complex<double> zeta = bank_step(st_eta);
                    std::complex<double> zvarpi = bank_step(st_varpi);
                    double K;
                    if (std::abs(kPi * eta * alpha) < 1e-3) {
                        K = fejer(eta, alpha);
                    } else {
                        K = (1.0 - zeta.real()) / (2.0 * kPi * kPi * alpha * alpha);
                    }
                    z *= zvarpi * K;
                    bre.add(z.real());
                    bim.add(z.imag());
                    babs.add(std::abs(z));
                }
                block_re[blk] = bre.sum;
                block_im[blk] = bim.sum;
                block_abs[blk] = babs.sum;
            });
            for (std::uint64_t b = 0; b < n_blocks; ++b) {
                total_re.add(h_eff * block_re[b]);
                total_im.add(h_eff * block_im[b]);
                total_abs.add(h_eff * block_abs[b]);
            }
        } else {
            // Smooth T-approximant product, evaluated directly per node (the
            // major arc is short; no phasor machinery needed).
            Kahan bre, bim, babs;
            for (std::uint64_t m = 0; m < M; ++m) {
                double alpha = iv.a + (static_cast<double>(m) + 0.5) * h_eff;
                std::complex<double> z =
                    smooth_approx(SumKind::Linear, spec.lambdas[0].to_double() * alpha,
                                  spec.X(), spec.delta());
                for (int j = 1; j < 4; ++j)
                    z *= smooth_approx(SumKind::Square, spec.lambdas[j].to_double() * alpha,
                                       spec.X(), spec.delta());
                z *= detail::unit_phasor(dd_mul(spec.varpi, DoubleDouble(alpha)));
                z *= fejer(eta, alpha);
                bre.add(z.real());
                bim.add(z.imag());
                babs.add(std::abs(z));
            }
            total_re.add(h_eff * bre.sum);
            total_im.add(h_eff * bim.sum);
            total_abs.add(h_eff * babs.sum);
        }
        res.nodes += M;
    }

    res.value = total_re.sum;
    res.imag_residual = total_im.sum;
    res.abs_mass = total_abs.sum;
    // Rounding plus per-block phasor drift, proportional to the L1 mass.
    res.quad_error = (static_cast<double>(detail::kSweepBlock) + 64.0) *
                     std::numeric_limits<double>::epsilon() * total_abs.sum;
    return res;
}

// ---------------------------------------------------------------------------
// mean values

double power_mean_quadrature(const SumSpec& spec, int power, std::uint64_t nodes,
                             const PrimeTable* table) {
    if (power != 2 && power != 4)
        throw DomainError("power_mean_quadrature: power must be 2 or 4");
    if (nodes == 0) throw DomainError("power_mean_quadrature: need nodes >= 1");

    SumWindow w = sum_window(spec);
    detail::BankSpec bank;
    if (!w.empty()) {
        if (spec.weighted) {
            if (table == nullptr || table->lo() > w.lo || table->hi() < w.hi)
                throw CoverageError("power_mean_quadrature: table does not cover the window");
            std::size_t i = table->first_at_least(w.lo);
            std::size_t j = table->first_greater(w.hi);
            for (std::size_t k = i; k < j; ++k) {
                double p = static_cast<double>(table->primes()[k]);
                double f = spec.kind == SumKind::Linear ? p : p * p;
                bank.add(DoubleDouble(f), table->logs()[k]);
            }
        } else {
            for (std::uint64_t n = w.lo; n <= w.hi; ++n) {
                double nd = static_cast<double>(n);
                bank.add(DoubleDouble(spec.kind == SumKind::Linear ? nd : nd * nd), 1.0);
            }
        }
    }

    DoubleDouble h = dd_from_ratio(1.0, static_cast<double>(nodes));
    detail::BankState proto;
    bank_set_step(bank, proto, h);

    std::uint64_t n_blocks = (nodes + detail::kSweepBlock - 1) / detail::kSweepBlock;
    std::vector<double> partial(n_blocks);
    for (std::uint64_t blk = 0; blk < n_blocks; ++blk) {
        std::uint64_t m0 = blk * detail::kSweepBlock;
        std::uint64_t m1 = std::min(nodes, m0 + detail::kSweepBlock);
        detail::BankState st = proto;
        bank_sync(bank, st, dd_mul(h, static_cast<double>(m0)));
        Kahan acc;
        for (std::uint64_t m = m0; m < m1; ++m) {
            std::complex<double> z = bank_step(st);
            double a2 = z.real() * z.real() + z.imag() * z.imag();
            acc.add(power == 2 ? a2 : a2 * a2);
        }
        partial[blk] = acc.sum;
    }
    Kahan total;
    for (double p : partial) total.add(p);
    return total.sum / static_cast<double>(nodes);
}

MeanValueL2 mean_value_L2(double X, double delta, const PrimeTable& table) {
    SumSpec spec{SumKind::Linear, true, X, delta};
    SumWindow w = sum_window(spec);
    MeanValueL2 out;
    if (w.empty()) return out;
    if (table.lo() > w.lo || table.hi() < w.hi)
        throw CoverageError("mean_value_L2: table does not cover the linear window");
    std::size_t i = table.first_at_least(w.lo);
    std::size_t j = table.first_greater(w.hi);
    Kahan exact;
    for (std::size_t k = i; k < j; ++k) exact.add(table.logs()[k] * table.logs()[k]);
    out.exact = exact.sum;

    std::uint64_t nodes = 2 * static_cast<std::uint64_t>(std::floor(X)) + 3;
    out.quadrature = power_mean_quadrature(spec, 2, nodes, &table);
    return out;
}

MeanValueL4 mean_value_L4(double X, double delta, const PrimeTable& table) {
    SumSpec spec{SumKind::Square, true, X, delta};
    SumWindow w = sum_window(spec);
    MeanValueL4 out;
    if (w.empty()) return out;
    if (table.lo() > w.lo || table.hi() < w.hi)
        throw CoverageError("mean_value_L4: table does not cover the square window");
    std::size_t i = table.first_at_least(w.lo);
    std::size_t j = table.first_greater(w.hi);

    // Hash ordered pair sums p_a^2 + p_b^2 -> accumulated log p_a log p_b;
    // the integral is the sum of squared bucket weights.
    std::map<std::uint64_t, double> buckets;
    Kahan sum_l2, sum_l4;
    for (std::size_t a = i; a < j; ++a) {
        std::uint64_t pa = table.primes()[a];
        double la = table.logs()[a];
        sum_l2.add(la * la);
        sum_l4.add(la * la * la * la);
        for (std::size_t b = i; b < j; ++b) {
            std::uint64_t pb = table.primes()[b];
            buckets[pa * pa + pb * pb] += la * table.logs()[b];
        }
    }
    Kahan exact;
    for (const auto& [key, wsum] : buckets) exact.add(wsum * wsum);
    out.exact = exact.sum;
    out.diagonal = 2.0 * sum_l2.sum * sum_l2.sum - sum_l4.sum;
    out.offdiagonal = out.exact - out.diagonal;
    return out;
}

// ---------------------------------------------------------------------------
// Selberg integrals

namespace {

// integral of sqrt(x (x + h)) dx via u = x + h/2, a = h/2:
// u/2 sqrt(u^2 - a^2) - a^2/2 log(u + sqrt(u^2 - a^2)).
double sqrt_prod_antideriv(double x, double h) {
    double u = x + 0.5 * h, a = 0.5 * h;
    double s = std::sqrt(std::max(0.0, u * u - a * a));
    return 0.5 * u * s - 0.5 * a * a * std::log(u + s);
}

// antiderivative of (c - (sqrt(x+h) - sqrt(x)))^2
//  = c^2 x - (4c/3)((x+h)^{3/2} - x^{3/2}) + x^2 + h x - 2 * sqrt_prod.
double jstar_antideriv(double x, double h, double c) {
    double t0 = std::pow(x, 1.5), t1 = std::pow(x + h, 1.5);
    return c * c * x - (4.0 * c / 3.0) * (t1 - t0) + x * x + h * x -
           2.0 * sqrt_prod_antideriv(x, h);
}

} // namespace

double selberg_J(double X, double h, double delta, SelbergVariant variant,
                 const PrimeTable& table) {
    if (!(h > 0.0)) throw DomainError("selberg_J: h must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("selberg_J: delta in (0,1)");
    if (!(X > 0.0)) throw DomainError("selberg_J: X must be positive");

    const double a = delta * X, b = X;
    const bool linear = variant == SelbergVariant::Linear;

    // Coverage: primes (linear) in (a, b + h], or (sqrt variant) in
    // (sqrt(a), sqrt(b + h)].
    double need_lo = linear ? a : std::sqrt(a);
    double need_hi = linear ? b + h : std::sqrt(b + h);
    if (static_cast<double>(table.lo()) > need_lo + 1.0 ||
        static_cast<double>(table.hi()) < need_hi)
        throw CoverageError("selberg_J: table does not cover the theta window");

    // Breakpoints inside (a, b): where a prime (or prime square) enters or
    // leaves the sliding window (x, x + h].
    std::vector<double> cuts;
    cuts.push_back(a);
    cuts.push_back(b);
    std::size_t i0 = table.first_at_least(static_cast<std::uint64_t>(std::ceil(need_lo)));
    for (std::size_t k = i0; k < table.size(); ++k) {
        double p = static_cast<double>(table.primes()[k]);
        double ev = linear ? p : p * p;
        if (ev - h > a && ev - h < b) cuts.push_back(ev - h);
        if (ev > a && ev < b) cuts.push_back(ev);
        if (ev - h >= b) break;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Kahan acc;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double x0 = cuts[k], x1 = cuts[k + 1];
        if (x1 <= x0) continue;
        double mid = 0.5 * (x0 + x1);
        double c; // theta-window mass on this piece
        if (linear) {
            std::uint64_t lo = static_cast<std::uint64_t>(std::floor(mid)) + 1;
            std::uint64_t hi = static_cast<std::uint64_t>(std::floor(mid + h));
            c = table.log_sum(lo, hi);
            double d = c - h;
            acc.add(d * d * (x1 - x0));
        } else {
            std::uint64_t lo = static_cast<std::uint64_t>(std::floor(std::sqrt(mid))) + 1;
            std::uint64_t hi = static_cast<std::uint64_t>(std::floor(std::sqrt(mid + h)));
            c = table.log_sum(lo, hi);
            acc.add(jstar_antideriv(x1, h, c) - jstar_antideriv(x0, h, c));
        }
    }
    return acc.sum;
}

// ---------------------------------------------------------------------------
// envelopes

double vaughan_envelope(std::int64_t, std::int64_t q, double X) {
    if (q < 1) throw DomainError("vaughan_envelope: q must be >= 1");
    double lx = std::log(X);
    double qd = static_cast<double>(q);
    return (X / std::sqrt(qd) + std::sqrt(X * qd) + std::pow(X, 0.8)) * lx * lx * lx * lx;
}

double ghosh_envelope(std::int64_t, std::int64_t q, double X, double ghosh_eps) {
    if (q < 1) throw DomainError("ghosh_envelope: q must be >= 1");
    double qd = static_cast<double>(q);
    double inner = 1.0 / qd + 1.0 / std::pow(X, 0.25) + qd / X;
    return std::pow(X, 0.5 + ghosh_eps) * std::pow(inner, 0.25);
}

// ---------------------------------------------------------------------------
// kernel-weighted means over the minor arc

KernelMeanResult kernel_weighted_mean(const ProblemSpec& spec, PowerSpec power,
                                      int which, int threads) {
    const ArcParams& p = spec.params;
    if (p.empty_minor)
        throw DegenerateParams("kernel_weighted_mean: minor arc is empty");
    if (power == PowerSpec::S2Fourth && (which < 2 || which > 4))
        throw DomainError("kernel_weighted_mean: S2 factor index must be 2, 3 or 4");

    const double X = spec.X(), eta = spec.eta();
    detail::BankSpec bank;
    double B;
    if (power == PowerSpec::S1Squared) {
        SquareRange r = linear_range(spec);
        for (std::size_t k = r.begin; k < r.end; ++k)
            bank.add(dd_mul(spec.lambdas[0], static_cast<double>(spec.linear_table.primes()[k])),
                     spec.linear_table.logs()[k]);
        B = 2.0 * std::abs(spec.lambdas[0].to_double()) * X + eta;
    } else {
        SquareRange r = square_range(spec);
        const DoubleDouble lam = spec.lambdas[which - 1];
        for (std::size_t k = r.begin; k < r.end; ++k) {
            double q = static_cast<double>(spec.square_table.primes()[k]);
            bank.add(dd_mul(lam, q * q), spec.square_table.logs()[k]);
        }
        B = 4.0 * std::abs(lam.to_double()) * X + eta;
    }

    const double h_safe = 1.0 / (4.0 * B);
    KernelMeanResult out;
    out.step = h_safe;
    double lx = std::log(X);
    out.envelope = power == PowerSpec::S1Squared ? eta * X * lx : eta * X * lx * lx;

    Interval pieces[2] = {{-p.R, -p.major_edge()}, {p.major_edge(), p.R}};
    Kahan total;
    for (const Interval& iv : pieces) {
        double len = iv.b - iv.a;
        std::uint64_t M = static_cast<std::uint64_t>(std::ceil(len / h_safe));
        if (M == 0) continue;
        double h_eff = len / static_cast<double>(M);
        DoubleDouble h_dd(h_eff);
        detail::BankState proto, proto_eta;
        detail::BankSpec eta_osc;
        eta_osc.add(DoubleDouble(eta), 1.0);
        bank_set_step(bank, proto, h_dd);
        bank_set_step(eta_osc, proto_eta, h_dd);

        std::uint64_t n_blocks = (M + detail::kSweepBlock - 1) / detail::kSweepBlock;
        std::vector<double> partial(n_blocks);
        parallel_blocks(n_blocks, threads, [&](std::size_t blk) {
            std::uint64_t m0 = blk * detail::kSweepBlock;
            std::uint64_t m1 = std::min<std::uint64_t>(M, m0 + detail::kSweepBlock);
            detail::BankState st = proto, st_eta = proto_eta;
            DoubleDouble alpha0 =
                dd_add(DoubleDouble(iv.a), dd_mul(h_dd, static_cast<double>(m0) + 0.5));
            bank_sync(bank, st, alpha0);
            bank_sync(eta_osc, st_eta, alpha0);
            Kahan acc;
            for (std::uint64_t m = m0; m < m1; ++m) {
                double alpha = iv.a + (static_cast<double>(m) + 0.5) * h_eff;
                std::complex<double> z = bank_step(st);
                std::complex<double> ze = bank_step(st_eta);
                double K = std::abs(kPi * eta * alpha) < 1e-3
                               ? fejer(eta, alpha)
                               : (1.0 - ze.real()) / (2.0 * kPi * kPi * alpha * alpha);
                double a2 = z.real() * z.real() + z.imag() * z.imag();
                acc.add((power == PowerSpec::S1Squared ? a2 : a2 * a2) * K);
            }
            partial[blk] = acc.sum;
        });
        for (std::uint64_t b = 0; b < n_blocks; ++b) total.add(h_eff * partial[b]);
        out.nodes += M;
    }
    out.value = total.sum;
    out.ratio = out.envelope > 0.0 ? out.value / out.envelope : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// trivial-arc tail bound

namespace {

// Rigorous upper bound for sum_{k >= m} k^{-2}: partial sum plus the
// Euler-Maclaurin upper tail 1/K - 1/(2K^2) + 1/(6K^3).
double inverse_square_tail(std::uint64_t m) {
    std::uint64_t K = m + 20000;
    Kahan s;
    for (std::uint64_t k = K - 1; k >= m; --k) {
        double kd = static_cast<double>(k);
        s.add(1.0 / (kd * kd));
        if (k == m) break;
    }
    double Kd = static_cast<double>(K - 1);
    s.add(1.0 / Kd - 1.0 / (2.0 * Kd * Kd) + 1.0 / (6.0 * Kd * Kd * Kd));
    return s.sum;
}

} // namespace

TailBoundResult trivial_tail_bound(const ProblemSpec& spec, double A) {
    const ArcParams& p = spec.params;
    if (!(A >= p.R)) throw DomainError("trivial_tail_bound: A must be >= R");

    TailBoundResult out;

    // Exact unit-interval mean values by orthogonality.
    SquareRange sq = square_range(spec);
    Kahan s2_0;
    for (std::size_t k = sq.begin; k < sq.end; ++k) s2_0.add(spec.square_table.logs()[k]);
    out.sup_S2 = s2_0.sum;

    MeanValueL2 l2 = mean_value_L2(p.X, p.delta, spec.linear_table);
    MeanValueL4 l4 = mean_value_L4(p.X, p.delta, spec.square_table);

    auto tail_sum = [&](double lambda_abs) {
        double m_real = lambda_abs * A;
        if (m_real < 1.0)
            throw DomainError("trivial_tail_bound: |lambda| A must be >= 1 for the "
                              "periodicity chain");
        std::uint64_t m = static_cast<std::uint64_t>(std::ceil(m_real));
        if (m < 2) m = 2;
        // sum_{n >= m} (n-1)^{-2} = sum_{k >= m-1} k^{-2}
        return inverse_square_tail(m - 1);
    };

    const double pi2 = kPi * kPi;
    double la1 = std::abs(spec.lambdas[0].to_double());
    double la2 = std::abs(spec.lambdas[1].to_double());
    double la3 = std::abs(spec.lambdas[2].to_double());
    out.A_term = l2.exact * tail_sum(la1) / pi2;
    out.B_term2 = l4.exact * tail_sum(la2) / pi2;
    out.B_term3 = l4.exact * tail_sum(la3) / pi2;

    // |I(|a|>A)| <= S2(0) (int |S1(l1 a)|^2 K)^{1/2} (int |S2(l2 a)|^4 K)^{1/4}
    //                     (int |S2(l3 a)|^4 K)^{1/4}
    // and each factor integral over |a| > A is at most 2 |lambda| times the
    // corresponding term (change of variables, K <= 1/(pi^2 a^2), then unit
    // periodicity against the exact L2/L4 means).
    out.bound = out.sup_S2 * std::sqrt(2.0 * la1 * out.A_term) *
                std::pow(2.0 * la2 * out.B_term2, 0.25) *
                std::pow(2.0 * la3 * out.B_term3, 0.25);
    return out;
}

// ---------------------------------------------------------------------------
// major-arc main-term lower bound

J1Result major_lower_J1(const ProblemSpec& spec, std::uint64_t mc_samples,
                        std::uint64_t seed, int threads) {
    if (!spec.mixed_signs)
        throw SignPatternError("major_lower_J1: all lambda_j share a sign");

    const double X = spec.X(), delta = spec.delta(), eta = spec.eta();
    const double a1 = delta * X, b1 = X;
    const double as = std::sqrt(delta * X), bs = std::sqrt(X);
    double lam[4];
    for (int j = 0; j < 4; ++j) lam[j] = spec.lambdas[j].to_double();
    const double varpi = spec.varpi.to_double();

    J1Result out;
    out.samples = mc_samples;

    // --- stratified Monte Carlo over D = [a1,b1] x [as,bs]^3 ---
    if (mc_samples > 0) {
        const double vol = (b1 - a1) * (bs - as) * (bs - as) * (bs - as);
        std::uint64_t g = 1;
        while ((g + 1) * (g + 1) * (g + 1) * (g + 1) <= mc_samples) ++g;
        const std::uint64_t strat = g * g * g * g;

        auto eval = [&](double u0, double u1, double u2, double u3) {
            double t1 = a1 + (b1 - a1) * u0;
            double t2 = as + (bs - as) * u1;
            double t3 = as + (bs - as) * u2;
            double t4 = as + (bs - as) * u3;
            double form = lam[0] * t1 + lam[1] * t2 * t2 + lam[2] * t3 * t3 +
                          lam[3] * t4 * t4 + varpi;
            return std::max(0.0, eta - std::abs(form));
        };

        constexpr std::uint64_t kChunk = 1u << 16;
        std::uint64_t n_blocks = (mc_samples + kChunk - 1) / kChunk;
        std::vector<double> partial(n_blocks);
        parallel_blocks(n_blocks, threads, [&](std::size_t blk) {
            std::uint64_t i0 = blk * kChunk;
            std::uint64_t i1 = std::min(mc_samples, i0 + kChunk);
            Kahan acc;
            for (std::uint64_t i = i0; i < i1; ++i) {
                double u[4];
                if (i < strat) {
                    // cell coordinates are the base-g digits of i; one
                    // jittered sample per cell
                    std::uint64_t c = i;
                    for (int d = 0; d < 4; ++d) {
                        std::uint64_t cell = c % g;
                        c /= g;
                        u[d] = (static_cast<double>(cell) +
                                counter_uniform(seed, 4 * i + d)) /
                               static_cast<double>(g);
                    }
                } else {
                    for (int d = 0; d < 4; ++d) u[d] = counter_uniform(seed, 4 * i + d);
                }
                acc.add(eval(u[0], u[1], u[2], u[3]));
            }
            partial[blk] = acc.sum;
        });
        Kahan total;
        for (double v : partial) total.add(v);
        out.mc_estimate = vol * total.sum / static_cast<double>(mc_samples);
    }

    // --- certified box construction ---
    // Work in u-coordinates (u_1 = t_1, u_j = t_j^2 for squares), domain
    // [delta X, X]^4, with the square-slot Jacobian bounded below by
    // X^{-1/2}/2 per slot.  Pick a free slot f; give every pivot slot an
    // interval [c, 1.5 c]; if the tent over u_f driven by any pivot
    // combination stays inside [delta X, X], the box contributes
    //   (prod pivot lengths) * eta^2/|lambda_f| * X^{-3/2}/8.
    {
        double best = 0.0;
        const double dom_lo = delta * X, dom_hi = X;
        std::vector<double> anchors;
        for (double c = dom_lo; 1.5 * c <= dom_hi; c *= 1.5) anchors.push_back(c);
        if (anchors.empty()) anchors.push_back(dom_lo);

        for (int f = 0; f < 4; ++f) {
            for (double ca : anchors)
                for (double cb : anchors)
                    for (double cc : anchors) {
                        double piv_c[3] = {ca, cb, cc};
                        // pivot interval sums in interval arithmetic
                        double s_lo = varpi, s_hi = varpi;
                        double len_prod = 1.0;
                        int pi_idx = 0;
                        bool ok = true;
                        for (int j = 0; j < 4; ++j) {
                            if (j == f) continue;
                            double c0 = piv_c[pi_idx], c1 = 1.5 * piv_c[pi_idx];
                            ++pi_idx;
                            if (c1 > dom_hi) { ok = false; break; }
                            double v0 = lam[j] * c0, v1 = lam[j] * c1;
                            if (v0 > v1) std::swap(v0, v1);
                            s_lo += v0;
                            s_hi += v1;
                            len_prod *= c1 - c0;
                        }
                        if (!ok) continue;
                        // tent support over u_f: (-[s] -+ eta) / lambda_f
                        double w0 = (-s_hi - eta) / lam[f], w1 = (-s_lo + eta) / lam[f];
                        if (w0 > w1) std::swap(w0, w1);
                        if (w0 < dom_lo || w1 > dom_hi) continue;
                        double bound = len_prod * eta * eta / std::abs(lam[f]) /
                                       (8.0 * X * std::sqrt(X));
                        best = std::max(best, bound);
                    }
        }
        out.constructive_bound = best;
        out.certified = best > 0.0;
    }
    return out;
}

} // namespace dhlab
