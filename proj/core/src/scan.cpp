#include <algorithm>
#include <cmath>
#include <vector>

#include "dhlab/analysis.hpp"
#include "dhlab/diophantine.hpp"
#include "dhlab/errors.hpp"
#include "dhlab/expsums.hpp"
#include "dhlab/rng.hpp"
#include "dhlab/threads.hpp"

namespace dhlab {

namespace {

// One audited sample.  "Both denominators at or below Q" is the event the
// dichotomy forbids; it only becomes a genuine violation when the small
// integer combination a2 q1 (l1/l2) - a1 q2 also drops below the
// best-approximation floor 1/(2q) for a denominator |a2 q1| still below
// q = X^{5/9} -- a configuration the law of best approximation rules out
// outright, so recording one means a defect somewhere in the chain.
struct SampleOutcome {
    ScanSample row;
    bool violation = false;
    double s1_abs = 0.0, s2_abs = 0.0;
};

} // namespace

ScanReport minor_arc_scan(const ProblemSpec& spec, std::uint64_t samples,
                          std::uint64_t seed, int threads,
                          std::vector<ScanSample>* profile) {
    const ArcParams& p = spec.params;
    if (p.empty_minor)
        throw DegenerateParams("minor_arc_scan: minor arc is empty (P/X >= R)");

    ScanReport report;
    report.samples = samples;
    if (samples == 0) return report;

    const double lo = p.major_edge(), hi = p.R;
    const double log_lo = std::log(lo), log_hi = std::log(hi);
    const double X = p.X, delta = p.delta;
    const std::int64_t N =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(X / p.Q)));
    const double q_ladder = std::pow(X, 5.0 / 9.0);
    const DoubleDouble xi = dd_div(spec.lambdas[0], spec.lambdas[1]);

    std::vector<SampleOutcome> outcomes(samples);

    constexpr std::uint64_t kChunk = 256;
    std::uint64_t n_blocks = (samples + kChunk - 1) / kChunk;
    parallel_blocks(n_blocks, threads, [&](std::size_t blk) {
        std::uint64_t i0 = blk * kChunk;
        std::uint64_t i1 = std::min<std::uint64_t>(samples, i0 + kChunk);
        for (std::uint64_t i = i0; i < i1; ++i) {
            double u = counter_uniform(seed, i);
            double alpha = std::exp(log_lo + u * (log_hi - log_lo));
            DoubleDouble alpha_dd(alpha);

            SumSpec s1{SumKind::Linear, true, X, delta};
            SumSpec s2{SumKind::Square, true, X, delta};
            double v1 = std::abs(
                prime_exp_sum(s1, dd_mul(spec.lambdas[0], alpha_dd), &spec.linear_table));
            double v2 = std::abs(
                prime_exp_sum(s2, dd_mul(spec.lambdas[1], alpha_dd), &spec.square_table));

            Convergent d1 = dirichlet_approx(dd_mul(spec.lambdas[0], alpha_dd), N);
            Convergent d2 = dirichlet_approx(dd_mul(spec.lambdas[1], alpha_dd), N);

            SampleOutcome& o = outcomes[i];
            o.row = {alpha, std::min(std::sqrt(v1), v2), d1.q, d2.q, classify(alpha, p)};
            o.s1_abs = v1;
            o.s2_abs = v2;

            bool both_small = static_cast<double>(d1.q) <= p.Q &&
                              static_cast<double>(d2.q) <= p.Q && d1.a != 0 && d2.a != 0;
            if (both_small) {
                double K = static_cast<double>(d2.a) * static_cast<double>(d1.q);
                double L = static_cast<double>(d1.a) * static_cast<double>(d2.q);
                double D = std::abs(dd_sub(dd_mul(xi, K), DoubleDouble(L)).to_double());
                if (D < 1.0 / (2.0 * q_ladder) && std::abs(K) < q_ladder)
                    o.violation = true;
            }
        }
    });

    // Ordered reduction: identical output for any thread count.
    for (std::uint64_t i = 0; i < samples; ++i) {
        const SampleOutcome& o = outcomes[i];
        if (o.row.V > report.sup_V) {
            report.sup_V = o.row.V;
            report.argmax_alpha = o.row.alpha;
        }
        if (o.violation)
            report.dichotomy_violations.push_back({o.row.alpha, o.row.q1, o.row.q2});
        double ve = vaughan_envelope(1, o.row.q1, X);
        double ge = ghosh_envelope(1, o.row.q2, X, p.ghosh_eps);
        if (ve > 0.0) report.max_vaughan_ratio = std::max(report.max_vaughan_ratio, o.s1_abs / ve);
        if (ge > 0.0) report.max_ghosh_ratio = std::max(report.max_ghosh_ratio, o.s2_abs / ge);
        if (profile) profile->push_back(o.row);
    }
    return report;
}

} // namespace dhlab
