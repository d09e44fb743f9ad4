#include "dhlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "dhlab/errors.hpp"
#include "dhlab/threads.hpp"

namespace dhlab {

namespace {

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double threshold_for(const SearchMode& mode, std::uint64_t max_p) {
    if (mode.kind == SearchMode::Kind::FixedWindow) return mode.eta;
    return std::pow(static_cast<double>(max_p), -1.0 / 18.0 + mode.eps);
}

void validate_mode(const SearchMode& mode) {
    if (mode.kind == SearchMode::Kind::TheoremThreshold) {
        if (!(mode.eps > 0.0 && mode.eps < 1.0 / 18.0))
            throw DomainError("search: theorem-mode eps must lie in (0, 1/18)");
    } else if (!(mode.eta >= 0.0)) {
        throw DomainError("search: window eta must be nonnegative");
    }
}

void guard_scale(const ProblemSpec& spec) {
    for (const auto& l : spec.lambdas)
        if (std::abs(l.to_double()) * spec.X() > 9.0e15)
            throw OverflowGuard("search: |lambda| X beyond safe extended-precision range");
}

// Magnitude of the positive-term sum; the yardstick for ulp-scale margins.
double form_magnitude(const ProblemSpec& spec, std::uint64_t p1, std::uint64_t p2,
                      std::uint64_t p3, std::uint64_t p4) {
    double m = std::abs(spec.lambdas[0].to_double()) * static_cast<double>(p1);
    const std::uint64_t sq[3] = {p2, p3, p4};
    for (int j = 0; j < 3; ++j) {
        double p = static_cast<double>(sq[j]);
        m += std::abs(spec.lambdas[j + 1].to_double()) * p * p;
    }
    return m + std::abs(spec.varpi.to_double());
}

// The single acceptance predicate shared by the solver and the oracle.
std::optional<SolutionRecord> verify_candidate(const ProblemSpec& spec,
                                               const SearchMode& mode, std::uint64_t p1,
                                               std::uint64_t p2, std::uint64_t p3,
                                               std::uint64_t p4) {
    DoubleDouble form = form_value_dd(spec, p1, p2, p3, p4);
    double fv = form.to_double();
    std::uint64_t max_p = std::max(std::max(p1, p2), std::max(p3, p4));
    double thr = threshold_for(mode, max_p);
    if (!(std::abs(fv) <= thr)) return std::nullopt;

    SolutionRecord rec;
    rec.p1 = p1;
    rec.p2 = p2;
    rec.p3 = p3;
    rec.p4 = p4;
    rec.form_value = fv;
    rec.max_p = max_p;
    rec.threshold = thr;

    double mag = form_magnitude(spec, p1, p2, p3, p4);
    double ulp_margin = 1000.0 * mag * std::numeric_limits<double>::epsilon();
    double plain = form_value_double(spec, p1, p2, p3, p4);
    bool near_edge = std::abs(thr - std::abs(fv)) < ulp_margin;
    bool routes_disagree = std::abs(plain - fv) >= 1e-3 * thr;
    rec.margin = (near_edge || routes_disagree) ? MarginClass::Borderline : MarginClass::Clear;
    return rec;
}

struct RightEntry {
    double value; // -(l3 p3^2 + l4 p4^2)
    std::uint64_t p3, p4;
};

struct MitmContext {
    std::vector<std::uint64_t> lin_primes, sq_primes;
    std::vector<RightEntry> right;
    double slack = 0.0;
};

MitmContext build_context(const ProblemSpec& spec) {
    MitmContext ctx;
    SumWindow lw = spec.linear_window();
    SumWindow sw = spec.square_window();
    if (!lw.empty()) {
        const auto& t = spec.linear_table;
        for (std::size_t k = t.first_at_least(lw.lo); k < t.first_greater(lw.hi); ++k)
            ctx.lin_primes.push_back(t.primes()[k]);
    }
    if (!sw.empty()) {
        const auto& t = spec.square_table;
        for (std::size_t k = t.first_at_least(sw.lo); k < t.first_greater(sw.hi); ++k)
            ctx.sq_primes.push_back(t.primes()[k]);
    }
    const double l3 = spec.lambdas[2].to_double(), l4 = spec.lambdas[3].to_double();
    for (std::uint64_t p3 : ctx.sq_primes)
        for (std::uint64_t p4 : ctx.sq_primes) {
            double v = -(l3 * static_cast<double>(p3) * static_cast<double>(p3) +
                         l4 * static_cast<double>(p4) * static_cast<double>(p4));
            ctx.right.push_back({v, p3, p4});
        }
    std::sort(ctx.right.begin(), ctx.right.end(), [](const RightEntry& a, const RightEntry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.p3 != b.p3) return a.p3 < b.p3;
        return a.p4 < b.p4;
    });
    // Rounding slack for the window search; acceptance itself is exact (dd).
    double mag = 0.0;
    for (const auto& l : spec.lambdas) mag += std::abs(l.to_double());
    ctx.slack = 64.0 * (mag * spec.X() + std::abs(spec.varpi.to_double())) *
                std::numeric_limits<double>::epsilon();
    return ctx;
}

// Enumerate all quadruples whose form can fall inside the mode's window and
// call visit(p1,p2,p3,p4) on them, in deterministic order per p2-block.
template <typename Visit>
void mitm_enumerate(const ProblemSpec& spec, const SearchMode& mode, const MitmContext& ctx,
                    int threads, Visit&& visit_block) {
    if (ctx.lin_primes.empty() || ctx.sq_primes.empty() || ctx.right.empty()) return;
    const double l1 = spec.lambdas[0].to_double(), l2 = spec.lambdas[1].to_double();
    const double varpi = spec.varpi.to_double();
    const std::uint64_t s_min = ctx.sq_primes.front();

    std::size_t n_blocks = ctx.sq_primes.size();
    parallel_blocks(n_blocks, threads, [&](std::size_t blk) {
        std::uint64_t p2 = ctx.sq_primes[blk];
        double c2 = l2 * static_cast<double>(p2) * static_cast<double>(p2) + varpi;
        for (std::uint64_t p1 : ctx.lin_primes) {
            double left = l1 * static_cast<double>(p1) + c2;
            std::uint64_t floor_max = std::max(std::max(p1, p2), s_min);
            double tau = threshold_for(mode, floor_max) + ctx.slack;
            auto lo = std::lower_bound(ctx.right.begin(), ctx.right.end(), left - tau,
                                       [](const RightEntry& e, double v) { return e.value < v; });
            auto hi = std::upper_bound(ctx.right.begin(), ctx.right.end(), left + tau,
                                       [](double v, const RightEntry& e) { return v < e.value; });
            for (auto it = lo; it != hi; ++it)
                visit_block(blk, p1, p2, it->p3, it->p4);
        }
    });
}

bool record_order(const SolutionRecord& a, const SolutionRecord& b) {
    double fa = std::abs(a.form_value), fb = std::abs(b.form_value);
    if (fa != fb) return fa < fb;
    if (a.p1 != b.p1) return a.p1 < b.p1;
    if (a.p2 != b.p2) return a.p2 < b.p2;
    if (a.p3 != b.p3) return a.p3 < b.p3;
    return a.p4 < b.p4;
}

} // namespace

std::vector<SolutionRecord> find_solutions(const ProblemSpec& spec, const SearchMode& mode,
                                           std::size_t limit, int threads) {
    validate_mode(mode);
    guard_scale(spec);
    if (limit < 1) throw DomainError("find_solutions: limit must be >= 1");

    MitmContext ctx = build_context(spec);
    std::vector<std::vector<SolutionRecord>> per_block(ctx.sq_primes.size());
    mitm_enumerate(spec, mode, ctx, threads,
                   [&](std::size_t blk, std::uint64_t p1, std::uint64_t p2, std::uint64_t p3,
                       std::uint64_t p4) {
                       if (auto rec = verify_candidate(spec, mode, p1, p2, p3, p4))
                           per_block[blk].push_back(*rec);
                   });

    std::vector<SolutionRecord> all;
    for (auto& blk : per_block)
        all.insert(all.end(), blk.begin(), blk.end());
    std::sort(all.begin(), all.end(), record_order);
    if (all.size() > limit) all.resize(limit);
    return all;
}

CountResult count_N(const ProblemSpec& spec, double eta, int threads) {
    if (!(eta >= 0.0)) throw DomainError("count_N: eta must be nonnegative");
    guard_scale(spec);

    SearchMode mode = SearchMode::window(eta);
    MitmContext ctx = build_context(spec);
    std::vector<std::uint64_t> counts(ctx.sq_primes.size(), 0);
    std::vector<Kahan> weights(ctx.sq_primes.size());
    const auto& lt = spec.linear_table;
    const auto& st = spec.square_table;

    mitm_enumerate(spec, mode, ctx, threads,
                   [&](std::size_t blk, std::uint64_t p1, std::uint64_t p2, std::uint64_t p3,
                       std::uint64_t p4) {
                       DoubleDouble form = form_value_dd(spec, p1, p2, p3, p4);
                       double hat = eta - std::abs(form.to_double());
                       if (hat > 0.0) { // strict: the open support of the tent
                           counts[blk] += 1;
                           double w = lt.logs()[lt.first_at_least(p1)] *
                                      st.logs()[st.first_at_least(p2)] *
                                      st.logs()[st.first_at_least(p3)] *
                                      st.logs()[st.first_at_least(p4)];
                           weights[blk].add(w * hat);
                       }
                   });

    CountResult out;
    Kahan total;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        out.count += counts[b];
        total.add(weights[b].sum);
    }
    out.weighted = total.sum;
    return out;
}

std::vector<SolutionRecord> brute_force_oracle(const ProblemSpec& spec,
                                               const SearchMode& mode) {
    validate_mode(mode);
    guard_scale(spec);
    if (spec.X() > 1e4)
        throw ScaleError("brute_force_oracle: X > 1e4 would take the quadruple loop too far");

    MitmContext ctx = build_context(spec); // prime lists only; right list unused
    std::vector<SolutionRecord> out;
    for (std::uint64_t p1 : ctx.lin_primes)
        for (std::uint64_t p2 : ctx.sq_primes)
            for (std::uint64_t p3 : ctx.sq_primes)
                for (std::uint64_t p4 : ctx.sq_primes)
                    if (auto rec = verify_candidate(spec, mode, p1, p2, p3, p4))
                        out.push_back(*rec);
    // loop order is already (p1,p2,p3,p4)-lexicographic
    return out;
}

std::string solutions_to_csv(const std::vector<SolutionRecord>& records) {
    std::string csv = "p1,p2,p3,p4,form_value,threshold,margin\n";
    char buf[160];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%llu,%llu,%llu,%llu,%.17g,%.17g,%s\n",
                      static_cast<unsigned long long>(r.p1),
                      static_cast<unsigned long long>(r.p2),
                      static_cast<unsigned long long>(r.p3),
                      static_cast<unsigned long long>(r.p4), r.form_value, r.threshold,
                      r.margin == MarginClass::Clear ? "clear" : "borderline");
        csv += buf;
    }
    return csv;
}

} // namespace dhlab
