#include "dhlab/problem.hpp"

#include <cmath>

#include "dhlab/errors.hpp"

namespace dhlab {

ProblemSpec ProblemSpec::make(std::array<DoubleDouble, 4> lambdas, DoubleDouble varpi,
                              ArcParams params) {
    ProblemSpec spec;
    spec.lambdas = lambdas;
    spec.varpi = varpi;
    spec.params = params;

    bool pos = false, neg = false;
    for (const auto& l : lambdas) {
        double v = l.to_double();
        if (v == 0.0) throw DomainError("ProblemSpec: every lambda must be nonzero");
        (v > 0.0 ? pos : neg) = true;
    }
    spec.mixed_signs = pos && neg;

    SumWindow lw = sum_window({SumKind::Linear, true, params.X, params.delta});
    SumWindow sw = sum_window({SumKind::Square, true, params.X, params.delta});
    spec.linear_table = sieve_range(lw.empty() ? 2 : lw.lo, lw.empty() ? 2 : lw.hi);
    std::uint64_t sq_hi = sw.empty() ? 2 : sw.hi;
    spec.square_table = sieve_range(2, sq_hi);
    return spec;
}

DoubleDouble form_value_dd(const ProblemSpec& spec, std::uint64_t p1, std::uint64_t p2,
                           std::uint64_t p3, std::uint64_t p4) {
    DoubleDouble v = dd_mul(spec.lambdas[0], static_cast<double>(p1));
    const std::uint64_t sq[3] = {p2, p3, p4};
    for (int j = 0; j < 3; ++j) {
        double p = static_cast<double>(sq[j]);
        v = dd_add(v, dd_mul(spec.lambdas[j + 1], p * p));
    }
    return dd_add(v, spec.varpi);
}

double form_value_double(const ProblemSpec& spec, std::uint64_t p1, std::uint64_t p2,
                         std::uint64_t p3, std::uint64_t p4) {
    double v = spec.lambdas[0].to_double() * static_cast<double>(p1);
    const std::uint64_t sq[3] = {p2, p3, p4};
    for (int j = 0; j < 3; ++j) {
        double p = static_cast<double>(sq[j]);
        v += spec.lambdas[j + 1].to_double() * (p * p);
    }
    return v + spec.varpi.to_double();
}

} // namespace dhlab
