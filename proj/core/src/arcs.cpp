#include "dhlab/arcs.hpp"

#include <cmath>

#include "dhlab/errors.hpp"

namespace dhlab {

ArcParams arc_params(double X, double eps, double delta, ArcOverrides overrides,
                     double ghosh_eps) {
    if (!(X > std::exp(1.0)))
        throw DomainError("arc_params: X must exceed e so that ln X > 1");
    if (!(eps > 0.0 && eps < 1.0 / 18.0))
        throw DomainError("arc_params: eps must lie in (0, 1/18)");
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("arc_params: delta must lie in (0,1)");

    ArcParams p;
    p.X = X;
    p.eps = eps;
    p.ghosh_eps = ghosh_eps > 0.0 ? ghosh_eps : eps;
    p.delta = delta;
    p.overrides = overrides;

    double lx = std::log(X);
    p.P = overrides.P.value_or(std::pow(X, 0.4) / lx);
    p.eta = overrides.eta.value_or(std::pow(X, -1.0 / 18.0 + eps) * lx * lx);
    p.R = overrides.R.value_or(lx * lx / (p.eta * p.eta));
    p.Q = overrides.Q.value_or(std::pow(X, 2.0 / 9.0) / lx);

    if (!(p.P > 0.0 && p.eta > 0.0 && p.R > 0.0 && p.Q > 0.0))
        throw DomainError("arc_params: P, eta, R, Q must all be positive");

    p.eta_degenerate = p.eta >= 1.0;
    p.q_exceeds_p = !overrides.Q && !overrides.P && p.Q > p.P;
    p.empty_minor = p.P / p.X >= p.R;
    return p;
}

Arc classify(double alpha, const ArcParams& params) {
    if (params.empty_minor)
        throw DegenerateParams("classify: P/X >= R, the minor arc is empty");
    double a = std::abs(alpha);
    if (a <= params.major_edge()) return Arc::Major;
    if (a < params.R) return Arc::Minor;
    return Arc::Trivial;
}

const char* arc_name(Arc a) {
    switch (a) {
        case Arc::Major: return "major";
        case Arc::Minor: return "minor";
        default: return "trivial";
    }
}

} // namespace dhlab
