#pragma once

// Shared toy-spec construction for tests.

#include <array>

#include "dhlab/arcs.hpp"
#include "dhlab/problem.hpp"

namespace dhlab::testing {

inline ProblemSpec make_spec(std::array<DoubleDouble, 4> lambdas, DoubleDouble varpi,
                             double X, double eta, double delta = 0.1,
                             double eps = 0.05) {
    ArcOverrides ov;
    ov.eta = eta;
    return ProblemSpec::make(lambdas, varpi, arc_params(X, eps, delta, ov));
}

/// lambda = (1, -1, -1, -1), varpi = 0, X = 100, delta = 0.04, eta = 0.5:
/// the p = p2^2 + p3^2 + p4^2 toy containing (83, 3, 5, 7).
inline ProblemSpec toy_families() {
    return make_spec({DoubleDouble(1.0), DoubleDouble(-1.0), DoubleDouble(-1.0),
                      DoubleDouble(-1.0)},
                     DoubleDouble(0.0), 100.0, 0.5, 0.04);
}

/// lambda = (1, -sqrt2, -sqrt3, -sqrt5), varpi = pi: the irrational spec.
inline ProblemSpec toy_irrational(double X, double eta = 0.5, double delta = 0.1) {
    return make_spec({DoubleDouble(1.0), dd_neg(dd_const::sqrt2), dd_neg(dd_const::sqrt3),
                      dd_neg(dd_const::sqrt5)},
                     dd_const::pi, X, eta, delta);
}

} // namespace dhlab::testing
