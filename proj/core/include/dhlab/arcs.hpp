#pragma once

#include <optional>

namespace dhlab {

/// Optional explicit values that replace the default parameter formulas.
struct ArcOverrides {
    std::optional<double> P;
    std::optional<double> eta;
    std::optional<double> R;
    std::optional<double> Q;
};

/// The tuple parameterizing the decomposition of the line into major,
/// minor and trivial arcs at scale X.  Defaults:
///   P = X^{2/5} / ln X,   eta = X^{-1/18 + eps} (ln X)^2,
///   R = eta^{-2} (ln X)^2,   Q = X^{2/9} / ln X.
/// Desk-scale degeneracies (eta >= 1, Q > P, P/X >= R) are flagged, never
/// hidden: the exact identities downstream hold for any eta > 0.
struct ArcParams {
    double X = 0.0;
    double delta = 0.1;
    double eps = 0.0;
    double ghosh_eps = 0.0; // epsilon of the S2 envelope; defaults equal to eps
    double P = 0.0;
    double eta = 0.0;
    double R = 0.0;
    double Q = 0.0;
    ArcOverrides overrides;

    bool eta_degenerate = false; // eta >= 1
    bool q_exceeds_p = false;    // Q > P with both at defaults
    bool empty_minor = false;    // P/X >= R: classification impossible

    double major_edge() const { return P / X; }
};

/// ghosh_eps <= 0 means "same as eps" (the two epsilon roles are exposed
/// separately but default equal).
ArcParams arc_params(double X, double eps, double delta, ArcOverrides overrides = {},
                     double ghosh_eps = 0.0);

enum class Arc { Major, Minor, Trivial };

/// |alpha| <= P/X -> Major; P/X < |alpha| < R -> Minor; |alpha| >= R ->
/// Trivial.  Boundaries go to the smaller arc.  Throws DegenerateParams if
/// the minor arc is empty (P/X >= R).
Arc classify(double alpha, const ArcParams& params);

const char* arc_name(Arc a);

} // namespace dhlab
