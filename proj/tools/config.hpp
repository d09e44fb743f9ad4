#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "dhlab/arcs.hpp"
#include "dhlab/dd.hpp"
#include "dhlab/powers2.hpp"
#include "dhlab/problem.hpp"

namespace dhlab::cli {

/// One experiment description, parsed from a JSON config file.  Coefficients
/// accept symbolic literals ("sqrt2", "sqrt3", "sqrt5", "pi", "e", rationals
/// "p/q", each with an optional leading '-') resolved at double-double
/// precision; X accepts a number or "from-convergent:<k>" to walk the
/// X = q^{9/5} ladder of lambda1/lambda2.
struct RunConfig {
    std::array<DoubleDouble, 4> lambdas{DoubleDouble(1), DoubleDouble(-1), DoubleDouble(-1),
                                        DoubleDouble(-1)};
    DoubleDouble varpi;
    double eps = 0.05;
    double ghosh_eps = 0.0; // 0: same as eps
    double delta = 0.1;
    double X = 0.0;
    std::optional<int> x_from_convergent;
    ArcOverrides overrides;
    std::uint64_t seed = 0;
    std::int64_t min_q = 1;

    // command knobs
    double identity_A = 2000.0;
    std::uint64_t scan_samples = 10000;
    std::string search_mode = "window"; // or "theorem"
    double search_eta = 0.5;
    double search_eps = 0.05;
    std::uint64_t search_limit = 1000;
    double selberg_h = 5.0;
    double tails_A = 0.0; // 0: use R
    std::uint64_t j1_samples = 262144;
    Theorem2Input s0;
    int convergents_count = 20;
};

/// Parse and validate; throws dhlab::DomainError with a message on any
/// malformed field (the driver maps that to exit code 3).
RunConfig parse_config(const std::string& path);

/// Resolve a symbolic literal to >= 100-bit precision.
DoubleDouble resolve_literal(const std::string& text);

/// Resolve X (walking the convergent ladder if requested) and sieve tables.
ProblemSpec build_spec(const RunConfig& config);

/// %.17g, round-trip exact.
std::string d17(double v);

} // namespace dhlab::cli
