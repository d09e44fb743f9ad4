#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dhlab/problem.hpp"

namespace dhlab {

enum class MarginClass { Clear, Borderline };

/// An accepted prime quadruple.  form_value is the dd-verified value of
/// lambda_1 p1 + lambda_2 p2^2 + lambda_3 p3^2 + lambda_4 p4^2 + varpi;
/// threshold is (max_j p_j)^{-1/18+eps} in theorem mode or the fixed eta in
/// window mode.  Borderline flags records whose accept/reject decision sits
/// within rounding distance of the threshold, or whose plain-double and dd
/// form evaluations disagree materially.
struct SolutionRecord {
    std::uint64_t p1 = 0, p2 = 0, p3 = 0, p4 = 0;
    double form_value = 0.0;
    std::uint64_t max_p = 0;
    double threshold = 0.0;
    MarginClass margin = MarginClass::Clear;
};

struct SearchMode {
    enum class Kind { TheoremThreshold, FixedWindow };
    Kind kind = Kind::FixedWindow;
    double eps = 0.05; // theorem mode: threshold (max p)^{-1/18+eps}
    double eta = 0.5;  // window mode: fixed threshold

    static SearchMode theorem(double eps) { return {Kind::TheoremThreshold, eps, 0.0}; }
    static SearchMode window(double eta) { return {Kind::FixedWindow, 0.0, eta}; }
};

/// Meet-in-the-middle solver: left values lambda_1 p1 + lambda_2 p2^2 +
/// varpi against a sorted list of right values -(lambda_3 p3^2 +
/// lambda_4 p4^2).  Every candidate inside the conservative window is
/// re-verified with the dd form and its exact per-solution threshold.
/// Returns up to `limit` records sorted by |form_value| (ties by
/// (p1,p2,p3,p4)).  Deterministic for any thread count.
std::vector<SolutionRecord> find_solutions(const ProblemSpec& spec, const SearchMode& mode,
                                           std::size_t limit, int threads = 1);

/// N(X): number of quadruples with |form| < eta (the open support of the
/// tent), plus the matching kernel-weighted sum (the meet-in-the-middle
/// route to weighted_solution_sum).
struct CountResult {
    std::uint64_t count = 0;
    double weighted = 0.0;
};
CountResult count_N(const ProblemSpec& spec, double eta, int threads = 1);

/// Exhaustive quadruple loop with the identical acceptance predicate and
/// precision policy.  Records sorted by (p1,p2,p3,p4).  Throws ScaleError
/// for X > 1e4.
std::vector<SolutionRecord> brute_force_oracle(const ProblemSpec& spec,
                                               const SearchMode& mode);

/// CSV emission: header p1,p2,p3,p4,form_value,threshold,margin; floats with
/// 17 significant digits.
std::string solutions_to_csv(const std::vector<SolutionRecord>& records);

} // namespace dhlab
