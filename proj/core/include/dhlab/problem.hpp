#pragma once

#include <array>
#include <cstdint>

#include "dhlab/arcs.hpp"
#include "dhlab/dd.hpp"
#include "dhlab/expsums.hpp"
#include "dhlab/primes.hpp"

namespace dhlab {

/// A full problem instance: coefficients lambda_1..lambda_4 (carried in
/// double-double, since irrational coefficients feed phase reduction and
/// near-threshold form decisions), the shift varpi, arc parameters, and the
/// two prime tables (linear scale [delta X, X], square scale [2, sqrt(X)]).
struct ProblemSpec {
    std::array<DoubleDouble, 4> lambdas;
    DoubleDouble varpi;
    ArcParams params;
    PrimeTable linear_table;
    PrimeTable square_table;
    bool mixed_signs = false; // hypothesis "not all of the same sign", recorded

    double X() const { return params.X; }
    double delta() const { return params.delta; }
    double eta() const { return params.eta; }

    SumSpec s1_spec() const { return {SumKind::Linear, true, params.X, params.delta}; }
    SumSpec s2_spec() const { return {SumKind::Square, true, params.X, params.delta}; }

    SumWindow linear_window() const { return sum_window(s1_spec()); }
    SumWindow square_window() const { return sum_window(s2_spec()); }

    /// Sieve the two tables and record the sign condition.  Throws
    /// DomainError if any lambda is zero.
    static ProblemSpec make(std::array<DoubleDouble, 4> lambdas, DoubleDouble varpi,
                            ArcParams params);
};

/// lambda_1 p_1 + lambda_2 p_2^2 + lambda_3 p_3^2 + lambda_4 p_4^2 + varpi
/// evaluated in double-double (the high-precision route).
DoubleDouble form_value_dd(const ProblemSpec& spec, std::uint64_t p1, std::uint64_t p2,
                           std::uint64_t p3, std::uint64_t p4);

/// The same form evaluated in plain double arithmetic (the verification
/// counterpart: disagreement with the dd route flags a borderline record).
double form_value_double(const ProblemSpec& spec, std::uint64_t p1, std::uint64_t p2,
                         std::uint64_t p3, std::uint64_t p4);

} // namespace dhlab
