#pragma once

#include <cstdint>
#include <vector>

namespace dhlab {

/// Primes in [lo, hi] with their natural logs, plus a prefix-sum table so
/// Chebyshev-theta differences are O(log n) lookups.  Immutable after
/// construction; safe to share across threads.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t lo, std::uint64_t hi,
               std::vector<std::uint64_t> primes);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    const std::vector<double>& logs() const { return logs_; }
    std::size_t size() const { return primes_.size(); }

    /// Index of the first prime >= x (primes_.size() if none).
    std::size_t first_at_least(std::uint64_t x) const;
    /// Index one past the last prime <= x.
    std::size_t first_greater(std::uint64_t x) const;

    /// Sum of log p over primes in [a, b] (inclusive).  Caller must know the
    /// table covers [a, b]; no coverage check here.
    double log_sum(std::uint64_t a, std::uint64_t b) const;

    bool covers(std::uint64_t a, std::uint64_t b) const {
        return a >= lo_ && b <= hi_ && (a <= b);
    }

private:
    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = 0;
    std::vector<std::uint64_t> primes_;
    std::vector<double> logs_;
    std::vector<double> log_prefix_; // log_prefix_[i] = sum of logs_[0..i)
};

/// Segmented sieve of Eratosthenes over [lo, hi], 2^18-element segments.
/// Memory is O(sqrt(hi) + segment).  Throws RangeError if lo > hi.
PrimeTable sieve_range(std::uint64_t lo, std::uint64_t hi);

/// Chebyshev theta(x) = sum of log p over p <= x.  Requires the table to
/// cover [2, x]; throws CoverageError otherwise.  x < 2 gives 0.
double theta(double x, const PrimeTable& table);

} // namespace dhlab
