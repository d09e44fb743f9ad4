#include "dhlab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dhlab/errors.hpp"

namespace dhlab {

namespace {

constexpr std::uint64_t kSegmentSize = 1u << 18;

// Simple sieve up to n, used for the base primes (n <= sqrt(hi)).
std::vector<std::uint64_t> small_primes(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

} // namespace

PrimeTable::PrimeTable(std::uint64_t lo, std::uint64_t hi,
                       std::vector<std::uint64_t> primes)
    : lo_(lo), hi_(hi), primes_(std::move(primes)) {
    logs_.resize(primes_.size());
    log_prefix_.resize(primes_.size() + 1);
    log_prefix_[0] = 0.0;
    // Compensated prefix sum; the running compensation keeps theta lookups
    // accurate to a few ulps even for millions of primes.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        logs_[i] = std::log(static_cast<double>(primes_[i]));
        double y = logs_[i] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        log_prefix_[i + 1] = sum;
    }
}

std::size_t PrimeTable::first_at_least(std::uint64_t x) const {
    return std::lower_bound(primes_.begin(), primes_.end(), x) - primes_.begin();
}

std::size_t PrimeTable::first_greater(std::uint64_t x) const {
    return std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin();
}

double PrimeTable::log_sum(std::uint64_t a, std::uint64_t b) const {
    if (a > b) return 0.0;
    std::size_t i = first_at_least(a);
    std::size_t j = first_greater(b);
    return log_prefix_[j] - log_prefix_[i];
}

PrimeTable sieve_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi)
        throw RangeError("sieve_range: lo " + std::to_string(lo) + " > hi " +
                         std::to_string(hi));

    std::vector<std::uint64_t> primes;
    if (hi >= 2) {
        std::uint64_t start = std::max<std::uint64_t>(lo, 2);
        std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
        while (root > 0 && static_cast<__uint128_t>(root) * root > hi) --root;
        while (static_cast<__uint128_t>(root + 1) * (root + 1) <= hi) ++root;
        auto base = small_primes(root);

        std::vector<bool> segment;
        for (std::uint64_t seg_lo = start; seg_lo <= hi;) {
            std::uint64_t seg_hi = std::min(hi, seg_lo + (kSegmentSize - 1));
            std::size_t len = static_cast<std::size_t>(seg_hi - seg_lo + 1);
            segment.assign(len, true);
            for (std::uint64_t p : base) {
                std::uint64_t first = std::max(p * p, ((seg_lo + p - 1) / p) * p);
                if (first > seg_hi) continue;
                for (std::uint64_t m = first; m <= seg_hi; m += p)
                    segment[static_cast<std::size_t>(m - seg_lo)] = false;
            }
            // Every composite <= hi has a prime factor <= sqrt(hi), so an
            // unmarked n >= 2 is prime.
            for (std::size_t i = 0; i < len; ++i) {
                std::uint64_t n = seg_lo + i;
                if (n >= 2 && segment[i]) primes.push_back(n);
            }
            if (seg_hi == hi) break;
            seg_lo = seg_hi + 1;
        }
    }
    return PrimeTable(lo, hi, std::move(primes));
}

double theta(double x, const PrimeTable& table) {
    if (x < 2.0) return 0.0;
    std::uint64_t xi = static_cast<std::uint64_t>(std::floor(x));
    if (table.lo() > 2 || table.hi() < xi)
        throw CoverageError("theta: table [" + std::to_string(table.lo()) + "," +
                            std::to_string(table.hi()) + "] does not cover [2," +
                            std::to_string(xi) + "]");
    return table.log_sum(2, xi);
}

} // namespace dhlab
