#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rmflab::arith {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;

// Thrown when trial division by table primes cannot finish a factorization.
class insufficient_table_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Primes and smallest-prime-factor data up to a fixed limit.
// Immutable after construction; safe for concurrent reads.
class PrimeTable {
public:
    // 2 <= limit <= 2^31, else std::out_of_range.
    explicit PrimeTable(u64 limit);

    u64 limit() const { return limit_; }
    const std::vector<u64>& primes() const { return primes_; }

    // Smallest prime factor of n (2 <= n <= limit); spf(1) == 0 (no prime factor).
    u64 spf(u64 n) const {
        if (n > limit_) throw std::out_of_range("PrimeTable::spf: n exceeds limit");
        return spf_[n];
    }

    bool is_prime(u64 n) const { return n >= 2 && spf(n) == n; }

    // Number of primes <= n (n <= limit).
    u64 count_primes_upto(u64 n) const;

    // Primes in (lo, hi], hi <= limit.
    std::vector<u64> primes_in(u64 lo, u64 hi) const;

private:
    u64 limit_;
    std::vector<u32> spf_;
    std::vector<u64> primes_;
};

struct Factorization {
    // (prime, exponent), primes strictly increasing, exponents >= 1.
    std::vector<std::pair<u64, u32>> pairs;

    bool empty() const { return pairs.empty(); }
    auto begin() const { return pairs.begin(); }
    auto end() const { return pairs.end(); }
    // Recomposes the factored integer; throws std::overflow_error on overflow.
    u64 value() const;
};

struct MultiplicativeInvariants {
    u32 omega = 0;       // distinct prime factors
    u32 big_omega = 0;   // prime factors with multiplicity
    int liouville = 1;   // (-1)^big_omega
    u64 least_pf = 0;    // 0 = none (n = 1)
    u64 greatest_pf = 0; // 0 = none
};

PrimeTable build_prime_table(u64 limit);

// Full factorization of n >= 1. For n > table.limit the remainder after
// dividing out table primes must itself be prime (second-largest prime
// factor <= limit), else insufficient_table_error.
Factorization factorize(u64 n, const PrimeTable& table);

MultiplicativeInvariants multiplicative_invariants(u64 n, const PrimeTable& table);

// a*b with overflow check.
inline u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("u64 multiplication overflow");
    return r;
}

} // namespace rmflab::arith
