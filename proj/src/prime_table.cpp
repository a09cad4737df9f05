#include "rmflab/prime_table.hpp"

#include <algorithm>

namespace rmflab::arith {

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
    if (limit < 2 || limit > (u64(1) << 31))
        throw std::out_of_range("PrimeTable: limit must be in [2, 2^31]");

    spf_.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            primes_.push_back(i);
            for (u64 j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<u32>(i);
        }
    }
}

u64 PrimeTable::count_primes_upto(u64 n) const {
    if (n > limit_) throw std::out_of_range("count_primes_upto: n exceeds limit");
    auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
    return static_cast<u64>(it - primes_.begin());
}

std::vector<u64> PrimeTable::primes_in(u64 lo, u64 hi) const {
    if (hi > limit_) throw std::out_of_range("primes_in: hi exceeds limit");
    if (hi <= lo) return {};
    auto a = std::upper_bound(primes_.begin(), primes_.end(), lo);
    auto b = std::upper_bound(primes_.begin(), primes_.end(), hi);
    return std::vector<u64>(a, b);
}

u64 Factorization::value() const {
    u64 v = 1;
    for (auto [p, e] : pairs)
        for (u32 i = 0; i < e; ++i) v = checked_mul(v, p);
    return v;
}

PrimeTable build_prime_table(u64 limit) { return PrimeTable(limit); }

Factorization factorize(u64 n, const PrimeTable& table) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    if (n == 1) return f;

    u64 m = n;
    if (m <= table.limit()) {
        while (m > 1) {
            u64 p = table.spf(m);
            u32 e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.pairs.emplace_back(p, e);
        }
        return f;
    }

    for (u64 p : table.primes()) {
        if (p * p > m) break;
        if (m % p == 0) {
            u32 e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.pairs.emplace_back(p, e);
            if (m <= table.limit()) {
                while (m > 1) {
                    u64 q = table.spf(m);
                    u32 e2 = 0;
                    while (m % q == 0) { m /= q; ++e2; }
                    f.pairs.emplace_back(q, e2);
                }
                return f;
            }
        }
    }
    if (m > 1) {
        // No table prime <= sqrt(m) divides m. That certifies primality only
        // when sqrt(m) <= limit; otherwise the table cannot decide.
        u64 lim = table.limit();
        if (m / lim > lim)
            throw insufficient_table_error("factorize: remainder " + std::to_string(m) +
                                           " not factorable with table limit " +
                                           std::to_string(lim));
        f.pairs.emplace_back(m, 1);
        std::sort(f.pairs.begin(), f.pairs.end());
    }
    return f;
}

MultiplicativeInvariants multiplicative_invariants(u64 n, const PrimeTable& table) {
    Factorization f = factorize(n, table);
    MultiplicativeInvariants inv;
    for (auto [p, e] : f.pairs) {
        ++inv.omega;
        inv.big_omega += e;
    }
    inv.liouville = (inv.big_omega % 2 == 0) ? 1 : -1;
    if (!f.pairs.empty()) {
        inv.least_pf = f.pairs.front().first;
        inv.greatest_pf = f.pairs.back().first;
    }
    return inv;
}

} // namespace rmflab::arith
