#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rmflab/prime_table.hpp"

namespace rmflab::characters {

using arith::i64;
using arith::u64;

// Legendre character mod an odd prime p, tabulated over a full period.
class CharacterContext {
public:
    explicit CharacterContext(u64 p);

    u64 p() const { return p_; }
    int chi(u64 n) const { return chi_[n % p_]; }

private:
    u64 p_;
    std::vector<signed char> chi_;
};

// Jacobi symbol (a/n), n odd >= 1, via binary reciprocity.
int jacobi_symbol(i64 a, u64 n);

// The extended symbol: (m/2) = 1 for odd m, 0 for even m; multiplicative over
// the factorization of n, (m/n) = prod (m/p)^a. Differs from the Kronecker
// symbol at the prime 2.
int extended_symbol(i64 m, u64 n, const arith::PrimeTable& table);

struct LplusResult {
    bool member = false;
    i64 min_fsum = 0;
    u64 argmin = 0;
};

// Decides p in L+ (all partial sums of chi_p nonnegative) by scanning one
// period: the sum over a full period vanishes, so the partial-sum sequence is
// p-periodic and a one-period scan decides every t >= 1.
LplusResult lplus_member(u64 p, const arith::PrimeTable& table);

struct HarmonicCertificate {
    bool positive = false;   // all scanned prefixes > 0 AND certified
    bool certified = false;  // tail bound S(y0) > 2 sqrt(p) ln p / y0 holds
    double min_hsum = 0;
    u64 argmin = 0;
    double final_sum = 0;   // S(y0)
    double tail_bound = 0;  // 2 sqrt(p) ln p / y0
    u64 y0_used = 0;
};

// Scans sum_{n<=y} chi_p(n)/n up to y0 (default ceil(4 p^{3/2})) and certifies
// positivity for all y via the Polya-Vinogradov tail bound. On certificate
// failure y0 escalates tenfold up to y0_cap.
HarmonicCertificate harmonic_positive_certified(u64 p, const arith::PrimeTable& table,
                                                u64 y0 = 0, u64 y0_cap = 0);

// Smallest n >= 2 with chi_p(n) = -1; always prime.
u64 least_qnr(u64 p, const arith::PrimeTable& table);

struct ScanRecord {
    u64 p = 0;
    bool in_lplus = false;
    bool harmonic_positive = false;
    bool certified = false;
    u64 least_qnr = 0;
    i64 min_fsum = 0;
    double min_hsum = 0;
};

struct ScanAggregate {
    u64 prime_count = 0;
    double lplus_fraction = 0;      // density of L+ in (x, 2x]
    double certified_fraction = 0;  // empirical P~_x
};

struct ScanOptions {
    u64 y0 = 0;     // 0 = default per prime
    u64 y0_cap = 0; // 0 = default
};

struct ScanResult {
    std::vector<ScanRecord> records;
    ScanAggregate aggregate;
};

// One record per prime in (x, 2x].
ScanResult scan_primes(u64 x, const arith::PrimeTable& table, const ScanOptions& options = {});

// CSV emission per the fixed schema
// p,in_lplus,harmonic_positive,certified,least_qnr,min_fsum,min_hsum.
std::string scan_csv_header();
std::string scan_csv_row(const ScanRecord& r);

// Prescribed Legendre symbols at -1 and every prime q <= N; k = 8 prod_{2<q<=N} q.
struct ResidueSpec {
    u64 N = 0;
    std::map<i64, int> signs; // keys: -1 and each prime <= N
};

u64 residue_spec_modulus(u64 N); // k

// The residues l mod k (sorted) such that every prime p = l (mod k) satisfies
// (q/p) = signs(q) for all primes q <= N and (-1/p) = signs(-1). Derived
// symbolically from quadratic reciprocity; |result| = phi(k) / 2^{pi(N)+1}.
std::vector<u64> residue_set(const ResidueSpec& spec);

// Average over primes p in (x, 2x] of (sum_{n<=y} coeffs[n] chi_p(n))^q,
// coeffs indexed from 1, q even.
double empirical_char_moment(u64 x, u64 y, const std::vector<double>& coeffs, unsigned q,
                             const arith::PrimeTable& table);

} // namespace rmflab::characters
