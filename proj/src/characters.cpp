#include "rmflab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rmflab::characters {

CharacterContext::CharacterContext(u64 p) : p_(p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("CharacterContext: p must be an odd prime");
    chi_.assign(p, -1);
    chi_[0] = 0;
    for (u64 r = 1; r < p; ++r) chi_[(r * r) % p] = 1;
}

int jacobi_symbol(i64 a, u64 n) {
    if (n % 2 == 0 || n < 1) throw std::invalid_argument("jacobi_symbol: n must be odd and >= 1");
    i64 am = a % i64(n);
    if (am < 0) am += i64(n);
    u64 x = u64(am);
    int result = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            u64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3) result = -result;
        x %= n;
    }
    return n == 1 ? result : 0;
}

int extended_symbol(i64 m, u64 n, const arith::PrimeTable& table) {
    if (n < 1) throw std::invalid_argument("extended_symbol: need n >= 1");
    int result = 1;
    for (auto [p, e] : arith::factorize(n, table)) {
        int s;
        if (p == 2) {
            s = (m % 2 != 0) ? 1 : 0;
        } else {
            s = jacobi_symbol(m, p);
        }
        if (s == 0) return 0;
        if (e % 2 == 1) result *= s;
    }
    return result;
}

LplusResult lplus_member(u64 p, const arith::PrimeTable& table) {
    if (!table.is_prime(p) || p % 2 == 0)
        throw std::invalid_argument("lplus_member: p must be an odd prime");
    CharacterContext ctx(p);
    LplusResult res;
    i64 sum = 0;
    bool first = true;
    for (u64 n = 1; n <= p; ++n) {
        sum += ctx.chi(n);
        if (first || sum < res.min_fsum) {
            res.min_fsum = sum;
            res.argmin = n;
            first = false;
        }
    }
    res.member = res.min_fsum >= 0;
    return res;
}

u64 least_qnr(u64 p, const arith::PrimeTable& table) {
    if (!table.is_prime(p) || p % 2 == 0)
        throw std::invalid_argument("least_qnr: p must be an odd prime");
    CharacterContext ctx(p);
    for (u64 n = 2; n < p; ++n)
        if (ctx.chi(n) == -1) return n;
    throw std::logic_error("least_qnr: no nonresidue found"); // impossible for p >= 3
}

HarmonicCertificate harmonic_positive_certified(u64 p, const arith::PrimeTable& table, u64 y0,
                                                u64 y0_cap) {
    if (!table.is_prime(p) || p % 2 == 0)
        throw std::invalid_argument("harmonic_positive_certified: p must be an odd prime");
    const double sp = std::sqrt(double(p));
    if (y0 == 0) y0 = static_cast<u64>(std::ceil(4.0 * double(p) * sp));
    if (y0_cap == 0) y0_cap = y0 * 100;

    CharacterContext ctx(p);
    HarmonicCertificate cert;
    double sum = 0, c = 0;
    double min_hsum = 0;
    u64 argmin = 0;
    bool first = true, all_positive = true;
    u64 scanned = 0;

    while (true) {
        for (u64 n = scanned + 1; n <= y0; ++n) {
            double t = double(ctx.chi(n)) / double(n) - c;
            double u = sum + t;
            c = (u - sum) - t;
            sum = u;
            if (first || sum < min_hsum) {
                min_hsum = sum;
                argmin = n;
                first = false;
            }
            if (!(sum > 0)) all_positive = false;
        }
        scanned = y0;
        cert.final_sum = sum;
        cert.tail_bound = 2.0 * sp * std::log(double(p)) / double(y0);
        cert.y0_used = y0;
        cert.certified = cert.final_sum > cert.tail_bound;
        if (cert.certified || y0 >= y0_cap) break;
        y0 = std::min(y0_cap, y0 * 10);
    }
    cert.min_hsum = min_hsum;
    cert.argmin = argmin;
    cert.positive = all_positive && cert.certified;
    return cert;
}

ScanResult scan_primes(u64 x, const arith::PrimeTable& table, const ScanOptions& options) {
    if (2 * x > table.limit()) throw std::out_of_range("scan_primes: 2x exceeds table limit");
    ScanResult result;
    u64 lplus_count = 0, cert_count = 0;
    for (u64 p : table.primes_in(x, 2 * x)) {
        ScanRecord rec;
        rec.p = p;
        LplusResult lp = lplus_member(p, table);
        rec.in_lplus = lp.member;
        rec.min_fsum = lp.min_fsum;
        HarmonicCertificate hc = harmonic_positive_certified(p, table, options.y0, options.y0_cap);
        rec.harmonic_positive = hc.positive;
        rec.certified = hc.certified;
        rec.min_hsum = hc.min_hsum;
        rec.least_qnr = least_qnr(p, table);
        if (rec.in_lplus) ++lplus_count;
        if (rec.harmonic_positive) ++cert_count;
        result.records.push_back(rec);
    }
    result.aggregate.prime_count = result.records.size();
    if (!result.records.empty()) {
        result.aggregate.lplus_fraction = double(lplus_count) / double(result.records.size());
        result.aggregate.certified_fraction = double(cert_count) / double(result.records.size());
    }
    return result;
}

std::string scan_csv_header() {
    return "p,in_lplus,harmonic_positive,certified,least_qnr,min_fsum,min_hsum";
}

std::string scan_csv_row(const ScanRecord& r) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%d,%llu,%lld,%.17g",
                  static_cast<unsigned long long>(r.p), r.in_lplus ? 1 : 0,
                  r.harmonic_positive ? 1 : 0, r.certified ? 1 : 0,
                  static_cast<unsigned long long>(r.least_qnr),
                  static_cast<long long>(r.min_fsum), r.min_hsum);
    return buf;
}

namespace {

std::vector<u64> odd_primes_upto(u64 N) {
    std::vector<u64> qs;
    for (u64 q = 3; q <= N; q += 2) {
        bool prime = true;
        for (u64 d = 3; d * d <= q; d += 2)
            if (q % d == 0) { prime = false; break; }
        if (prime) qs.push_back(q);
    }
    return qs;
}

} // namespace

u64 residue_spec_modulus(u64 N) {
    if (N < 3 || N > 43) throw std::invalid_argument("residue_spec_modulus: need 3 <= N <= 43");
    u64 k = 8;
    for (u64 q : odd_primes_upto(N)) k = arith::checked_mul(k, q);
    return k;
}

std::vector<u64> residue_set(const ResidueSpec& spec) {
    const u64 N = spec.N;
    const u64 k = residue_spec_modulus(N);
    std::vector<u64> qs = odd_primes_upto(N);

    auto sign_of = [&](i64 key) {
        auto it = spec.signs.find(key);
        if (it == spec.signs.end())
            throw std::invalid_argument("residue_set: missing sign for key " + std::to_string(key));
        if (it->second != 1 && it->second != -1)
            throw std::invalid_argument("residue_set: signs must be +/-1");
        return it->second;
    };
    const int s_minus1 = sign_of(-1);
    const int s_two = sign_of(2);
    for (u64 q : qs) sign_of(i64(q)); // validate presence up front

    std::vector<u64> result;
    // Conditions factor through l mod 8 and l mod q; the only coupling is the
    // reciprocity sign, which depends on l mod 4.
    for (u64 r8 : {1, 3, 5, 7}) {
        // (-1/p) = +1 iff p = 1 (mod 4); (2/p) = +1 iff p = +/-1 (mod 8).
        if (((r8 % 4 == 1) ? 1 : -1) != s_minus1) continue;
        if (((r8 == 1 || r8 == 7) ? 1 : -1) != s_two) continue;

        // For odd q: (q/p) = eps * (p/q), eps = -1 iff q = 3 (mod 4) and p = 3 (mod 4).
        std::vector<std::vector<u64>> allowed(qs.size());
        for (size_t i = 0; i < qs.size(); ++i) {
            u64 q = qs[i];
            int eps = (q % 4 == 3 && r8 % 4 == 3) ? -1 : 1;
            int want = sign_of(i64(q)) * eps; // required value of (l/q)
            for (u64 a = 1; a < q; ++a)
                if (jacobi_symbol(i64(a), q) == want) allowed[i].push_back(a);
        }

        // CRT combination across [8, q_1, ..., q_r].
        std::vector<u64> partial{r8};
        u64 mod = 8;
        for (size_t i = 0; i < qs.size(); ++i) {
            u64 q = qs[i];
            std::vector<u64> next;
            next.reserve(partial.size() * allowed[i].size());
            for (u64 l : partial) {
                for (u64 a : allowed[i]) {
                    // solve z = l (mod mod), z = a (mod q)
                    u64 z = l;
                    while (z % q != a) z += mod;
                    next.push_back(z);
                }
            }
            partial = std::move(next);
            mod *= q;
            if (partial.size() > 10'000'000)
                throw std::length_error("residue_set: result too large");
        }
        result.insert(result.end(), partial.begin(), partial.end());
    }
    std::sort(result.begin(), result.end());
    (void)k;
    return result;
}

double empirical_char_moment(u64 x, u64 y, const std::vector<double>& coeffs, unsigned q,
                             const arith::PrimeTable& table) {
    if (q % 2 != 0 || q == 0) throw std::invalid_argument("empirical_char_moment: q must be even");
    if (coeffs.size() < y + 1)
        throw std::invalid_argument("empirical_char_moment: coeffs must cover 1..y");
    for (u64 n = 1; n <= y; ++n)
        if (std::abs(coeffs[n]) > 1.0 + 1e-12)
            throw std::invalid_argument("empirical_char_moment: |coeffs| must be <= 1");

    double total = 0;
    u64 count = 0;
    for (u64 p : table.primes_in(x, 2 * x)) {
        CharacterContext ctx(p);
        double s = 0;
        for (u64 n = 1; n <= y; ++n) s += coeffs[n] * double(ctx.chi(n));
        total += std::pow(s, double(q));
        ++count;
    }
    if (count == 0) throw std::invalid_argument("empirical_char_moment: no primes in (x, 2x]");
    return total / double(count);
}

} // namespace rmflab::characters
