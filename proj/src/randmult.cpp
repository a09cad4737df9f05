#include "rmflab/randmult.hpp"

#include <cmath>
#include <stdexcept>

namespace rmflab::randmult {

namespace {

bool is_prime_small(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Kahan accumulator.
struct Kahan {
    double sum = 0, c = 0;
    void add(double v) {
        double t = v - c;
        double u = sum + t;
        c = (u - sum) - t;
        sum = u;
    }
};

// f(n) for n = 2..x streamed off the spf table.
template <class Step>
void stream_f(const SignModel& model, u64 x, const arith::PrimeTable& table, Step&& step) {
    if (x > table.limit()) throw std::out_of_range("sign stream: x exceeds table limit");
    step(u64(1), 1);
    for (u64 n = 2; n <= x; ++n) {
        u64 m = n;
        int s = 1;
        while (m > 1) {
            u64 p = table.spf(m);
            int sp = model.sign_at_prime(p);
            while (m % p == 0) { m /= p; s *= sp; }
        }
        step(n, s);
    }
}

} // namespace

SignModel sample_model(u64 seed, std::optional<u64> forced_prefix_y,
                       std::map<u64, int> overrides) {
    for (auto& [p, s] : overrides) {
        if (!is_prime_small(p))
            throw std::invalid_argument("sample_model: override key " + std::to_string(p) +
                                        " is not prime");
        if (s != 1 && s != -1)
            throw std::invalid_argument("sample_model: override sign must be +/-1");
    }
    SignModel m;
    m.seed = seed;
    m.forced_prefix_y = forced_prefix_y;
    m.overrides = std::move(overrides);
    return m;
}

int f_at(const SignModel& model, u64 n, const arith::PrimeTable& table) {
    if (n < 1) throw std::invalid_argument("f_at: need n >= 1");
    int s = 1;
    for (auto [p, e] : arith::factorize(n, table))
        if (e % 2 == 1) s *= model.sign_at_prime(p);
    return s;
}

PrefixScan prefix_scan(const SignModel& model, u64 x, const arith::PrimeTable& table) {
    if (x < 1) throw std::invalid_argument("prefix_scan: need x >= 1");
    PrefixScan scan;
    scan.x = x;
    i64 sum = 0;
    i64 min_prefix = 0;
    u64 argmin = 0;
    bool first = true;
    stream_f(model, x, table, [&](u64 n, int s) {
        sum += s;
        if (first || sum < min_prefix) {
            min_prefix = sum;
            argmin = n;
            first = false;
        }
    });
    scan.final_sum = sum;
    scan.min_prefix = min_prefix;
    scan.argmin = argmin;
    scan.all_nonneg = min_prefix >= 0;
    scan.all_positive = min_prefix > 0;
    return scan;
}

HarmonicScan harmonic_scan(const SignModel& model, u64 x, const arith::PrimeTable& table) {
    if (x < 1) throw std::invalid_argument("harmonic_scan: need x >= 1");
    HarmonicScan scan;
    scan.x = x;
    Kahan sum;
    double min_prefix = 0;
    u64 argmin = 0;
    bool first = true;
    stream_f(model, x, table, [&](u64 n, int s) {
        sum.add(double(s) / double(n));
        if (first || sum.sum < min_prefix) {
            min_prefix = sum.sum;
            argmin = n;
            first = false;
        }
    });
    scan.final_sum = sum.sum;
    scan.min_prefix = min_prefix;
    scan.argmin = argmin;
    scan.all_nonneg = min_prefix >= 0;
    scan.all_positive = min_prefix > 0;
    return scan;
}

ElementaryDecomposition elementary_decomposition(const SignModel& model, u64 x,
                                                 const arith::PrimeTable& table) {
    if (x < 1) throw std::invalid_argument("elementary_decomposition: need x >= 1");
    ElementaryDecomposition dec;
    Kahan harmonic, frac;
    i64 g_sum = 0;
    i64 prime_pairs = 0;
    stream_f(model, x, table, [&](u64 n, int s) {
        harmonic.add(double(s) / double(n));
        u64 q = x / n;
        g_sum += i64(s) * i64(q);
        frac.add(double(s) * (double(x) / double(n) - double(q)));
        if (table.is_prime(n)) prime_pairs += 1 + s;
    });
    dec.harmonic = harmonic.sum;
    dec.g_sum = g_sum;
    dec.frac_sum = frac.sum;
    dec.prime_pair_sum = prime_pairs;
    dec.residual = std::abs(dec.harmonic - (double(g_sum) + dec.frac_sum) / double(x));
    return dec;
}

RoughDecomposition rough_decomposition(const SignModel& model, u64 x,
                                       const smooth::SmoothContext& ctx) {
    const u64 y = ctx.y;
    for (u64 p : ctx.smooth_primes)
        if (model.sign_at_prime(p) != 1)
            throw std::invalid_argument(
                "rough_decomposition: model must force f(p) = +1 for all p <= y");

    const arith::PrimeTable& table = *ctx.table;
    RoughDecomposition dec;
    dec.lhs = prefix_scan(model, x, table).final_sum;

    // rhs = Psi*(x,y) + sum over square-free y-rough n in (1, x] of f(n) Psi*(x/n, y).
    i64 rhs = i64(smooth::psi_star(x, ctx));
    std::vector<u64> rough = table.primes_in(y, x);
    auto rec = [&](auto&& self, size_t i, u64 n, int sign) -> void {
        if (n > 1) rhs += i64(sign) * i64(smooth::psi_star(x / n, ctx));
        for (size_t j = i; j < rough.size(); ++j) {
            u64 p = rough[j];
            if (p > x / n) break;
            self(self, j + 1, n * p, sign * model.sign_at_prime(p));
        }
    };
    rec(rec, 0, 1, 1);
    dec.rhs = rhs;
    return dec;
}

} // namespace rmflab::randmult

namespace rmflab::arith {

double prime_recip_sum(const randmult::SignModel& model, u64 x, const PrimeTable& table) {
    if (x < 2) throw std::invalid_argument("prime_recip_sum: need x >= 2");
    double sum = 0, c = 0;
    for (u64 p : table.primes_in(0, x)) {
        double v = double(model.sign_at_prime(p)) / double(p);
        double t = v - c;
        double u = sum + t;
        c = (u - sum) - t;
        sum = u;
    }
    return sum;
}

} // namespace rmflab::arith
