#include "rmflab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "rmflab/randmult.hpp"

namespace rmflab::analysis {

CoefficientSeq::CoefficientSeq(std::map<u64, double> values) : values_(std::move(values)) {
    for (auto& [n, v] : values_) {
        if (n < 1) throw std::invalid_argument("CoefficientSeq: support must be positive");
        if (std::abs(v) > 1.0 + 1e-12)
            throw std::invalid_argument("CoefficientSeq: |b(n)| must be <= 1");
    }
}

namespace {

// Odd-exponent prime mask of n over Q.primes; error when a prime factor of n
// is outside Q.
u64 mask_over(u64 n, const FinitePrimeModel& Q, const arith::PrimeTable& table) {
    u64 mask = 0;
    for (auto [p, e] : arith::factorize(n, table)) {
        auto it = std::lower_bound(Q.primes.begin(), Q.primes.end(), p);
        if (it == Q.primes.end() || *it != p)
            throw std::invalid_argument("support element " + std::to_string(n) +
                                        " does not factor over Q");
        if (e % 2 == 1) mask |= u64(1) << (it - Q.primes.begin());
    }
    return mask;
}

struct MaskedSeq {
    std::vector<u64> masks;
    std::vector<double> values;
};

} // namespace

ExpectationResult exact_expectation_product(const std::vector<CoefficientSeq>& bs,
                                            const FinitePrimeModel& Q,
                                            const arith::PrimeTable& table) {
    if (bs.empty()) throw std::invalid_argument("exact_expectation_product: empty sequence list");
    FinitePrimeModel sortedQ = Q;
    std::sort(sortedQ.primes.begin(), sortedQ.primes.end());

    std::vector<MaskedSeq> seqs;
    u64 tuple_count = 1;
    for (const auto& b : bs) {
        MaskedSeq ms;
        for (auto [n, v] : b.values()) {
            ms.masks.push_back(mask_over(n, sortedQ, table));
            ms.values.push_back(v);
        }
        if (ms.masks.empty()) throw std::invalid_argument("exact_expectation_product: empty support");
        tuple_count = arith::checked_mul(tuple_count, ms.masks.size());
        seqs.push_back(std::move(ms));
    }
    if (tuple_count > 200'000'000)
        throw std::length_error("exact_expectation_product: tuple enumeration too large");

    // Multilinear expansion: E[f(n_1 ... n_m)] = 1 iff the product is a
    // perfect square, i.e. the parity masks cancel.
    double expansion = 0;
    auto rec = [&](auto&& self, size_t j, u64 mask, double coeff) -> void {
        if (j == seqs.size()) {
            if (mask == 0) expansion += coeff;
            return;
        }
        const MaskedSeq& ms = seqs[j];
        for (size_t i = 0; i < ms.masks.size(); ++i)
            self(self, j + 1, mask ^ ms.masks[i], coeff * ms.values[i]);
    };
    rec(rec, 0, 0, 1.0);

    ExpectationResult res;
    res.value = expansion;

    if (sortedQ.primes.size() <= 22) {
        u64 patterns = u64(1) << sortedQ.primes.size();
        double total = 0;
        for (u64 pat = 0; pat < patterns; ++pat) {
            double prod = 1.0;
            for (const auto& ms : seqs) {
                double s = 0;
                for (size_t i = 0; i < ms.masks.size(); ++i)
                    s += (std::popcount(ms.masks[i] & pat) % 2 == 0) ? ms.values[i] : -ms.values[i];
                prod *= s;
            }
            total += prod;
        }
        double enumeration = total / double(patterns);
        double scale = std::max({1.0, std::abs(expansion), std::abs(enumeration)});
        if (std::abs(enumeration - expansion) > 1e-12 * scale)
            throw std::logic_error("exact_expectation_product: methods disagree");
        res.cross_checked = true;
    }
    return res;
}

BonamiHalaszCheck bonami_halasz_check(const std::vector<CoefficientSeq>& bs,
                                      const FinitePrimeModel& Q,
                                      const arith::PrimeTable& table) {
    const size_t m = bs.size();
    BonamiHalaszCheck chk;
    chk.lhs = std::abs(exact_expectation_product(bs, Q, table).value);

    double prod = 1.0;
    for (const auto& b : bs) {
        double s = 0;
        for (auto [n, v] : b.values()) {
            u64 omega = arith::multiplicative_invariants(n, table).omega;
            double w;
            if (m == 1) {
                w = (omega == 0) ? 1.0 : 0.0; // 0^0 = 1
            } else {
                w = std::pow(double(m - 1), double(omega));
            }
            s += v * v * w;
        }
        prod *= s;
    }
    chk.rhs = std::sqrt(prod);
    chk.holds = chk.lhs <= chk.rhs + 1e-12;
    return chk;
}

double hoeffding_bound(const std::vector<std::pair<double, double>>& ranges, double t) {
    if (!(t > 0)) throw std::invalid_argument("hoeffding_bound: need t > 0");
    double denom = 0;
    for (auto [a, b] : ranges) {
        if (b < a) throw std::invalid_argument("hoeffding_bound: need b_i >= a_i");
        denom += (b - a) * (b - a);
    }
    if (denom == 0) return 0.0;
    return 2.0 * std::exp(-2.0 * t * t / denom);
}

std::complex<double> halasz_F(const randmult::SignModel& model, u64 x,
                              double t, const arith::PrimeTable& table) {
    if (x < 2) throw std::invalid_argument("halasz_F: need x >= 2");
    std::complex<double> prod = 1.0;
    for (u64 p : table.primes_in(0, x)) {
        double lp = std::log(double(p));
        // p^{-(1+it)} = exp(-(1+it) log p)
        std::complex<double> ps = std::exp(std::complex<double>(-lp, -t * lp));
        prod *= 1.0 / (1.0 - double(model.sign_at_prime(p)) * ps);
    }
    return prod;
}

double halasz_L(const randmult::SignModel& model, u64 x, double grid_resolution,
                const arith::PrimeTable& table) {
    if (!(grid_resolution > 0 && grid_resolution <= 1.0 / 16.0))
        throw std::invalid_argument("halasz_L: need 0 < resolution <= 1/16");
    const long n_max = std::lround(std::floor(std::pow(std::log(double(x)), 2.0) + 1.0));
    double total = 0;
    for (long N = -n_max; N <= n_max; ++N) {
        double best = 0;
        long steps = std::lround(std::ceil(1.0 / grid_resolution));
        for (long j = 0; j <= steps; ++j) {
            double t = double(N) - 0.5 + double(j) / double(steps);
            best = std::max(best, std::norm(halasz_F(model, x, t, table)));
        }
        total += best / (double(N) * double(N) + 1.0);
    }
    return std::sqrt(total);
}

RatioChecks ratio_checks(const randmult::SignModel& model, u64 x, double eps,
                         const arith::PrimeTable& table) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("ratio_checks: need eps in (0,1)");
    if (x < 2 || x > table.limit()) throw std::out_of_range("ratio_checks: x out of table range");

    RatioChecks rc;
    rc.prop310_cutoff = std::pow(double(x), 0.99);
    rc.conj1_cutoff = std::pow(double(x), eps);

    // Signed sums over n <= x restricted to greatest prime factor <= cutoff.
    double sum310 = 0, sum1 = 0;
    for (u64 n = 1; n <= x; ++n) {
        u64 m = n;
        int sign = 1;
        u64 gpf = 1;
        while (m > 1) {
            u64 p = table.spf(m);
            gpf = p;
            int sp = model.sign_at_prime(p);
            while (m % p == 0) { m /= p; sign *= sp; }
        }
        if (double(gpf) <= rc.prop310_cutoff) sum310 += sign;
        if (double(gpf) <= rc.conj1_cutoff) sum1 += sign;
    }

    auto recip = [&](double cutoff) {
        double s = 0;
        for (u64 p : table.primes_in(0, u64(cutoff)))
            s += double(model.sign_at_prime(p)) / double(p);
        return s;
    };
    rc.prop310_ratio = sum310 / (double(x) * std::exp(recip(rc.prop310_cutoff)));
    rc.conj1_ratio =
        sum1 / ((double(x) / std::log(std::log(double(x)))) * std::exp(recip(rc.conj1_cutoff)));
    return rc;
}

double moment_qnorm(u64 x, unsigned q, MomentMode mode, const arith::PrimeTable& table,
                    u64 trials, u64 seed) {
    if (q % 2 != 0 || q == 0) throw std::invalid_argument("moment_qnorm: q must be even");
    if (x < 1) throw std::invalid_argument("moment_qnorm: need x >= 1");

    if (mode == MomentMode::exact) {
        if (x > 30 || q > 6)
            throw std::invalid_argument("moment_qnorm: exact mode guarded to x <= 30, q <= 6");
        std::vector<u64> ps = table.primes_in(1, x);
        std::vector<u64> masks(x + 1, 0);
        for (u64 n = 2; n <= x; ++n) {
            for (auto [p, e] : arith::factorize(n, table)) {
                if (e % 2 == 0) continue;
                auto it = std::lower_bound(ps.begin(), ps.end(), p);
                masks[n] |= u64(1) << (it - ps.begin());
            }
        }
        // Parity-mask convolution: counts q-tuples whose product is a square.
        std::vector<u64> dist(u64(1) << ps.size(), 0);
        dist[0] = 1;
        for (unsigned step = 0; step < q; ++step) {
            std::vector<u64> next(dist.size(), 0);
            for (u64 m = 0; m < dist.size(); ++m) {
                if (dist[m] == 0) continue;
                for (u64 n = 1; n <= x; ++n) next[m ^ masks[n]] += dist[m];
            }
            dist = std::move(next);
        }
        return std::pow(double(dist[0]), 1.0 / double(q));
    }

    if (trials == 0) throw std::invalid_argument("moment_qnorm: monte_carlo mode needs trials");
    double total = 0;
    for (u64 t = 0; t < trials; ++t) {
        randmult::SignModel m = randmult::sample_model(randmult::derive_seed(seed, t));
        double s = double(randmult::prefix_scan(m, x, table).final_sum);
        total += std::pow(s, double(q));
    }
    return std::pow(total / double(trials), 1.0 / double(q));
}

} // namespace rmflab::analysis
