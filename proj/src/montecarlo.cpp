#include "rmflab/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rmflab::montecarlo {

using arith::u32;

namespace {

constexpr unsigned kExhaustiveMax = 22; // <= 4.2M sign patterns

// Odd-exponent prime mask of n over the free-prime list (bit i = free_primes[i]).
// Primes of n outside the free list are assumed forced +1.
u64 parity_mask(u64 n, const std::vector<u64>& free_primes, const arith::PrimeTable& table) {
    u64 mask = 0;
    for (auto [p, e] : arith::factorize(n, table)) {
        if (e % 2 == 0) continue;
        auto it = std::lower_bound(free_primes.begin(), free_primes.end(), p);
        if (it != free_primes.end() && *it == p)
            mask |= u64(1) << (it - free_primes.begin());
    }
    return mask;
}

Estimate finish(u64 successes, u64 trials, u64 seed, Mode mode, double z) {
    Estimate e;
    e.successes = successes;
    e.trials = trials;
    e.seed = seed;
    e.mode = mode;
    e.p_hat = trials ? double(successes) / double(trials) : 0.0;
    if (mode == Mode::exhaustive) {
        e.ci_low = e.ci_high = e.p_hat;
    } else {
        std::tie(e.ci_low, e.ci_high) = wilson_interval(successes, trials, z);
    }
    return e;
}

// Deterministic trial runner: trial t gets seed derive_seed(master, t);
// success counts are integers, so the merge is independent of scheduling.
template <class Trial>
u64 run_trials(u64 trials, u64 master_seed, unsigned threads, Trial&& trial) {
    if (trials == 0) throw std::invalid_argument("run_trials: need trials >= 1");
    threads = std::max(1u, threads);
    if (threads == 1) {
        u64 successes = 0;
        for (u64 t = 0; t < trials; ++t)
            if (trial(randmult::derive_seed(master_seed, t))) ++successes;
        return successes;
    }
    std::vector<u64> partial(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            u64 s = 0;
            for (u64 t = w; t < trials; t += threads)
                if (trial(randmult::derive_seed(master_seed, t))) ++s;
            partial[w] = s;
        });
    }
    for (auto& th : pool) th.join();
    u64 total = 0;
    for (u64 s : partial) total += s;
    return total;
}

void check_exhaustive_size(size_t free_primes) {
    if (free_primes > kExhaustiveMax)
        throw std::invalid_argument("exhaustive mode limited to " +
                                    std::to_string(kExhaustiveMax) + " free primes, got " +
                                    std::to_string(free_primes));
}

} // namespace

std::pair<double, double> wilson_interval(u64 successes, u64 trials, double z) {
    if (trials < 1 || successes > trials || !(z > 0))
        throw std::invalid_argument("wilson_interval: bad arguments");
    double n = double(trials);
    double p = double(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return {std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
}

Estimate estimate_conditional_lplus(u64 x, u64 y, const Options& opt,
                                    const arith::PrimeTable& table) {
    // y >= x is allowed: every sign is forced +1 and the probability is 1.
    if (y < 2 || x < 1) throw std::invalid_argument("estimate_conditional_lplus: need y >= 2, x >= 1");

    if (opt.exhaustive) {
        std::vector<u64> free_primes = table.primes_in(y, x);
        check_exhaustive_size(free_primes.size());
        std::vector<u64> masks(x + 1, 0);
        for (u64 n = 2; n <= x; ++n) masks[n] = parity_mask(n, free_primes, table);
        u64 patterns = u64(1) << free_primes.size();
        u64 successes = 0;
        for (u64 pat = 0; pat < patterns; ++pat) {
            i64 sum = 0;
            bool ok = true;
            for (u64 n = 1; n <= x; ++n) {
                sum += (std::popcount(masks[n] & pat) % 2 == 0) ? 1 : -1;
                if (sum < 0) { ok = false; break; }
            }
            if (ok) ++successes;
        }
        return finish(successes, patterns, opt.seed, Mode::exhaustive, opt.z);
    }

    u64 successes = run_trials(opt.trials, opt.seed, opt.threads, [&](u64 trial_seed) {
        randmult::SignModel m = randmult::sample_model(trial_seed, y);
        return randmult::prefix_scan(m, x, table).all_nonneg;
    });
    return finish(successes, opt.trials, opt.seed, Mode::monte_carlo, opt.z);
}

Estimate estimate_negative_harmonic(u64 x, const Options& opt, const arith::PrimeTable& table) {
    if (x < 2) throw std::invalid_argument("estimate_negative_harmonic: need x >= 2");

    if (opt.exhaustive) {
        std::vector<u64> free_primes = table.primes_in(1, x);
        check_exhaustive_size(free_primes.size());
        std::vector<u64> masks(x + 1, 0);
        for (u64 n = 2; n <= x; ++n) masks[n] = parity_mask(n, free_primes, table);
        u64 patterns = u64(1) << free_primes.size();
        u64 successes = 0;
        for (u64 pat = 0; pat < patterns; ++pat) {
            double sum = 0;
            for (u64 n = 1; n <= x; ++n)
                sum += ((std::popcount(masks[n] & pat) % 2 == 0) ? 1.0 : -1.0) / double(n);
            if (sum < 0) ++successes;
        }
        return finish(successes, patterns, opt.seed, Mode::exhaustive, opt.z);
    }

    u64 successes = run_trials(opt.trials, opt.seed, opt.threads, [&](u64 trial_seed) {
        randmult::SignModel m = randmult::sample_model(trial_seed);
        return randmult::harmonic_scan(m, x, table).final_sum < 0;
    });
    return finish(successes, opt.trials, opt.seed, Mode::monte_carlo, opt.z);
}

Estimate estimate_event_A(u64 cutoff, const Options& opt, const arith::PrimeTable& table) {
    if (cutoff < 1) throw std::invalid_argument("estimate_event_A: need cutoff >= 1");

    if (opt.exhaustive) {
        std::vector<u64> free_primes = table.primes_in(1, cutoff);
        check_exhaustive_size(free_primes.size());
        std::vector<u64> masks(cutoff + 1, 0);
        for (u64 n = 2; n <= cutoff; ++n) masks[n] = parity_mask(n, free_primes, table);
        u64 patterns = u64(1) << free_primes.size();
        u64 successes = 0;
        for (u64 pat = 0; pat < patterns; ++pat) {
            double sum = 0;
            bool ok = true;
            for (u64 n = 1; n <= cutoff; ++n) {
                sum += ((std::popcount(masks[n] & pat) % 2 == 0) ? 1.0 : -1.0) / double(n);
                if (!(sum > 0)) { ok = false; break; }
            }
            if (ok) ++successes;
        }
        return finish(successes, patterns, opt.seed, Mode::exhaustive, opt.z);
    }

    u64 successes = run_trials(opt.trials, opt.seed, opt.threads, [&](u64 trial_seed) {
        randmult::SignModel m = randmult::sample_model(trial_seed);
        return randmult::harmonic_scan(m, cutoff, table).all_positive;
    });
    return finish(successes, opt.trials, opt.seed, Mode::monte_carlo, opt.z);
}

CovarianceEstimate estimate_cov_A_fd(u64 d, u64 cutoff, const Options& opt,
                                     const arith::PrimeTable& table) {
    if (d < 1) throw std::invalid_argument("estimate_cov_A_fd: need d >= 1");
    for (auto [p, e] : arith::factorize(d, table))
        if (e > 1) throw std::invalid_argument("estimate_cov_A_fd: d must be square-free");

    CovarianceEstimate cov;
    cov.d = d;
    if (d == 1) {
        // f(1) is the constant 1, so Cov(1_A, f(1)) = 0 identically.
        cov.trials = opt.exhaustive ? 0 : opt.trials;
        cov.mode = opt.exhaustive ? Mode::exhaustive : Mode::monte_carlo;
        return cov;
    }

    if (opt.exhaustive) {
        std::vector<u64> free_primes = table.primes_in(1, cutoff);
        for (auto [p, e] : arith::factorize(d, table))
            if (!std::binary_search(free_primes.begin(), free_primes.end(), p))
                free_primes.push_back(p);
        std::sort(free_primes.begin(), free_primes.end());
        check_exhaustive_size(free_primes.size());
        std::vector<u64> masks(cutoff + 1, 0);
        for (u64 n = 2; n <= cutoff; ++n) masks[n] = parity_mask(n, free_primes, table);
        u64 d_mask = parity_mask(d, free_primes, table);
        u64 patterns = u64(1) << free_primes.size();
        i64 sum_v = 0;
        u64 nonzero = 0;
        for (u64 pat = 0; pat < patterns; ++pat) {
            double sum = 0;
            bool in_a = true;
            for (u64 n = 1; n <= cutoff; ++n) {
                sum += ((std::popcount(masks[n] & pat) % 2 == 0) ? 1.0 : -1.0) / double(n);
                if (!(sum > 0)) { in_a = false; break; }
            }
            if (in_a) {
                sum_v += (std::popcount(d_mask & pat) % 2 == 0) ? 1 : -1;
                ++nonzero;
            }
        }
        cov.trials = patterns;
        cov.mode = Mode::exhaustive;
        cov.value = double(sum_v) / double(patterns);
        cov.std_error = 0;
        return cov;
    }

    // Per-trial value 1_A * f(d) is in {-1, 0, +1}: integer accumulators keep
    // the result independent of the thread count.
    u64 trials = opt.trials;
    if (trials == 0) throw std::invalid_argument("estimate_cov_A_fd: need trials >= 1");
    std::vector<i64> partial_sum(std::max(1u, opt.threads), 0);
    std::vector<u64> partial_nz(std::max(1u, opt.threads), 0);
    unsigned threads = std::max(1u, opt.threads);
    auto work = [&](unsigned w) {
        i64 s = 0;
        u64 nz = 0;
        for (u64 t = w; t < trials; t += threads) {
            randmult::SignModel m = randmult::sample_model(randmult::derive_seed(opt.seed, t));
            if (randmult::harmonic_scan(m, cutoff, table).all_positive) {
                s += randmult::f_at(m, d, table);
                ++nz;
            }
        }
        partial_sum[w] = s;
        partial_nz[w] = nz;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    i64 sum_v = 0;
    u64 nonzero = 0;
    for (unsigned w = 0; w < threads; ++w) { sum_v += partial_sum[w]; nonzero += partial_nz[w]; }

    cov.trials = trials;
    cov.mode = Mode::monte_carlo;
    cov.value = double(sum_v) / double(trials);
    // v^2 = 1_A, so sample variance = nonzero/n - mean^2.
    double var = double(nonzero) / double(trials) - cov.value * cov.value;
    cov.std_error = std::sqrt(std::max(0.0, var) / double(trials));
    return cov;
}

Estimate estimate_deviation(u64 x, u64 y, double delta, const Options& opt,
                            const smooth::SmoothContext& ctx) {
    if (ctx.y != y) throw std::invalid_argument("estimate_deviation: ctx.y != y");
    const arith::PrimeTable& table = *ctx.table;

    // Square-free y-rough n in (1, x] with their Psi*(x/n, y) weights. Each n
    // carries its distinct rough prime factors (indices into rough_primes).
    std::vector<u64> rough_primes = table.primes_in(y, x);
    std::vector<double> weights;
    std::vector<std::vector<u32>> factors;
    std::vector<u32> path;
    auto rec = [&](auto&& self, size_t i, u64 n) -> void {
        if (n > 1) {
            weights.push_back(double(smooth::psi_star(x / n, ctx)));
            factors.push_back(path);
        }
        for (size_t j = i; j < rough_primes.size(); ++j) {
            u64 p = rough_primes[j];
            if (p > x / n) break;
            path.push_back(static_cast<u32>(j));
            self(self, j + 1, n * p);
            path.pop_back();
        }
    };
    rec(rec, 0, 1);
    const double threshold = delta * double(smooth::psi_star(x, ctx));

    if (opt.exhaustive) {
        check_exhaustive_size(rough_primes.size());
        std::vector<u64> masks(factors.size(), 0);
        for (size_t i = 0; i < factors.size(); ++i)
            for (u32 j : factors[i]) masks[i] |= u64(1) << j;
        u64 patterns = u64(1) << rough_primes.size();
        u64 successes = 0;
        for (u64 pat = 0; pat < patterns; ++pat) {
            double s = 0;
            for (size_t i = 0; i < masks.size(); ++i)
                s += (std::popcount(masks[i] & pat) % 2 == 0) ? weights[i] : -weights[i];
            if (std::abs(s) > threshold) ++successes;
        }
        return finish(successes, patterns, opt.seed, Mode::exhaustive, opt.z);
    }

    u64 successes = run_trials(opt.trials, opt.seed, opt.threads, [&](u64 trial_seed) {
        randmult::SignModel m = randmult::sample_model(trial_seed, y);
        std::vector<int> prime_sign(rough_primes.size());
        for (size_t j = 0; j < rough_primes.size(); ++j)
            prime_sign[j] = m.sign_at_prime(rough_primes[j]);
        double s = 0;
        for (size_t i = 0; i < factors.size(); ++i) {
            int sign = 1;
            for (u32 j : factors[i]) sign *= prime_sign[j];
            s += sign * weights[i];
        }
        return std::abs(s) > threshold;
    });
    return finish(successes, opt.trials, opt.seed, Mode::monte_carlo, opt.z);
}

} // namespace rmflab::montecarlo
