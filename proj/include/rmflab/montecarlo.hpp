#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "rmflab/prime_table.hpp"
#include "rmflab/randmult.hpp"
#include "rmflab/smooth.hpp"

namespace rmflab::montecarlo {

using arith::i64;
using arith::u64;

enum class Mode { monte_carlo, exhaustive };

// Point estimate of a probability with Wilson interval. In exhaustive mode
// trials = 2^(#free primes) and the interval is degenerate.
struct Estimate {
    double p_hat = 0;
    u64 successes = 0;
    u64 trials = 0;
    double ci_low = 0;
    double ci_high = 0;
    u64 seed = 0;
    Mode mode = Mode::monte_carlo;
};

struct CovarianceEstimate {
    double value = 0;
    double std_error = 0;
    u64 trials = 0;
    u64 d = 0;
    Mode mode = Mode::monte_carlo;
};

// Siegel-zero configuration for the covariance term; e0 = 1 requires beta1.
struct SiegelConfig {
    int e0 = 0;
    std::optional<double> beta1;
};

struct Options {
    u64 trials = 0;
    u64 seed = 0;
    bool exhaustive = false;
    unsigned threads = 1;
    double z = 1.96;
};

// Wilson score interval, clipped to [0,1].
std::pair<double, double> wilson_interval(u64 successes, u64 trials, double z);

// Prob(f in L_x^+ | f(p) = 1 for p <= y): fraction of models with all partial
// sums of f(n) up to x nonnegative.
Estimate estimate_conditional_lplus(u64 x, u64 y, const Options& opt,
                                    const arith::PrimeTable& table);

// Prob(sum_{n<=x} f(n)/n < 0).
Estimate estimate_negative_harmonic(u64 x, const Options& opt, const arith::PrimeTable& table);

// Truncated event A: all harmonic partial sums up to the cutoff strictly
// positive. Over-estimates P (the truncated event is a superset of A) and is
// nonincreasing in the cutoff.
Estimate estimate_event_A(u64 cutoff, const Options& opt, const arith::PrimeTable& table);

// Cov(1_A, f(d)) for square-free d, A truncated at the cutoff.
CovarianceEstimate estimate_cov_A_fd(u64 d, u64 cutoff, const Options& opt,
                                     const arith::PrimeTable& table);

// Prob(|sum over square-free y-rough n in (1,x] of f(n) Psi*(x/n,y)| > delta Psi*(x,y)),
// with f(p) = +1 forced for p <= y.
Estimate estimate_deviation(u64 x, u64 y, double delta, const Options& opt,
                            const smooth::SmoothContext& ctx);

} // namespace rmflab::montecarlo
