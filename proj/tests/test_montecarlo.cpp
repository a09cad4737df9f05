#include "doctest.h"

#include <cmath>
#include <map>

#include "rmflab/montecarlo.hpp"

using namespace rmflab;
using arith::i64;
using arith::u64;

namespace {
const arith::PrimeTable& table() {
    static const arith::PrimeTable t(1'000'000);
    return t;
}

// Independent oracle: iterate over all sign assignments on the free primes by
// building explicit override models, evaluate `pred`, return success fraction.
template <class Pred>
double pattern_fraction(const std::vector<u64>& free_primes, std::optional<u64> forced_y,
                        Pred&& pred) {
    u64 patterns = u64(1) << free_primes.size();
    u64 hits = 0;
    for (u64 pat = 0; pat < patterns; ++pat) {
        std::map<u64, int> ov;
        for (size_t j = 0; j < free_primes.size(); ++j)
            ov[free_primes[j]] = (pat >> j) & 1 ? -1 : +1;
        if (pred(randmult::sample_model(0, forced_y, ov))) ++hits;
    }
    return double(hits) / double(patterns);
}
} // namespace

TEST_CASE("wilson_interval") {
    auto [lo, hi] = montecarlo::wilson_interval(50, 100, 1.96);
    CHECK(lo == doctest::Approx(0.40383).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.59617).epsilon(1e-3));
    CHECK(lo < 0.5);
    CHECK(hi > 0.5);

    auto [l1, h1] = montecarlo::wilson_interval(100, 100, 1.96);
    CHECK(h1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l1 > 0.9);
    auto [l0, h0] = montecarlo::wilson_interval(0, 100, 1.96);
    CHECK(l0 == 0.0);
    CHECK(h0 < 0.1);

    // symmetry: interval for k successes mirrors n-k failures
    auto [la, ha] = montecarlo::wilson_interval(30, 100, 2.5);
    auto [lb, hb] = montecarlo::wilson_interval(70, 100, 2.5);
    CHECK(la == doctest::Approx(1.0 - hb).epsilon(1e-12));
    CHECK(ha == doctest::Approx(1.0 - lb).epsilon(1e-12));

    CHECK_THROWS_AS(montecarlo::wilson_interval(5, 0, 1.96), std::invalid_argument);
    CHECK_THROWS_AS(montecarlo::wilson_interval(5, 4, 1.96), std::invalid_argument);
}

TEST_CASE("estimate_conditional_lplus exhaustive") {
    montecarlo::Options ex;
    ex.exhaustive = true;

    auto e = montecarlo::estimate_conditional_lplus(5, 2, ex, table());
    CHECK(e.p_hat == 1.0);
    CHECK(e.trials == 4); // free primes 3, 5
    CHECK(e.mode == montecarlo::Mode::exhaustive);
    CHECK(e.ci_low == e.ci_high);

    // y >= x: no free primes, probability exactly 1
    auto e1 = montecarlo::estimate_conditional_lplus(10, 10, ex, table());
    CHECK(e1.p_hat == 1.0);
    CHECK(e1.trials == 1);
    CHECK(montecarlo::estimate_conditional_lplus(10, 50, ex, table()).p_hat == 1.0);

    // oracle agreement on small cases
    for (auto [x, y] : std::vector<std::pair<u64, u64>>{{8, 2}, {12, 3}, {12, 2}, {20, 7}}) {
        auto est = montecarlo::estimate_conditional_lplus(x, y, ex, table());
        double truth = pattern_fraction(table().primes_in(y, x), y, [&](const auto& m) {
            return randmult::prefix_scan(m, x, table()).all_nonneg;
        });
        CHECK(est.p_hat == truth);
    }

    CHECK_THROWS_AS(montecarlo::estimate_conditional_lplus(100, 1, ex, table()),
                    std::invalid_argument);
}

TEST_CASE("estimate_negative_harmonic exhaustive") {
    montecarlo::Options ex;
    ex.exhaustive = true;
    CHECK(montecarlo::estimate_negative_harmonic(3, ex, table()).p_hat == 0.0);
    CHECK(montecarlo::estimate_negative_harmonic(4, ex, table()).p_hat == 0.0);

    for (u64 x : {6ULL, 10ULL, 16ULL}) {
        auto est = montecarlo::estimate_negative_harmonic(x, ex, table());
        double truth = pattern_fraction(table().primes_in(1, x), std::nullopt, [&](const auto& m) {
            return randmult::harmonic_scan(m, x, table()).final_sum < 0;
        });
        CHECK(est.p_hat == truth);
    }
}

TEST_CASE("estimate_event_A exhaustive") {
    montecarlo::Options ex;
    ex.exhaustive = true;
    auto e2 = montecarlo::estimate_event_A(2, ex, table());
    CHECK(e2.p_hat == 1.0);
    CHECK(e2.trials == 2);

    // truncated event shrinks with the cutoff
    double prev = 1.0;
    for (u64 cutoff = 2; cutoff <= 20; cutoff += 3) {
        double cur = montecarlo::estimate_event_A(cutoff, ex, table()).p_hat;
        CHECK(cur <= prev + 1e-15);
        CHECK(cur > 0.0);
        prev = cur;
    }

    for (u64 cutoff : {5ULL, 12ULL}) {
        auto est = montecarlo::estimate_event_A(cutoff, ex, table());
        double truth =
            pattern_fraction(table().primes_in(1, cutoff), std::nullopt, [&](const auto& m) {
                return randmult::harmonic_scan(m, cutoff, table()).all_positive;
            });
        CHECK(est.p_hat == truth);
    }
}

TEST_CASE("estimate_cov_A_fd") {
    montecarlo::Options ex;
    ex.exhaustive = true;

    // f(1) = 1 constant: covariance identically 0
    CHECK(montecarlo::estimate_cov_A_fd(1, 50, ex, table()).value == 0.0);

    // cutoff 3: every pattern stays positive, so E[1_A f(2)] = E[f(2)] = 0
    auto c = montecarlo::estimate_cov_A_fd(2, 3, ex, table());
    CHECK(c.value == 0.0);
    CHECK(c.trials == 4);

    // oracle for a nontrivial cutoff
    for (u64 d : {2ULL, 6ULL, 10ULL}) {
        auto est = montecarlo::estimate_cov_A_fd(d, 20, ex, table());
        auto free_primes = table().primes_in(1, 20);
        u64 patterns = u64(1) << free_primes.size();
        i64 sum = 0;
        for (u64 pat = 0; pat < patterns; ++pat) {
            std::map<u64, int> ov;
            for (size_t j = 0; j < free_primes.size(); ++j)
                ov[free_primes[j]] = (pat >> j) & 1 ? -1 : +1;
            auto m = randmult::sample_model(0, std::nullopt, ov);
            if (randmult::harmonic_scan(m, 20, table()).all_positive)
                sum += randmult::f_at(m, d, table());
        }
        CHECK(est.value == doctest::Approx(double(sum) / double(patterns)).epsilon(1e-14));
    }

    CHECK_THROWS_AS(montecarlo::estimate_cov_A_fd(4, 10, ex, table()), std::invalid_argument);
}

TEST_CASE("estimate_deviation") {
    auto ctx7 = smooth::make_smooth_context(7, table());
    montecarlo::Options ex;
    ex.exhaustive = true;

    // huge delta: never exceeded
    CHECK(montecarlo::estimate_deviation(30, 7, 100.0, ex, ctx7).p_hat == 0.0);

    // nonincreasing in delta
    double prev = 1.0;
    for (double delta : {0.0, 0.1, 0.3, 0.6, 1.0, 2.0}) {
        double cur = montecarlo::estimate_deviation(30, 7, delta, ex, ctx7).p_hat;
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }

    // oracle via the decomposition identity: the rough signed sum equals
    // sum_{n<=x} f(n) - Psi*(x,y) when f forces +1 below y
    double psi_star_x = double(smooth::psi_star(30, ctx7));
    for (double delta : {0.1, 0.5}) {
        auto est = montecarlo::estimate_deviation(30, 7, delta, ex, ctx7);
        double truth = pattern_fraction(table().primes_in(7, 30), 7, [&](const auto& m) {
            double s = double(randmult::prefix_scan(m, 30, table()).final_sum) - psi_star_x;
            return std::abs(s) > delta * psi_star_x;
        });
        CHECK(est.p_hat == truth);
    }
}

TEST_CASE("monte carlo agrees with exhaustive truth") {
    montecarlo::Options ex;
    ex.exhaustive = true;
    montecarlo::Options mc;
    mc.trials = 4000;
    mc.seed = 314159;
    mc.z = 3.5; // wide interval: keep the check deterministic-in-practice

    double truth = montecarlo::estimate_negative_harmonic(16, ex, table()).p_hat;
    auto est = montecarlo::estimate_negative_harmonic(16, mc, table());
    CHECK(est.ci_low <= truth);
    CHECK(est.ci_high >= truth);

    double truth_l = montecarlo::estimate_conditional_lplus(12, 3, ex, table()).p_hat;
    auto est_l = montecarlo::estimate_conditional_lplus(12, 3, mc, table());
    CHECK(est_l.ci_low <= truth_l);
    CHECK(est_l.ci_high >= truth_l);

    double truth_a = montecarlo::estimate_event_A(12, ex, table()).p_hat;
    auto est_a = montecarlo::estimate_event_A(12, mc, table());
    CHECK(est_a.ci_low <= truth_a);
    CHECK(est_a.ci_high >= truth_a);
}

TEST_CASE("results independent of thread count") {
    auto ctx7 = smooth::make_smooth_context(7, table());
    for (unsigned threads : {1u, 4u, 8u}) {
        montecarlo::Options mc;
        mc.trials = 1000;
        mc.seed = 2718;
        mc.threads = threads;

        CHECK(montecarlo::estimate_conditional_lplus(50, 5, mc, table()).successes ==
              montecarlo::estimate_conditional_lplus(
                  50, 5, [&] { auto o = mc; o.threads = 1; return o; }(), table())
                  .successes);
        CHECK(montecarlo::estimate_negative_harmonic(40, mc, table()).successes ==
              montecarlo::estimate_negative_harmonic(
                  40, [&] { auto o = mc; o.threads = 1; return o; }(), table())
                  .successes);
        auto c1 = montecarlo::estimate_cov_A_fd(6, 30, mc, table());
        auto c2 = montecarlo::estimate_cov_A_fd(
            6, 30, [&] { auto o = mc; o.threads = 1; return o; }(), table());
        CHECK(c1.value == c2.value);
        CHECK(c1.std_error == c2.std_error);
        CHECK(montecarlo::estimate_deviation(100, 7, 0.2, mc, ctx7).successes ==
              montecarlo::estimate_deviation(
                  100, 7, 0.2, [&] { auto o = mc; o.threads = 1; return o; }(), ctx7)
                  .successes);
    }
}
