#pragma once

#include <cstdint>

#include "rmflab/prime_table.hpp"
#include "rmflab/sign_model.hpp"
#include "rmflab/smooth.hpp"

namespace rmflab::randmult {

using arith::i64;

// f(n): product of prime signs with multiplicity; f(1) = +1.
int f_at(const SignModel& model, u64 n, const arith::PrimeTable& table);

// Integer partial sums sum_{n<=t} f(n), t <= x.
struct PrefixScan {
    u64 x = 0;
    i64 final_sum = 0;
    i64 min_prefix = 0;
    u64 argmin = 0;
    bool all_nonneg = false;
    bool all_positive = false;
};

// Real-valued partial sums sum_{n<=t} f(n)/n (compensated summation).
struct HarmonicScan {
    u64 x = 0;
    double final_sum = 0;
    double min_prefix = 0;
    u64 argmin = 0;
    bool all_nonneg = false;
    bool all_positive = false;
};

PrefixScan prefix_scan(const SignModel& model, u64 x, const arith::PrimeTable& table);
HarmonicScan harmonic_scan(const SignModel& model, u64 x, const arith::PrimeTable& table);

// Both sides of sum_{n<=x} f(n)/n = (1/x)(sum g(n) + sum f(n){x/n}), g = f*1.
struct ElementaryDecomposition {
    double harmonic = 0;     // sum_{n<=x} f(n)/n
    i64 g_sum = 0;           // sum_{n<=x} g(n) = sum_{d<=x} f(d) floor(x/d)
    double frac_sum = 0;     // sum_{n<=x} f(n) {x/n}
    double residual = 0;     // |harmonic - (g_sum + frac_sum)/x|
    i64 prime_pair_sum = 0;  // sum_{p<=x} (1 + f(p)), a lower bound for g_sum
};

ElementaryDecomposition elementary_decomposition(const SignModel& model, u64 x,
                                                 const arith::PrimeTable& table);

// Square-free rough decomposition: with f(p) = +1 for p <= y,
//   sum_{n<=x} f(n) = Psi*(x,y) + sum over square-free y-rough n in (1,x] of
//                     f(n) Psi*(x/n, y).
// Exact integer equality of the two sides is the contract. Requires the model
// to force +1 on every prime <= ctx.y.
struct RoughDecomposition {
    i64 lhs = 0;
    i64 rhs = 0;
};

RoughDecomposition rough_decomposition(const SignModel& model, u64 x,
                                       const smooth::SmoothContext& ctx);

} // namespace rmflab::randmult

namespace rmflab::arith {

// sum_{p<=x} f(p)/p with compensated summation.
double prime_recip_sum(const randmult::SignModel& model, u64 x, const PrimeTable& table);

} // namespace rmflab::arith
