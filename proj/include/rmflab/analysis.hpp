#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "rmflab/prime_table.hpp"
#include "rmflab/sign_model.hpp"

namespace rmflab::analysis {

using arith::i64;
using arith::u64;

// Finite coefficient sequence n -> b(n) with |b(n)| <= 1.
class CoefficientSeq {
public:
    CoefficientSeq() = default;
    explicit CoefficientSeq(std::map<u64, double> values);

    const std::map<u64, double>& values() const { return values_; }

private:
    std::map<u64, double> values_;
};

// Exhaustive Rademacher model on a finite prime set Q.
struct FinitePrimeModel {
    std::vector<u64> primes;
};

struct ExpectationResult {
    double value = 0;        // E[prod_j sum_n b_j(n) f(n)]
    bool cross_checked = false; // enumeration over sign patterns agreed
};

// Exact expectation via multilinear expansion (tuples with square product),
// cross-checked against enumeration over 2^|Q| sign patterns when |Q| <= 22.
ExpectationResult exact_expectation_product(const std::vector<CoefficientSeq>& bs,
                                            const FinitePrimeModel& Q,
                                            const arith::PrimeTable& table);

struct BonamiHalaszCheck {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

// |E prod_j sum b_j(n) f(n)| <= (prod_j sum |b_j(n)|^2 (m-1)^{omega(n)})^{1/2}.
BonamiHalaszCheck bonami_halasz_check(const std::vector<CoefficientSeq>& bs,
                                      const FinitePrimeModel& Q,
                                      const arith::PrimeTable& table);

// 2 exp(-2 t^2 / sum (b_i - a_i)^2); 0 when the ranges are degenerate.
double hoeffding_bound(const std::vector<std::pair<double, double>>& ranges, double t);

// F_x(1 + it) = prod_{p<=x} (1 - f(p) p^{-(1+it)})^{-1}.
std::complex<double> halasz_F(const randmult::SignModel& model, u64 x, double t,
                              const arith::PrimeTable& table);

// Grid lower bound for L(x): each sup over |t - N| <= 1/2 replaced by a max
// over a grid at the given resolution.
double halasz_L(const randmult::SignModel& model, u64 x, double grid_resolution,
                const arith::PrimeTable& table);

struct RatioChecks {
    double prop310_ratio = 0; // smooth-restricted sum / (x exp(sum f(p)/p))
    double conj1_ratio = 0;   // eps-smooth sum / ((x / loglog x) exp(sum f(p)/p))
    double prop310_cutoff = 0;
    double conj1_cutoff = 0;
};

// Empirical ratios behind the smooth-support Halasz bound (exponent 0.99) and
// the conjectural x^eps variant; reported, never asserted.
RatioChecks ratio_checks(const randmult::SignModel& model, u64 x, double eps,
                         const arith::PrimeTable& table);

enum class MomentMode { exact, monte_carlo };

// E[(sum_{n<=x} f(n))^q]^{1/q}, q even. Exact mode counts q-tuples with square
// product via a parity-mask convolution (guard x <= 30, q <= 6); Monte Carlo
// averages over seeds.
double moment_qnorm(u64 x, unsigned q, MomentMode mode, const arith::PrimeTable& table,
                    u64 trials = 0, u64 seed = 0);

} // namespace rmflab::analysis
