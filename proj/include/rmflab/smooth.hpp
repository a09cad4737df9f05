#pragma once

#include <cstdint>
#include <vector>

#include "rmflab/prime_table.hpp"
#include "rmflab/sign_model.hpp"

namespace rmflab::smooth {

using arith::i64;
using arith::u64;

// The smoothness parameter y with its prime list. Immutable; the referenced
// PrimeTable must outlive the context.
struct SmoothContext {
    u64 y = 0;
    std::vector<u64> smooth_primes; // exactly the primes <= y
    const arith::PrimeTable* table = nullptr;
};

SmoothContext make_smooth_context(u64 y, const arith::PrimeTable& table);

// Saddle-point exponent: the unique root of sum_{p<=y} log p / (p^a - 1) = log x.
// Residual of the defining equation is <= tol * log x.
double solve_alpha(double x, u64 y, double tol, const arith::PrimeTable& table);

// Main term log(1 + y/log x) / log y, no error factor.
double alpha_asymptotic(double x, double y);

// Number of y-smooth n <= x (1 counted).
u64 psi(u64 x, const SmoothContext& ctx);

// The y-smooth integers in [1, x], sorted ascending. Guarded by budget.
std::vector<u64> enumerate_smooth(u64 x, const SmoothContext& ctx, u64 budget = 100'000'000);

// Psi*(x,y) = sum over m with least prime factor > y (m = 1 included) of
// Psi(floor(x/m^2), y).
u64 psi_star(u64 x, const SmoothContext& ctx);

// Signed smooth sum: sum of f(n) over y-smooth n <= x.
i64 psi_f(u64 x, const SmoothContext& ctx, const randmult::SignModel& model);

struct BuchstabResiduals {
    double unsigned_residual = 0; // |Psi log x - integral term - prime-power term|
    double signed_residual = 0;   // same with f-weights; 0 when no model given
};

// Residuals of Psi(x,y) log x = sum_{n smooth <= x} log(x/n)
//                               + sum_{p^m <= x, p <= y} Psi(x/p^m, y) log p
// and of the f-signed analogue (model may be null).
BuchstabResiduals buchstab_residuals(u64 x, const SmoothContext& ctx,
                                     const randmult::SignModel* model = nullptr);

// Dickman's rho on a dyadic grid, built from the delay identity
// u rho(u) = int_{u-1}^{u} rho(t) dt with composite Simpson per step.
class DickmanTable {
public:
    explicit DickmanTable(double u_max = 50.0, double step = 1.0 / 1024.0);

    double u_max() const { return u_max_; }
    double step() const { return step_; }

    // rho(u), 0 <= u <= u_max; exact 1 on [0,1].
    double rho(double u) const;

    // |u rho(u) - int_{u-1}^{u} rho|, u >= 1, via the table quadrature.
    double identity_residual(double u) const;

private:
    double simpson_integral(double a, double b) const;

    double u_max_;
    double step_;
    std::vector<double> values_; // rho at k*step
};

// Shared default table (u_max = 50).
const DickmanTable& default_dickman_table();
double dickman_rho(double u);
double dickman_identity_residual(double u);

struct TriangleCheck {
    u64 x = 0, z = 0;
    bool holds = false; // Psi(x+z,y) - Psi(x,y) <= Psi(z,y) + 1
};

struct BoundCheckReport {
    std::vector<TriangleCheck> triangle;
    bool konyagin_holds = false; // Psi(x,y) >= x^{1 - loglog x / log y}
    double konyagin_lhs = 0;
    double konyagin_rhs = 0;
    double alpha = 0;
    double sup_ratio = 0; // sup_t Psi(x/t,y) t^alpha / Psi(x,y) over the t-grid
};

BoundCheckReport bound_checks(u64 x, const SmoothContext& ctx,
                              const std::vector<std::pair<u64, u64>>& xz_pairs,
                              const std::vector<double>& t_grid,
                              double alpha_tol = 1e-10);

} // namespace rmflab::smooth
