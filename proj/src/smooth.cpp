#include "rmflab/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmflab::smooth {

SmoothContext make_smooth_context(u64 y, const arith::PrimeTable& table) {
    if (y > table.limit()) throw std::out_of_range("make_smooth_context: y exceeds table limit");
    SmoothContext ctx;
    ctx.y = y;
    ctx.smooth_primes = table.primes_in(0, y);
    ctx.table = &table;
    return ctx;
}

double alpha_asymptotic(double x, double y) {
    if (!(x >= y && y >= 2)) throw std::invalid_argument("alpha_asymptotic: need x >= y >= 2");
    return std::log(1.0 + y / std::log(x)) / std::log(y);
}

double solve_alpha(double x, u64 y, double tol, const arith::PrimeTable& table) {
    if (!(x > 1.0)) throw std::invalid_argument("solve_alpha: need x > 1");
    if (y < 2) throw std::invalid_argument("solve_alpha: need y >= 2");
    if (!(tol > 0)) throw std::invalid_argument("solve_alpha: need tol > 0");
    if (y > table.limit()) throw std::out_of_range("solve_alpha: y exceeds table limit");

    std::vector<double> logs;
    std::vector<u64> ps = table.primes_in(0, y);
    logs.reserve(ps.size());
    for (u64 p : ps) logs.push_back(std::log(double(p)));

    const double target = std::log(x);
    auto lhs = [&](double a) {
        double s = 0;
        for (size_t i = 0; i < ps.size(); ++i)
            s += logs[i] / (std::exp(a * logs[i]) - 1.0);
        return s;
    };

    // lhs is strictly decreasing in a. The root usually sits in (0, 2]; the
    // bracket is widened when y is huge relative to log x.
    double lo = 1e-9, hi = 2.0;
    while (lhs(hi) > target && hi < 128.0) hi *= 2.0;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        double v = lhs(mid);
        if (std::abs(v - target) <= tol * target) break;
        if (v > target) lo = mid; else hi = mid;
    }
    return mid;
}

namespace {

// Depth-first walk over y-smooth integers in [1, x]: cur times products of
// primes with index >= i, each smooth number visited exactly once.
template <class Visit>
void visit_smooth(u64 x, const std::vector<u64>& ps, size_t i, u64 cur, int sign,
                  const std::vector<int>* signs, Visit&& visit) {
    visit(cur, sign);
    for (size_t j = i; j < ps.size(); ++j) {
        u64 p = ps[j];
        if (p > x / cur) break;
        int ps_sign = signs ? (*signs)[j] : 1;
        int s = sign;
        for (u64 m = cur * p;; m *= p) {
            s *= ps_sign;
            visit_smooth(x, ps, j + 1, m, s, signs, visit);
            if (p > x / m) break;
        }
    }
}

} // namespace

u64 psi(u64 x, const SmoothContext& ctx) {
    if (x == 0) return 0;
    u64 count = 0;
    visit_smooth(x, ctx.smooth_primes, 0, 1, 1, nullptr, [&](u64, int) { ++count; });
    return count;
}

std::vector<u64> enumerate_smooth(u64 x, const SmoothContext& ctx, u64 budget) {
    if (x == 0) return {};
    if (psi(x, ctx) > budget) throw std::length_error("enumerate_smooth: budget exceeded");
    std::vector<u64> out;
    visit_smooth(x, ctx.smooth_primes, 0, 1, 1, nullptr, [&](u64 n, int) { out.push_back(n); });
    std::sort(out.begin(), out.end());
    return out;
}

u64 psi_star(u64 x, const SmoothContext& ctx) {
    if (x == 0) return 0;
    u64 sqrt_x = static_cast<u64>(std::sqrt(double(x)));
    while (sqrt_x * sqrt_x > x) --sqrt_x;
    while ((sqrt_x + 1) * (sqrt_x + 1) <= x) ++sqrt_x;

    std::vector<u64> rough = ctx.table->primes_in(ctx.y, sqrt_x);
    u64 total = 0;
    // m runs over integers with p(m) > y and m^2 <= x; m = 1 included.
    auto rec = [&](auto&& self, size_t i, u64 m) -> void {
        total += psi(x / (m * m), ctx);
        for (size_t j = i; j < rough.size(); ++j) {
            u64 p = rough[j];
            if (p > sqrt_x / m) break;
            for (u64 next = m * p;; next *= p) {
                self(self, j + 1, next);
                if (p > sqrt_x / next) break;
            }
        }
    };
    rec(rec, 0, 1);
    return total;
}

i64 psi_f(u64 x, const SmoothContext& ctx, const randmult::SignModel& model) {
    if (x == 0) return 0;
    std::vector<int> signs;
    signs.reserve(ctx.smooth_primes.size());
    for (u64 p : ctx.smooth_primes) signs.push_back(model.sign_at_prime(p));
    i64 total = 0;
    visit_smooth(x, ctx.smooth_primes, 0, 1, 1, &signs, [&](u64, int s) { total += s; });
    return total;
}

BuchstabResiduals buchstab_residuals(u64 x, const SmoothContext& ctx,
                                     const randmult::SignModel* model) {
    BuchstabResiduals res;
    if (x < 1) throw std::invalid_argument("buchstab_residuals: need x >= 1");
    const double log_x = std::log(double(x));

    std::vector<int> signs;
    if (model) {
        signs.reserve(ctx.smooth_primes.size());
        for (u64 p : ctx.smooth_primes) signs.push_back(model->sign_at_prime(p));
    }

    // int_1^x Psi(t,y)/t dt = sum_{n smooth <= x} log(x/n), exactly (step function).
    double log_sum = 0, log_sum_c = 0;       // Kahan
    double slog_sum = 0, slog_sum_c = 0;
    u64 count = 0;
    i64 signed_count = 0;
    visit_smooth(x, ctx.smooth_primes, 0, 1, 1, model ? &signs : nullptr, [&](u64 n, int s) {
        ++count;
        double term = log_x - std::log(double(n));
        double t1 = term - log_sum_c;
        double u1 = log_sum + t1;
        log_sum_c = (u1 - log_sum) - t1;
        log_sum = u1;
        if (model) {
            signed_count += s;
            double t2 = s * term - slog_sum_c;
            double u2 = slog_sum + t2;
            slog_sum_c = (u2 - slog_sum) - t2;
            slog_sum = u2;
        }
    });

    double pp_sum = 0, pp_signed = 0;
    for (u64 p : ctx.smooth_primes) {
        if (p > x) break;
        double lp = std::log(double(p));
        int sp = model ? model->sign_at_prime(p) : 1;
        int s = 1;
        for (u64 pm = p;; pm *= p) {
            s *= sp;
            pp_sum += double(psi(x / pm, ctx)) * lp;
            if (model) pp_signed += double(s) * double(psi_f(x / pm, ctx, *model)) * lp;
            if (p > x / pm) break;
        }
    }

    res.unsigned_residual = std::abs(double(count) * log_x - log_sum - pp_sum);
    if (model)
        res.signed_residual = std::abs(double(signed_count) * log_x - slog_sum - pp_signed);
    return res;
}

BoundCheckReport bound_checks(u64 x, const SmoothContext& ctx,
                              const std::vector<std::pair<u64, u64>>& xz_pairs,
                              const std::vector<double>& t_grid, double alpha_tol) {
    BoundCheckReport rep;
    for (auto [xa, z] : xz_pairs) {
        TriangleCheck tc{xa, z, false};
        tc.holds = psi(xa + z, ctx) <= psi(xa, ctx) + psi(z, ctx) + 1;
        rep.triangle.push_back(tc);
    }

    u64 psi_x = psi(x, ctx);
    if (x >= 4 && ctx.y >= 2 && ctx.y <= x) {
        rep.konyagin_lhs = double(psi_x);
        rep.konyagin_rhs =
            std::pow(double(x), 1.0 - std::log(std::log(double(x))) / std::log(double(ctx.y)));
        rep.konyagin_holds = rep.konyagin_lhs >= rep.konyagin_rhs;
    }

    rep.alpha = solve_alpha(double(x), ctx.y, alpha_tol, *ctx.table);
    double sup = 0;
    for (double t : t_grid) {
        if (t < 1) continue;
        u64 xt = static_cast<u64>(double(x) / t);
        double r = double(psi(xt, ctx)) * std::pow(t, rep.alpha) / double(psi_x);
        sup = std::max(sup, r);
    }
    rep.sup_ratio = sup;
    return rep;
}

} // namespace rmflab::smooth
