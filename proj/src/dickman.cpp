#include "rmflab/smooth.hpp"

#include <cmath>
#include <stdexcept>

namespace rmflab::smooth {

DickmanTable::DickmanTable(double u_max, double step) : u_max_(u_max), step_(step) {
    const auto per_unit = static_cast<size_t>(std::llround(1.0 / step));
    if (per_unit < 4 || per_unit % 2 != 0 || std::abs(per_unit * step - 1.0) > 1e-12)
        throw std::invalid_argument("DickmanTable: step must be 1/N with N even");
    const auto total = static_cast<size_t>(std::ceil(u_max / step)) + 1;

    values_.assign(total, 1.0); // rho = 1 on [0, 1]

    // u rho(u) = int_{u-1}^{u} rho(t) dt, solved grid point by grid point.
    // The window is split at interior integers (rho has derivative jumps
    // there) and each segment integrated with the endpoint-corrected
    // trapezoid rule; rho'(t) = -rho(t-1)/t comes from the delay equation,
    // so the corrections are exact table lookups. The unknown endpoint
    // rho(u) enters with weight step/2 and is solved for.
    auto deriv_right = [&](size_t idx) { // rho'(t+) at t = idx*step
        if (idx < per_unit) return 0.0;
        if (idx == per_unit) return -1.0; // rho'(1+) = -rho(0)
        return -values_[idx - per_unit] / (double(idx) * step);
    };
    auto deriv_left = [&](size_t idx) { // rho'(t-) at t = idx*step
        if (idx <= per_unit) return 0.0;
        return -values_[idx - per_unit] / (double(idx) * step);
    };

    for (size_t k = per_unit + 1; k < total; ++k) {
        double u = double(k) * step;
        size_t lo = k - per_unit;
        size_t split = (k % per_unit == 0) ? k : (k / per_unit) * per_unit;

        double acc = 0;
        for (auto [a, b] : {std::pair{lo, split}, std::pair{split, k}}) {
            if (a == b) continue;
            double seg = 0.5 * values_[a];
            for (size_t j = a + 1; j < b; ++j) seg += values_[j];
            if (b != k) seg += 0.5 * values_[b]; // values_[k] is the unknown being solved for
            acc += step * seg + step * step / 12.0 * (deriv_right(a) - deriv_left(b));
        }
        values_[k] = acc / (u - step / 2.0);
    }
}

double DickmanTable::rho(double u) const {
    if (u < 0 || u > u_max_) throw std::out_of_range("DickmanTable::rho: u outside [0, u_max]");
    if (u <= 1.0) return 1.0;

    // Cubic Lagrange interpolation with the stencil kept inside the unit
    // interval containing u (rho is smooth there but has derivative jumps at
    // the integers).
    const double inv = 1.0 / step_;
    double lo_u = std::floor(u);
    long lo = std::lround(lo_u * inv);
    long hi = std::min<long>(lo + std::lround(inv), long(values_.size()) - 1);
    long k0 = std::lround(std::floor(u * inv)) - 1;
    if (k0 < lo) k0 = lo;
    if (k0 > hi - 3) k0 = hi - 3;

    double result = 0;
    for (int a = 0; a < 4; ++a) {
        double xa = double(k0 + a) * step_;
        double w = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            double xb = double(k0 + b) * step_;
            w *= (u - xb) / (xa - xb);
        }
        result += w * values_[k0 + a];
    }
    return result;
}

double DickmanTable::simpson_integral(double a, double b) const {
    // Split at interior integers (derivative jumps of rho), Simpson each piece.
    double total = 0;
    double left = a;
    while (left < b - 1e-15) {
        double right = std::min(b, std::floor(left + 1e-12) + 1.0);
        if (right <= left) right = b;
        const int n = 2048;
        double h = (right - left) / n;
        double s = rho(left) + rho(right);
        for (int j = 1; j < n; ++j) s += (j % 2 == 1 ? 4.0 : 2.0) * rho(left + j * h);
        total += s * h / 3.0;
        left = right;
    }
    return total;
}

double DickmanTable::identity_residual(double u) const {
    if (u < 1.0) throw std::invalid_argument("identity_residual: need u >= 1");
    return std::abs(u * rho(u) - simpson_integral(u - 1.0, u));
}

const DickmanTable& default_dickman_table() {
    static const DickmanTable table;
    return table;
}

double dickman_rho(double u) { return default_dickman_table().rho(u); }

double dickman_identity_residual(double u) { return default_dickman_table().identity_residual(u); }

} // namespace rmflab::smooth
