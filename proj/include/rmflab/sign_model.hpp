#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

namespace rmflab::randmult {

using u64 = std::uint64_t;

// splitmix64 finalizer; full avalanche on 64 bits.
inline u64 avalanche64(u64 z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for trial t of a run seeded with master_seed; pure in (master_seed, t).
inline u64 derive_seed(u64 master_seed, u64 t) {
    return avalanche64(master_seed ^ avalanche64(t ^ 0x6a09e667f3bcc908ULL));
}

// A sample of the random completely multiplicative +/-1 model: one sign per
// prime, a pure function of (seed, p). Precedence: overrides, then the forced
// +1 prefix, then the seeded hash. sign_minus_one is the sign attached to the
// formal symbol -1 (used only by the residue-class construction).
struct SignModel {
    u64 seed = 0;
    std::optional<u64> forced_prefix_y;
    std::map<u64, int> overrides; // prime -> +/-1
    int sign_minus_one = +1;
    // When set, unlisted primes get this constant sign instead of the hash
    // (gives f == lambda for -1, f == 1 for +1).
    std::optional<int> constant_sign;

    int sign_at_prime(u64 p) const {
        if (auto it = overrides.find(p); it != overrides.end()) return it->second;
        if (forced_prefix_y && p <= *forced_prefix_y) return +1;
        if (constant_sign) return *constant_sign;
        return (avalanche64(seed ^ (p * 0xff51afd7ed558ccdULL)) & 1) ? +1 : -1;
    }

    static SignModel constant(int s) {
        if (s != 1 && s != -1) throw std::invalid_argument("SignModel::constant: sign must be +/-1");
        SignModel m;
        m.constant_sign = s;
        return m;
    }
};

// Validates that override keys are prime (trial division; keys are small in practice).
SignModel sample_model(u64 seed, std::optional<u64> forced_prefix_y = std::nullopt,
                       std::map<u64, int> overrides = {});

} // namespace rmflab::randmult
