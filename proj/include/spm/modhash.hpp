#pragma once

// Modular arithmetic and Karp-Rabin style hashing over 64-bit prime fields.
//
// All primes used by the library are < 2^63, so the sum of two reduced
// residues fits in a u64 and any product of two fits in __uint128_t. The
// Miller-Rabin witness set below is deterministic for every 64-bit input.
// Random draws go through splitmix64-derived seeds and mt19937_64 with
// hand-rolled rejection sampling: std::uniform_int_distribution is
// implementation-defined, and reports must be byte-identical for a given
// seed on any platform.

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace spm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;  // no wrap: a, b < p < 2^63
    return s >= p ? s - p : s;
}

inline u64 submod(u64 a, u64 b, u64 p) {
    return a >= b ? a - b : a + (p - b);
}

// Operands need not be reduced; only p < 2^63 is assumed.
inline u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 modpow(u64 base, u64 exp, u64 p) {
    u64 acc = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) acc = mulmod(acc, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return acc;
}

// Inverse by Fermat; p must be prime and a != 0 mod p.
u64 modinv(u64 a, u64 p);

bool is_prime(u64 n);

// Smallest prime >= n.
u64 next_prime(u64 n);

class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}
    u64 next();

private:
    u64 state_;
};

// Independent stream seed for (master, stream) pairs.
u64 derive_seed(u64 master, u64 stream);

class Rng {
public:
    explicit Rng(u64 seed) : engine_(seed) {}

    u64 next() { return engine_(); }

    // Uniform in [0, bound); bound = 0 means the full 64-bit range.
    u64 below(u64 bound);

    // Uniform in [lo, hi], inclusive.
    u64 in_range(u64 lo, u64 hi);

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

struct FieldParams {
    u64 p = 0;
    u64 r = 0;
    u64 r_inv = 0;

    static FieldParams make(u64 p, u64 r);
    bool operator==(const FieldParams&) const = default;
};

struct HashParams {
    FieldParams layer1;  // offset-set fingerprints
    FieldParams layer2;  // per-position multiset mash
    FieldParams layer3;  // window rolling hash
    u64 seed = 0;
    u32 repetitions = 1;

    bool operator==(const HashParams&) const = default;
};

// Prime schedule sized for inputs of length n (text), m (pattern), alphabet
// sigma, capped at 2^62-1 per layer. `target` is the error exponent: the
// repetition count is the smallest k whose amplified error is <= n^-target.
// For whole-string comparison call with n = m.
HashParams select_primes(u64 n, u64 m, u64 sigma, u64 seed, double target = 1.0);

// Same primes, fresh independent r draws for repetition `rep`.
HashParams for_repetition(const HashParams& base, u32 rep);

// Sum of a_i * r^i for the coefficient sequence a; coefficients must be < p.
u64 seq_hash(std::span<const u64> a, const FieldParams& f);

// Sum of r^v over multiset values v; values must be < p.
u64 multiset_hash(std::span<const u64> values, const FieldParams& f);
u64 multiset_hash(std::span<const u32> values, const FieldParams& f);

// One window step of the classic rolling hash: drop `leaving` (coefficient
// at r^0), shift, append `entering` at r^(m-1).
u64 rolling_update(u64 h, u64 leaving, u64 entering, const FieldParams& f, u64 m);

}  // namespace spm
