#include "spm/modhash.hpp"

#include <cmath>
#include <stdexcept>

namespace spm {

u64 modinv(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw std::invalid_argument("modinv: zero has no inverse");
    return modpow(a, p - 2, p);
}

namespace {

bool witness_composite(u64 a, u64 d, u32 s, u64 n) {
    u64 x = modpow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (u32 i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    u32 s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic for all 64-bit n with these witnesses.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (witness_composite(a, d, s, n)) return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime(n)) n += 2;
    return n;
}

u64 SplitMix64::next() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

u64 derive_seed(u64 master, u64 stream) {
    SplitMix64 sm(master + 0x9e3779b97f4a7c15ull * (stream + 1));
    sm.next();
    return sm.next();
}

u64 Rng::below(u64 bound) {
    if (bound == 0) return engine_();
    u64 limit = ~0ull - ~0ull % bound;
    u64 x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

u64 Rng::in_range(u64 lo, u64 hi) {
    if (lo > hi) throw std::invalid_argument("in_range: empty range");
    u64 span = hi - lo;
    if (span == ~0ull) return engine_();
    return lo + below(span + 1);
}

FieldParams FieldParams::make(u64 p, u64 r) {
    if (r == 0 || r >= p) throw std::invalid_argument("FieldParams: r out of range");
    return FieldParams{p, r, modinv(r, p)};
}

namespace {

constexpr u64 kPrimeCap = (1ull << 62) - 1;

u64 sat_mul(u64 a, u64 b) {
    u128 v = static_cast<u128>(a) * b;
    return v > kPrimeCap ? kPrimeCap : static_cast<u64>(v);
}

u32 amplification(u64 n, u64 m, u64 sigma, u64 p1, u64 p2, u64 p3, double target) {
    double eps = static_cast<double>(m) * sigma * sigma / static_cast<double>(p1) +
                 static_cast<double>(m) * static_cast<double>(p1) / static_cast<double>(p2) +
                 static_cast<double>(m) / static_cast<double>(p3);
    if (eps > 0.5) eps = 0.5;  // reachable only when a prime cap binds
    double ln_n = std::log(static_cast<double>(n < 2 ? 2 : n));
    double k = (1.0 + target) * ln_n / std::log(1.0 / eps);
    if (k < 1.0) return 1;
    return static_cast<u32>(std::ceil(k - 1e-9));
}

}  // namespace

HashParams select_primes(u64 n, u64 m, u64 sigma, u64 seed, double target) {
    if (m == 0 || n < m) throw std::invalid_argument("select_primes: need n >= m >= 1");
    if (sigma == 0) throw std::invalid_argument("select_primes: need sigma >= 1");
    u64 nnm4 = sat_mul(4, sat_mul(sat_mul(n, n), m));
    u64 p1 = next_prime(sat_mul(nnm4, sat_mul(sigma, sigma)));
    u64 p2 = next_prime(sat_mul(nnm4, p1));
    if (p2 <= p1) p2 = next_prime(p1 + 1);  // caps can collide the two layers
    u64 p3 = next_prime(nnm4);
    HashParams proto;
    proto.layer1.p = p1;
    proto.layer2.p = p2;
    proto.layer3.p = p3;
    proto.seed = seed;
    proto.repetitions = amplification(n, m, sigma, p1, p2, p3, target);
    return for_repetition(proto, 0);
}

HashParams for_repetition(const HashParams& base, u32 rep) {
    Rng rng(derive_seed(base.seed, rep));
    HashParams out = base;
    out.layer1 = FieldParams::make(base.layer1.p, rng.in_range(1, base.layer1.p - 1));
    out.layer2 = FieldParams::make(base.layer2.p, rng.in_range(1, base.layer2.p - 1));
    out.layer3 = FieldParams::make(base.layer3.p, rng.in_range(1, base.layer3.p - 1));
    return out;
}

u64 seq_hash(std::span<const u64> a, const FieldParams& f) {
    u64 h = 0;
    u64 rk = 1 % f.p;
    for (u64 c : a) {
        if (c >= f.p) throw std::invalid_argument("seq_hash: coefficient >= p");
        h = addmod(h, mulmod(c, rk, f.p), f.p);
        rk = mulmod(rk, f.r, f.p);
    }
    return h;
}

namespace {

template <class T>
u64 multiset_hash_impl(std::span<const T> values, const FieldParams& f) {
    u64 h = 0;
    for (T v : values) {
        if (static_cast<u64>(v) >= f.p) throw std::invalid_argument("multiset_hash: value >= p");
        h = addmod(h, modpow(f.r, static_cast<u64>(v), f.p), f.p);
    }
    return h;
}

}  // namespace

u64 multiset_hash(std::span<const u64> values, const FieldParams& f) {
    return multiset_hash_impl(values, f);
}

u64 multiset_hash(std::span<const u32> values, const FieldParams& f) {
    return multiset_hash_impl(values, f);
}

u64 rolling_update(u64 h, u64 leaving, u64 entering, const FieldParams& f, u64 m) {
    if (m == 0) throw std::invalid_argument("rolling_update: empty window");
    if (h >= f.p || leaving >= f.p || entering >= f.p)
        throw std::invalid_argument("rolling_update: operand >= p");
    u64 shifted = mulmod(submod(h, leaving, f.p), f.r_inv, f.p);
    return addmod(shifted, mulmod(entering, modpow(f.r, m - 1, f.p), f.p), f.p);
}

}  // namespace spm
