#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "spm/modhash.hpp"
#include "spm/setstring.hpp"

namespace spmtest {

using namespace spm;

// Two set-strings whose naive prev-set sequences coincide positionwise even
// though no single alphabet bijection maps one onto the other.
inline constexpr const char* kPairA = "-\nb\n-\n-\na\n-\n-\na b\n-\n-\n-\n-\na\n";
inline constexpr const char* kPairB = "-\nc\n-\n-\nd\n-\n-\nc d\n-\n-\n-\n-\nc\n";

struct FixturePair {
    Alphabet alphabet;
    SetString s1, s2;
};

inline FixturePair counterexample() {
    FixturePair p;
    p.s1 = parse_setstring(kPairA, p.alphabet).str;
    p.s2 = parse_setstring(kPairB, p.alphabet).str;
    return p;
}

// Independent lightweight instance source for property tests: per position,
// each char is present with probability density/sigma.
inline SetString random_setstring(Rng& rng, u64 n, u32 sigma, double density) {
    double p = std::min(1.0, density / static_cast<double>(sigma));
    std::vector<std::vector<u32>> sets(n);
    for (u64 i = 0; i < n; ++i)
        for (u32 id = 1; id <= sigma; ++id)
            if (rng.unit() < p) sets[i].push_back(id);
    return make_setstring(std::move(sets));
}

inline Bijection random_bijection(Rng& rng, u32 sigma) {
    std::vector<u32> perm(sigma);
    for (u32 i = 0; i < sigma; ++i) perm[i] = i + 1;
    for (u32 i = sigma; i > 1; --i) {
        u32 j = static_cast<u32>(rng.in_range(0, i - 1));
        std::swap(perm[i - 1], perm[j]);
    }
    Bijection b;
    b.forward.assign(sigma + 1, 0);
    b.backward.assign(sigma + 1, 0);
    for (u32 i = 1; i <= sigma; ++i) {
        b.forward[i] = perm[i - 1];
        b.backward[perm[i - 1]] = i;
    }
    return b;
}

// Flips one random char in one random position (insert if absent, erase if
// present), which always breaks positionwise multiset cardinality there.
inline SetString mutate_one(Rng& rng, const SetString& s, u32 sigma) {
    std::vector<std::vector<u32>> sets = s.sets;
    u64 pos = rng.below(sets.size());
    u32 id = static_cast<u32>(rng.in_range(1, sigma));
    auto& position = sets[pos];
    auto it = std::find(position.begin(), position.end(), id);
    if (it == position.end())
        position.push_back(id);
    else
        position.erase(it);
    return make_setstring(std::move(sets));
}

}  // namespace spmtest
