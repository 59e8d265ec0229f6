#include "spm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace spm {

namespace {

// 1 -> a, 26 -> z, 27 -> aa (bijective base 26).
std::string token_name(u32 id) {
    std::string s;
    while (id > 0) {
        --id;
        s += static_cast<char>('a' + id % 26);
        id /= 26;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u64 poisson(Rng& rng, double lambda) {
    // Knuth's product method underflows past ~700; Poisson additivity lets us
    // sum draws from smaller chunks instead.
    u64 total = 0;
    while (lambda > 0) {
        double chunk = std::min(lambda, 32.0);
        lambda -= chunk;
        double limit = std::exp(-chunk);
        double prod = 1.0;
        u64 k = 0;
        do {
            ++k;
            prod *= rng.unit();
        } while (prod > limit);
        total += k - 1;
    }
    return total;
}

std::vector<u32> distinct_chars(Rng& rng, u32 count, u32 sigma) {
    if (count >= sigma) {
        std::vector<u32> all(sigma);
        for (u32 i = 0; i < sigma; ++i) all[i] = i + 1;
        return all;
    }
    std::unordered_set<u32> chosen;
    for (u32 j = sigma - count + 1; j <= sigma; ++j) {
        u32 t = static_cast<u32>(rng.in_range(1, j));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<u32> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<u32>> random_sets(Rng& sizes, Rng& chars, u64 length, u32 sigma,
                                          double density) {
    std::vector<std::vector<u32>> out;
    out.reserve(length);
    bool full = density == static_cast<double>(sigma);
    for (u64 i = 0; i < length; ++i) {
        u32 size = full ? sigma : static_cast<u32>(std::min<u64>(poisson(sizes, density), sigma));
        out.push_back(distinct_chars(chars, size, sigma));
    }
    return out;
}

Bijection random_bijection(Rng& rng, u32 sigma) {
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

}  // namespace

GeneratedInstance generate_instance(const GenSpec& spec) {
    if (spec.m == 0 || spec.n < spec.m)
        throw std::invalid_argument("generate_instance: need n >= m >= 1");
    if (spec.sigma == 0) throw std::invalid_argument("generate_instance: need sigma >= 1");
    if (!(spec.density > 0) || spec.density > static_cast<double>(spec.sigma))
        throw std::invalid_argument("generate_instance: need 0 < density <= sigma");

    GeneratedInstance out;
    for (u32 id = 1; id <= spec.sigma; ++id) out.alphabet.intern(token_name(id));

    Rng text_sizes(derive_seed(spec.seed, 0));
    Rng text_chars(derive_seed(spec.seed, 1));
    Rng pat_sizes(derive_seed(spec.seed, 2));
    Rng pat_chars(derive_seed(spec.seed, 3));

    out.pattern = make_setstring(random_sets(pat_sizes, pat_chars, spec.m, spec.sigma, spec.density));
    std::vector<std::vector<u32>> text_sets =
        random_sets(text_sizes, text_chars, spec.n, spec.sigma, spec.density);

    if (spec.planted > 0) {
        Rng plant_pos(derive_seed(spec.seed, 4));
        Rng plant_pi(derive_seed(spec.seed, 5));
        std::vector<u32> starts(spec.n - spec.m + 1);
        for (u64 i = 0; i < starts.size(); ++i) starts[i] = static_cast<u32>(i + 1);
        for (u64 i = starts.size(); i > 1; --i) {
            u64 j = plant_pos.in_range(0, i - 1);
            std::swap(starts[i - 1], starts[j]);
        }
        std::set<u32> accepted;
        for (u32 p : starts) {
            if (accepted.size() == spec.planted) break;
            auto next = accepted.lower_bound(p);
            bool clash = (next != accepted.end() && *next - p <= spec.m - 1) ||
                         (next != accepted.begin() && p - *std::prev(next) <= spec.m - 1);
            if (!clash) accepted.insert(p);
        }
        if (accepted.size() < spec.planted)
            throw std::invalid_argument("generate_instance: cannot place plants without overlap");
        for (u32 p : accepted) {
            Plant plant{p, random_bijection(plant_pi, spec.sigma)};
            SetString image = apply_bijection(out.pattern, plant.bijection);
            for (u64 j = 0; j < spec.m; ++j) text_sets[p - 1 + j] = image.sets[j];
            out.plants.push_back(std::move(plant));
        }
    }

    out.text = make_setstring(std::move(text_sets));
    return out;
}

}  // namespace spm
