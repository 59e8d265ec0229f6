#pragma once

#include "spm/setstring.hpp"

namespace spm {

struct GenSpec {
    u64 n = 0;            // text length (positions)
    u64 m = 0;            // pattern length
    u32 sigma = 1;        // alphabet size
    double density = 1.0; // expected set size per position, 0 < density <= sigma
    u32 planted = 0;      // pattern occurrences forced into the text
    u64 seed = 0;
};

struct Plant {
    u32 pos = 0;  // 1-based window start in the text
    Bijection bijection;
};

struct GeneratedInstance {
    Alphabet alphabet;  // tokens for ids 1..sigma
    SetString pattern;
    SetString text;
    std::vector<Plant> plants;  // ascending by pos
};

// Deterministic for a given spec. Set sizes are min(Poisson(density), sigma),
// except density == sigma makes every position the full alphabet. Plants are
// non-overlapping copies of the pattern pushed through fresh random
// bijections; throws std::invalid_argument when they cannot all be placed.
GeneratedInstance generate_instance(const GenSpec& spec);

}  // namespace spm
