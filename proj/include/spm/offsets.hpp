#pragma once

#include <map>
#include <optional>
#include <utility>

#include "spm/setstring.hpp"

namespace spm {

// Occurrence pattern of one char: positions relative to its first occurrence.
// offsets is ascending and always starts with 0 for an occurring char.
struct OffsetSet {
    u32 first_pos = 0;  // 1-based
    std::vector<u32> offsets;

    bool operator==(const OffsetSet&) const = default;
};

// per_position[i] is the multiset of offset lists of the chars at position
// i+1; entries point into per_char (node-stable). Two set-strings match under
// an alphabet bijection iff these per-position multisets agree everywhere.
struct OffsetRepresentation {
    std::unordered_map<u32, OffsetSet> per_char;
    std::vector<std::vector<const OffsetSet*>> per_position;
    u64 char_position_ops = 0;
};

OffsetRepresentation compute_offsets(const SetString& s);

// Positionwise multiset equality of offset lists, early exit on the first
// differing position. False on length mismatch.
bool exact_compare(const SetString& s1, const SetString& s2);

// (first position, offset list) -> number of chars with that exact pattern.
struct StartCountTable {
    std::map<std::pair<u32, std::vector<u32>>, u32> counts;

    bool operator==(const StartCountTable&) const = default;
};

// Computed two independent ways: direct grouping over per-char offset sets,
// and the cancellation recurrence driven only by the per-position multisets
// (count at i minus starts implied by earlier positions). Throws
// std::logic_error if the routes ever disagree.
StartCountTable start_counts(const SetString& s);

// Witness bijection over ids 1..sigma, built by pairing chars with identical
// (first position, offset list) in ascending id order and mapping leftover
// ids ascending. nullopt when the strings do not match.
std::optional<Bijection> construct_bijection(const SetString& s1, const SetString& s2, u32 sigma);

using PrevString = std::vector<u32>;

// Classic prev encoding (distance to the previous occurrence, 0 at the
// first); defined only for strings of singleton sets.
PrevString prev_transform(const SetString& s);

// Naive set generalization of prev: per-position sorted multisets of prev
// distances. Kept as the negative baseline; positionwise equality of these
// multisets does not imply a consistent global bijection.
std::vector<std::vector<u32>> naive_prev_sets(const SetString& s);

}  // namespace spm
