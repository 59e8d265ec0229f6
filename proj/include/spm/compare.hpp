#pragma once

#include "spm/modhash.hpp"
#include "spm/offsets.hpp"

namespace spm {

// One mash value per position: the layer-2 multiset hash of the layer-1
// offset-set fingerprints of the chars at that position.
struct MashedRepresentation {
    std::vector<u64> values;
    HashParams params;

    bool operator==(const MashedRepresentation&) const = default;
};

// Layer-1 fingerprint per occurring char: multiset hash of its offset list.
std::unordered_map<u32, u64> layer1_fingerprints(const OffsetRepresentation& rep,
                                                 const FieldParams& f1, u64* ops = nullptr);

MashedRepresentation mash(const SetString& s, const std::unordered_map<u32, u64>& psi,
                          const HashParams& params, u64* ops = nullptr);

struct CompareStats {
    u64 char_position_ops = 0;
};

// Monte Carlo whole-string comparison; runs params.repetitions independent
// draws and reports a match only if every repetition agrees at every
// position. One-sided: a true match is never rejected; a false match
// survives one repetition with probability O((m sigma^2/p1) + (m p1/p2)).
bool compare_setstrings(const SetString& s1, const SetString& s2, const HashParams& params,
                        CompareStats* stats = nullptr);

}  // namespace spm
