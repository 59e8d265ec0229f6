#include "spm/compare.hpp"

namespace spm {

std::unordered_map<u32, u64> layer1_fingerprints(const OffsetRepresentation& rep,
                                                 const FieldParams& f1, u64* ops) {
    std::unordered_map<u32, u64> psi;
    psi.reserve(rep.per_char.size());
    for (const auto& [id, os] : rep.per_char) {
        psi.emplace(id, multiset_hash(std::span<const u32>(os.offsets), f1));
        if (ops) *ops += os.offsets.size();
    }
    return psi;
}

MashedRepresentation mash(const SetString& s, const std::unordered_map<u32, u64>& psi,
                          const HashParams& params, u64* ops) {
    MashedRepresentation out;
    out.params = params;
    out.values.reserve(s.sets.size());
    const FieldParams& f2 = params.layer2;
    for (const auto& position : s.sets) {
        u64 h = 0;
        for (u32 id : position) h = addmod(h, modpow(f2.r, psi.at(id), f2.p), f2.p);
        if (ops) *ops += position.size();
        out.values.push_back(h);
    }
    return out;
}

bool compare_setstrings(const SetString& s1, const SetString& s2, const HashParams& params,
                        CompareStats* stats) {
    if (s1.length() != s2.length())
        throw std::invalid_argument("compare_setstrings: length mismatch");
    u64 ops = 0;
    OffsetRepresentation r1 = compute_offsets(s1);
    OffsetRepresentation r2 = compute_offsets(s2);
    ops += r1.char_position_ops + r2.char_position_ops;

    bool equal = true;
    for (u32 rep = 0; rep < params.repetitions && equal; ++rep) {
        HashParams rp = for_repetition(params, rep);
        std::unordered_map<u32, u64> psi1 = layer1_fingerprints(r1, rp.layer1, &ops);
        std::unordered_map<u32, u64> psi2 = layer1_fingerprints(r2, rp.layer1, &ops);
        const FieldParams& f2 = rp.layer2;
        for (u64 i = 0; i < s1.length(); ++i) {
            u64 m1 = 0, m2 = 0;
            for (u32 id : s1.sets[i]) m1 = addmod(m1, modpow(f2.r, psi1.at(id), f2.p), f2.p);
            for (u32 id : s2.sets[i]) m2 = addmod(m2, modpow(f2.r, psi2.at(id), f2.p), f2.p);
            ops += s1.sets[i].size() + s2.sets[i].size();
            if (m1 != m2) {
                equal = false;
                break;
            }
        }
    }
    if (stats) stats->char_position_ops += ops;
    return equal;
}

}  // namespace spm
