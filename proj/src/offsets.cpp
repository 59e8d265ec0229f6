#include "spm/offsets.hpp"

#include <algorithm>

namespace spm {

OffsetRepresentation compute_offsets(const SetString& s) {
    OffsetRepresentation rep;
    rep.per_position.resize(s.sets.size());
    for (u32 i = 1; i <= s.sets.size(); ++i) {
        for (u32 id : s.sets[i - 1]) {
            auto [it, fresh] = rep.per_char.try_emplace(id);
            if (fresh) it->second.first_pos = i;
            it->second.offsets.push_back(i - it->second.first_pos);
            ++rep.char_position_ops;
        }
    }
    for (u32 i = 1; i <= s.sets.size(); ++i) {
        auto& views = rep.per_position[i - 1];
        views.reserve(s.sets[i - 1].size());
        for (u32 id : s.sets[i - 1]) views.push_back(&rep.per_char.at(id));
    }
    return rep;
}

namespace {

// Dense rank per offset list, shared across both strings so per-position
// multisets reduce to sorted rank vectors.
struct OffsetRanks {
    std::unordered_map<u32, u32> rank1, rank2;
    std::vector<const std::vector<u32>*> lists;  // rank -> canonical list
};

OffsetRanks rank_offsets(const OffsetRepresentation& r1, const OffsetRepresentation& r2) {
    OffsetRanks ranks;
    std::vector<std::pair<const std::vector<u32>*, std::pair<int, u32>>> all;
    for (const auto& [id, os] : r1.per_char) all.push_back({&os.offsets, {0, id}});
    for (const auto& [id, os] : r2.per_char) all.push_back({&os.offsets, {1, id}});
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return *a.first < *b.first; });
    for (const auto& [list, who] : all) {
        if (ranks.lists.empty() || *ranks.lists.back() != *list) ranks.lists.push_back(list);
        u32 rank = static_cast<u32>(ranks.lists.size()) - 1;
        (who.first == 0 ? ranks.rank1 : ranks.rank2)[who.second] = rank;
    }
    return ranks;
}

std::vector<u32> position_ranks(const std::vector<u32>& position,
                                const std::unordered_map<u32, u32>& rank) {
    std::vector<u32> out;
    out.reserve(position.size());
    for (u32 id : position) out.push_back(rank.at(id));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool exact_compare(const SetString& s1, const SetString& s2) {
    if (s1.length() != s2.length()) return false;
    OffsetRepresentation r1 = compute_offsets(s1);
    OffsetRepresentation r2 = compute_offsets(s2);
    OffsetRanks ranks = rank_offsets(r1, r2);
    for (u64 i = 0; i < s1.length(); ++i) {
        if (s1.sets[i].size() != s2.sets[i].size()) return false;
        if (position_ranks(s1.sets[i], ranks.rank1) != position_ranks(s2.sets[i], ranks.rank2))
            return false;
    }
    return true;
}

StartCountTable start_counts(const SetString& s) {
    OffsetRepresentation rep = compute_offsets(s);

    StartCountTable direct;
    for (const auto& [id, os] : rep.per_char)
        ++direct.counts[{os.first_pos, os.offsets}];

    // Recurrence route: sees only the per-position multisets. A char that
    // starts at j with offset list O re-appears in the multiset at every
    // j+delta, so Count(i,O) = sum over delta in O of N(i-delta,O).
    StartCountTable recurred;
    std::map<std::vector<u32>, std::map<u32, u32>> starts_by_list;  // O -> pos -> N
    for (u32 i = 1; i <= s.length(); ++i) {
        std::map<std::vector<u32>, u32> count_here;
        for (const OffsetSet* os : rep.per_position[i - 1]) ++count_here[os->offsets];
        for (const auto& [list, count] : count_here) {
            u64 implied = 0;
            auto& starts = starts_by_list[list];
            for (u32 delta : list) {
                if (delta == 0 || delta >= i) continue;
                auto it = starts.find(i - delta);
                if (it != starts.end()) implied += it->second;
            }
            if (implied > count)
                throw std::logic_error("start_counts: recurrence went negative");
            u32 fresh = count - static_cast<u32>(implied);
            if (fresh > 0) {
                starts[i] = fresh;
                recurred.counts[{i, list}] = fresh;
            }
        }
    }

    if (!(direct == recurred)) throw std::logic_error("start_counts: routes disagree");
    return direct;
}

std::optional<Bijection> construct_bijection(const SetString& s1, const SetString& s2, u32 sigma) {
    if (!exact_compare(s1, s2)) return std::nullopt;
    OffsetRepresentation r1 = compute_offsets(s1);
    OffsetRepresentation r2 = compute_offsets(s2);

    std::map<std::pair<u32, std::vector<u32>>, std::pair<std::vector<u32>, std::vector<u32>>> groups;
    for (const auto& [id, os] : r1.per_char) groups[{os.first_pos, os.offsets}].first.push_back(id);
    for (const auto& [id, os] : r2.per_char) groups[{os.first_pos, os.offsets}].second.push_back(id);

    Bijection pi;
    pi.forward.assign(sigma + 1, 0);
    pi.backward.assign(sigma + 1, 0);
    for (auto& [key, pair] : groups) {
        auto& [a, b] = pair;
        if (a.size() != b.size()) return std::nullopt;  // unreachable after exact_compare
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (std::size_t t = 0; t < a.size(); ++t) {
            if (a[t] > sigma || b[t] > sigma) throw std::out_of_range("construct_bijection: id > sigma");
            pi.forward[a[t]] = b[t];
            pi.backward[b[t]] = a[t];
        }
    }
    std::vector<u32> left, right;
    for (u32 id = 1; id <= sigma; ++id) {
        if (pi.forward[id] == 0) left.push_back(id);
        if (pi.backward[id] == 0) right.push_back(id);
    }
    for (std::size_t t = 0; t < left.size(); ++t) {
        pi.forward[left[t]] = right[t];
        pi.backward[right[t]] = left[t];
    }
    return pi;
}

PrevString prev_transform(const SetString& s) {
    PrevString out;
    out.reserve(s.sets.size());
    std::unordered_map<u32, u32> last;
    for (u32 i = 1; i <= s.sets.size(); ++i) {
        if (s.sets[i - 1].size() != 1)
            throw std::invalid_argument("prev_transform: non-singleton position");
        u32 id = s.sets[i - 1][0];
        auto it = last.find(id);
        out.push_back(it == last.end() ? 0 : i - it->second);
        last[id] = i;
    }
    return out;
}

std::vector<std::vector<u32>> naive_prev_sets(const SetString& s) {
    std::vector<std::vector<u32>> out;
    out.reserve(s.sets.size());
    std::unordered_map<u32, u32> last;
    for (u32 i = 1; i <= s.sets.size(); ++i) {
        std::vector<u32> here;
        here.reserve(s.sets[i - 1].size());
        for (u32 id : s.sets[i - 1]) {
            auto it = last.find(id);
            here.push_back(it == last.end() ? 0 : i - it->second);
            last[id] = i;
        }
        std::sort(here.begin(), here.end());
        out.push_back(std::move(here));
    }
    return out;
}

}  // namespace spm
