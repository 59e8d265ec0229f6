#include "spm/matcher.hpp"

#include <algorithm>
#include <thread>

namespace spm {

OccurrenceLists OccurrenceLists::build(const SetString& text, u32 sigma, u64* ops) {
    OccurrenceLists occ;
    occ.by_char.resize(sigma + 1);
    occ.cursor.assign(sigma + 1, 0);
    for (u32 i = 1; i <= text.sets.size(); ++i) {
        for (u32 id : text.sets[i - 1]) {
            if (id > sigma) throw std::invalid_argument("OccurrenceLists: id exceeds sigma");
            occ.by_char[id].push_back(i);
            if (ops) ++*ops;
        }
    }
    return occ;
}

void OccurrenceLists::reset_cursors() {
    std::fill(cursor.begin(), cursor.end(), 0);
}

namespace {

std::vector<u64> power_table(u64 r, u32 count, u64 p) {
    std::vector<u64> pow(count);
    u64 cur = 1 % p;
    for (u32 i = 0; i < count; ++i) {
        pow[i] = cur;
        cur = mulmod(cur, r, p);
    }
    return pow;
}

// psi and position fingerprints of the chars in [start, start+m-1], with the
// fingerprints in the r_glob = 1 frame.
std::unordered_map<u32, CharState> window_char_states(const SetString& s, u32 start, u32 m,
                                                      const HashParams& params, u64* ops) {
    if (start < 1 || static_cast<u64>(start) + m - 1 > s.length())
        throw std::out_of_range("window outside string");
    const u64 p1 = params.layer1.p;
    const u64 p3 = params.layer3.p;
    std::vector<u64> r1_pow = power_table(params.layer1.r, m, p1);
    std::unordered_map<u32, CharState> chars;
    std::unordered_map<u32, u32> first;
    u64 r3_k = 1 % p3;
    for (u32 idx = start; idx < start + m; ++idx) {
        for (u32 id : s.sets[idx - 1]) {
            auto [fit, fresh] = first.try_emplace(id, idx);
            CharState& cs = chars[id];
            cs.psi = addmod(cs.psi, r1_pow[idx - fit->second], p1);
            cs.p_stored = addmod(cs.p_stored, r3_k, p3);
            if (ops) ++*ops;
        }
        r3_k = mulmod(r3_k, params.layer3.r, p3);
    }
    return chars;
}

u64 combine(const std::unordered_map<u32, CharState>& chars, u64 r_glob,
            const HashParams& params) {
    const FieldParams& f2 = params.layer2;
    const u64 p3 = params.layer3.p;
    u64 h = 0;
    for (const auto& [id, cs] : chars) {
        u64 w = modpow(f2.r, cs.psi, f2.p);
        h = addmod(h, mulmod(w, mulmod(cs.p_stored, r_glob, p3), p3), p3);
    }
    return h;
}

}  // namespace

u64 pattern_hash(const SetString& pattern, const HashParams& params, u64* ops) {
    u32 m = static_cast<u32>(pattern.length());
    if (m == 0) throw std::invalid_argument("pattern_hash: empty pattern");
    return combine(window_char_states(pattern, 1, m, params, ops), 1, params);
}

u64 window_hash_scratch(const SetString& text, u32 start, u32 m, const HashParams& params) {
    if (m == 0) throw std::invalid_argument("window_hash_scratch: empty window");
    return combine(window_char_states(text, start, m, params, nullptr), 1, params);
}

MatcherState init_state(const SetString& text, u32 m, const HashParams& params,
                        OccurrenceLists& occ, u64* ops) {
    if (m == 0 || m > text.length()) throw std::invalid_argument("init_state: bad window size");
    MatcherState state;
    state.m = m;
    state.chars = window_char_states(text, 1, m, params, ops);
    state.h_window = combine(state.chars, 1, params);
    state.r1_pow = power_table(params.layer1.r, m, params.layer1.p);
    state.r3_pow_m1 = modpow(params.layer3.r, m - 1, params.layer3.p);
    occ.reset_cursors();
    return state;
}

void advance(MatcherState& state, const SetString& text, OccurrenceLists& occ,
             const HashParams& params) {
    const u32 i = state.window_start;
    const u32 m = state.m;
    if (static_cast<u64>(i) + m > text.length())
        throw std::out_of_range("advance: no next window");
    const FieldParams& f1 = params.layer1;
    const FieldParams& f2 = params.layer2;
    const FieldParams& f3 = params.layer3;
    const std::vector<u32>& leaving = text.sets[i - 1];
    const std::vector<u32>& entering = text.sets[i + m - 1];
    state.steps += 1 + leaving.size() + entering.size();

    // Merged walk over the two sorted sets; second = membership mask,
    // bit 0 = leaves, bit 1 = enters.
    std::vector<std::pair<u32, u32>> active;
    active.reserve(leaving.size() + entering.size());
    {
        std::size_t a = 0, b = 0;
        while (a < leaving.size() || b < entering.size()) {
            if (b == entering.size() || (a < leaving.size() && leaving[a] < entering[b]))
                active.push_back({leaving[a++], 1});
            else if (a == leaving.size() || entering[b] < leaving[a])
                active.push_back({entering[b++], 2});
            else {
                active.push_back({leaving[a++], 3});
                ++b;
            }
        }
    }

    // (1) Pull the touched chars out of the window hash.
    for (const auto& entry : active) {
        auto it = state.chars.find(entry.first);
        if (it == state.chars.end()) continue;
        u64 w = modpow(f2.r, it->second.psi, f2.p);
        u64 actual = mulmod(it->second.p_stored, state.r_glob, f3.p);
        state.h_window = submod(state.h_window, mulmod(w, actual, f3.p), f3.p);
    }

    // (2) Shift the whole window one step left: every surviving occurrence
    // index drops by one, so every actual fingerprint gains a factor r3^-1.
    state.h_window = mulmod(state.h_window, f3.r_inv, f3.p);
    state.r_glob = mulmod(state.r_glob, f3.r_inv, f3.p);
    state.r_glob_inv = mulmod(state.r_glob_inv, f3.r, f3.p);

    // (3) Retire or rebase leaving heads, then fold in entering occurrences.
    for (const auto& [id, mask] : active) {
        const std::vector<u32>& list = occ.by_char[id];
        if (mask & 1) {
            auto it = state.chars.find(id);
            if (it == state.chars.end() || occ.cursor[id] >= list.size() ||
                list[occ.cursor[id]] != i)
                throw std::logic_error("advance: cursor lost the leaving head");
            u32 next_idx = ++occ.cursor[id];
            u32 delta = next_idx < list.size() ? list[next_idx] - i : m;
            if (delta <= m - 1) {
                // Head removed at relative index 0 of the old frame, which is
                // r3^-1 in the shifted frame; remaining offsets rebase to the
                // next occurrence.
                it->second.p_stored =
                    submod(it->second.p_stored, mulmod(f3.r_inv, state.r_glob_inv, f3.p), f3.p);
                it->second.psi = mulmod(submod(it->second.psi, 1 % f1.p, f1.p),
                                        modpow(f1.r_inv, delta, f1.p), f1.p);
            } else {
                state.chars.erase(it);
            }
        }
        if (mask & 2) {
            u32 first = occ.cursor[id] < list.size() ? list[occ.cursor[id]] : 0;
            if (first <= i || first > i + m)
                throw std::logic_error("advance: cursor lost the entering occurrence");
            CharState& cs = state.chars[id];
            u32 delta_new = (i + m) - first;
            cs.psi = addmod(cs.psi, state.r1_pow[delta_new], f1.p);
            cs.p_stored = addmod(cs.p_stored, mulmod(state.r3_pow_m1, state.r_glob_inv, f3.p), f3.p);
        }
    }

    // (4) Fold the touched chars back in at their new values.
    for (const auto& entry : active) {
        auto it = state.chars.find(entry.first);
        if (it == state.chars.end()) continue;
        u64 w = modpow(f2.r, it->second.psi, f2.p);
        u64 actual = mulmod(it->second.p_stored, state.r_glob, f3.p);
        state.h_window = addmod(state.h_window, mulmod(w, actual, f3.p), f3.p);
    }

    state.window_start = i + 1;
}

namespace {

std::vector<u32> intersect_sorted(const std::vector<u32>& a, const std::vector<u32>& b) {
    std::vector<u32> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

u32 max_id(const SetString& s) {
    u32 top = 0;
    for (const auto& position : s.sets)
        if (!position.empty()) top = std::max(top, position.back());
    return top;
}

}  // namespace

MatchReport find_matches(const SetString& pattern, const SetString& text, u32 sigma,
                         const HashParams& params, bool verify, u32 jobs) {
    const u64 m = pattern.length();
    const u64 n = text.length();
    if (m == 0) throw std::invalid_argument("find_matches: empty pattern");
    if (m > n) throw std::invalid_argument("find_matches: pattern longer than text");
    if (max_id(pattern) > sigma || max_id(text) > sigma)
        throw std::invalid_argument("find_matches: char id exceeds sigma");

    const u32 k = params.repetitions;
    MatchReport report;
    report.params_per_rep.resize(k);
    OccurrenceLists base_occ = OccurrenceLists::build(text, sigma, &report.stats.preprocess_ops);

    std::vector<std::vector<u32>> cands(k);
    std::vector<MatchStats> rep_stats(k);
    std::vector<std::exception_ptr> errors(k);

    auto run_rep = [&](u32 rep) {
        try {
            HashParams rp = for_repetition(params, rep);
            report.params_per_rep[rep] = rp;
            OccurrenceLists occ = base_occ;
            MatchStats st;
            u64 hp = pattern_hash(pattern, rp, &st.preprocess_ops);
            MatcherState state = init_state(text, static_cast<u32>(m), rp, occ, &st.preprocess_ops);
            st.windows = 1;
            if (state.h_window == hp) cands[rep].push_back(1);
            for (u64 i = 1; i + m <= n; ++i) {
                advance(state, text, occ, rp);
                ++st.windows;
                if (state.h_window == hp) cands[rep].push_back(static_cast<u32>(i) + 1);
            }
            st.transition_steps = state.steps;
            rep_stats[rep] = st;
        } catch (...) {
            errors[rep] = std::current_exception();
        }
    };

    u32 workers = std::min(jobs == 0 ? 1u : jobs, k);
    if (workers <= 1) {
        for (u32 rep = 0; rep < k; ++rep) run_rep(rep);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (u32 w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (u32 rep = w; rep < k; rep += workers) run_rep(rep);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (u32 rep = 0; rep < k; ++rep)
        if (errors[rep]) std::rethrow_exception(errors[rep]);

    report.candidates = cands[0];
    for (u32 rep = 1; rep < k; ++rep)
        report.candidates = intersect_sorted(report.candidates, cands[rep]);
    for (const MatchStats& st : rep_stats) {
        report.stats.preprocess_ops += st.preprocess_ops;
        report.stats.transition_steps += st.transition_steps;
        report.stats.windows += st.windows;
    }

    if (verify) {
        report.verified = true;
        for (u32 pos : report.candidates) {
            SetString window = text.slice(pos, m);
            bool ok = exact_compare(pattern, window);
            report.candidate_ok.push_back(ok);
            report.witnesses.push_back(ok ? construct_bijection(pattern, window, sigma)
                                          : std::nullopt);
            report.stats.verify_ops += pattern.char_count + window.char_count;
        }
    }
    return report;
}

}  // namespace spm
