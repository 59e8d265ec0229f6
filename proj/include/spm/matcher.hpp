#pragma once

#include <optional>

#include "spm/compare.hpp"
#include "spm/offsets.hpp"
#include "spm/setstring.hpp"

namespace spm {

// Ascending 1-based occurrence positions per char id, plus a cursor per char
// pointing at its first occurrence >= the current window start. Cursors only
// ever move forward; the whole scan spends O(1) amortized per occurrence.
struct OccurrenceLists {
    std::vector<std::vector<u32>> by_char;  // index 0 unused
    std::vector<u32> cursor;

    static OccurrenceLists build(const SetString& text, u32 sigma, u64* ops = nullptr);
    void reset_cursors();
};

// Per live char: psi is the layer-1 fingerprint of its window-relative offset
// set; p_stored is the stored share of its position fingerprint. The actual
// fingerprint is p_stored * r_glob, so the per-step global shift multiplies
// one scalar instead of every entry.
struct CharState {
    u64 psi = 0;
    u64 p_stored = 0;
};

struct MatcherState {
    std::unordered_map<u32, CharState> chars;  // chars occurring in the window only
    u64 h_window = 0;
    u64 r_glob = 1;
    u64 r_glob_inv = 1;
    u32 window_start = 1;  // 1-based
    u32 m = 0;
    std::vector<u64> r1_pow;  // r1^0 .. r1^(m-1)
    u64 r3_pow_m1 = 1;
    u64 steps = 0;  // sum over advances of 1 + |T[i]| + |T[i+m]|
};

// Window hash of the pattern against itself (the value every matching window
// hash must equal).
u64 pattern_hash(const SetString& pattern, const HashParams& params, u64* ops = nullptr);

// Recomputes the hash of window [start, start+m-1] directly from the slice.
// Testing oracle for the incremental path; also seeds the first window.
u64 window_hash_scratch(const SetString& text, u32 start, u32 m, const HashParams& params);

// State for window [1..m]; resets occ cursors for a fresh scan.
MatcherState init_state(const SetString& text, u32 m, const HashParams& params,
                        OccurrenceLists& occ, u64* ops = nullptr);

// Slides [i, i+m-1] to [i+1, i+m]: isolate the chars of T[i] and T[i+m],
// shift the whole window by r3^-1 via r_glob, retire or rebase the leaving
// occurrences, add the entering ones, and fold the changed chars back in.
void advance(MatcherState& state, const SetString& text, OccurrenceLists& occ,
             const HashParams& params);

struct MatchStats {
    u64 preprocess_ops = 0;    // occurrence lists, pattern hash, first windows
    u64 transition_steps = 0;  // instrumented advance cost over all repetitions
    u64 windows = 0;           // windows hashed over all repetitions
    u64 verify_ops = 0;

    u64 total_steps() const { return preprocess_ops + transition_steps; }
};

struct MatchReport {
    std::vector<u32> candidates;  // 1-based window starts, ascending
    bool verified = false;
    std::vector<bool> candidate_ok;                   // parallel to candidates when verified
    std::vector<std::optional<Bijection>> witnesses;  // parallel to candidates when verified
    std::vector<HashParams> params_per_rep;
    MatchStats stats;
};

// Runs params.repetitions independent scans and intersects their candidate
// lists; a true match is reported by every repetition, so intersection never
// loses one. With verify set, each candidate is checked exactly and gets a
// witness bijection. jobs > 1 spreads repetitions across threads without
// changing the report.
MatchReport find_matches(const SetString& pattern, const SetString& text, u32 sigma,
                         const HashParams& params, bool verify, u32 jobs = 1);

}  // namespace spm
