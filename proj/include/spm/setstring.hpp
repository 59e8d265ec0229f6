#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spm/modhash.hpp"

namespace spm {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Interns tokens to dense 1-based ids in first-occurrence order. Share one
// alphabet across the files of a run so ids agree between pattern and text.
class Alphabet {
public:
    u32 intern(std::string_view token);
    std::optional<u32> find(std::string_view token) const;
    const std::string& token(u32 id) const;  // throws std::out_of_range
    u32 size() const { return static_cast<u32>(tokens_.size()); }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, u32> ids_;
};

// sets[k] holds position k+1 of S[1..n]; each position is a sorted vector of
// distinct char ids. char_count caches N, the total number of occurrences.
struct SetString {
    std::vector<std::vector<u32>> sets;
    u64 char_count = 0;

    u64 length() const { return sets.size(); }

    // Positions [start, start+len-1], 1-based.
    SetString slice(u64 start, u64 len) const;

    bool operator==(const SetString&) const = default;
};

// Sorts each position, drops duplicate ids, fills char_count.
SetString make_setstring(std::vector<std::vector<u32>> sets);

struct Bijection {
    // forward[id] and backward[id]; slot 0 unused, value 0 = unmapped.
    std::vector<u32> forward;
    std::vector<u32> backward;

    static Bijection identity(u32 sigma);
    u32 map(u32 id) const;  // throws std::out_of_range on unmapped ids
    Bijection inverse() const;
    u32 size() const { return forward.empty() ? 0 : static_cast<u32>(forward.size()) - 1; }
    bool operator==(const Bijection&) const = default;
};

struct ParseResult {
    SetString str;
    u32 duplicate_tokens = 0;  // duplicates dropped within positions
};

// One position per line: space-separated tokens, "-" alone for the empty
// set, "#..." lines are comments, whitespace-only lines are skipped. Tokens
// may not start with '#'.
ParseResult parse_setstring(std::string_view text, Alphabet& alphabet);

// Inverse of parse_setstring: "-" for empty positions, tokens in id order.
std::string serialize_setstring(const SetString& s, const Alphabet& alphabet);

// Renames every id through pi.forward; positions are re-sorted.
SetString apply_bijection(const SetString& s, const Bijection& pi);

struct Renumbering {
    Alphabet alphabet;      // same tokens, ids in lexicographic token order
    Bijection old_to_new;
};

Renumbering sorted_renumbering(const Alphabet& alphabet);

}  // namespace spm
