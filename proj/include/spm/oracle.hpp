#pragma once

#include "spm/offsets.hpp"
#include "spm/setstring.hpp"

namespace spm {

struct OracleBudget {
    u32 max_alphabet = 8;       // enumerate only up to this many occurring chars
    u64 max_work = 200000000;   // cap on permutations x positions touched
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Ground truth by brute force: tries every bijection between the occurring
// chars of s1 and s2 (any of them extends to a full alphabet bijection).
// Throws BudgetExceeded when the factorial search would blow the budget.
bool bijection_enumerate_compare(const SetString& s1, const SetString& s2,
                                 const OracleBudget& budget = {});

// Window scan ground truth via exact_compare. With crosscheck set, every
// window is also settled by enumeration (subject to the budget) and a
// disagreement between the two routes raises std::logic_error.
std::vector<u32> oracle_find_matches(const SetString& pattern, const SetString& text,
                                     const OracleBudget& budget = {}, bool crosscheck = false);

}  // namespace spm
