#include "spm/oracle.hpp"

#include <algorithm>

namespace spm {

namespace {

std::vector<u32> occurring_chars(const SetString& s) {
    std::vector<u32> out;
    for (const auto& position : s.sets) out.insert(out.end(), position.begin(), position.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

u64 factorial_capped(u64 k, u64 cap) {
    u64 f = 1;
    for (u64 i = 2; i <= k; ++i) {
        if (f > cap / i) return cap + 1;
        f *= i;
    }
    return f;
}

}  // namespace

bool bijection_enumerate_compare(const SetString& s1, const SetString& s2,
                                 const OracleBudget& budget) {
    if (s1.length() != s2.length()) return false;
    for (u64 i = 0; i < s1.length(); ++i)
        if (s1.sets[i].size() != s2.sets[i].size()) return false;

    std::vector<u32> a = occurring_chars(s1);
    std::vector<u32> b = occurring_chars(s2);
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    if (a.size() > budget.max_alphabet)
        throw BudgetExceeded("bijection enumeration: alphabet too large");
    u64 perms = factorial_capped(a.size(), budget.max_work);
    if (perms > budget.max_work / std::max<u64>(1, s1.char_count + 1))
        throw BudgetExceeded("bijection enumeration: too much work");

    std::unordered_map<u32, u32> index_of;
    for (std::size_t t = 0; t < a.size(); ++t) index_of[a[t]] = static_cast<u32>(t);

    std::vector<u32> image = b;  // image[index_of[id]] = mapped id
    std::vector<u32> mapped;
    do {
        bool ok = true;
        for (u64 i = 0; i < s1.length() && ok; ++i) {
            mapped.clear();
            for (u32 id : s1.sets[i]) mapped.push_back(image[index_of[id]]);
            std::sort(mapped.begin(), mapped.end());
            ok = mapped == s2.sets[i];
        }
        if (ok) return true;
    } while (std::next_permutation(image.begin(), image.end()));
    return false;
}

std::vector<u32> oracle_find_matches(const SetString& pattern, const SetString& text,
                                     const OracleBudget& budget, bool crosscheck) {
    const u64 m = pattern.length();
    const u64 n = text.length();
    if (m == 0) throw std::invalid_argument("oracle_find_matches: empty pattern");
    if (m > n) throw std::invalid_argument("oracle_find_matches: pattern longer than text");
    std::vector<u32> out;
    for (u64 i = 1; i + m - 1 <= n; ++i) {
        SetString window = text.slice(i, m);
        bool match = exact_compare(pattern, window);
        if (crosscheck && bijection_enumerate_compare(pattern, window, budget) != match)
            throw std::logic_error("oracle routes disagree at window " + std::to_string(i));
        if (match) out.push_back(static_cast<u32>(i));
    }
    return out;
}

}  // namespace spm
