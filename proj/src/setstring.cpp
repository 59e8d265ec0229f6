#include "spm/setstring.hpp"

#include <algorithm>

namespace spm {

u32 Alphabet::intern(std::string_view token) {
    auto it = ids_.find(std::string(token));
    if (it != ids_.end()) return it->second;
    tokens_.emplace_back(token);
    u32 id = static_cast<u32>(tokens_.size());
    ids_.emplace(tokens_.back(), id);
    return id;
}

std::optional<u32> Alphabet::find(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& Alphabet::token(u32 id) const {
    if (id == 0 || id > tokens_.size()) throw std::out_of_range("Alphabet: bad id");
    return tokens_[id - 1];
}

SetString SetString::slice(u64 start, u64 len) const {
    if (start < 1 || start + len - 1 > length())
        throw std::out_of_range("SetString::slice: window outside string");
    SetString out;
    out.sets.assign(sets.begin() + (start - 1), sets.begin() + (start - 1 + len));
    for (const auto& pos : out.sets) out.char_count += pos.size();
    return out;
}

SetString make_setstring(std::vector<std::vector<u32>> sets) {
    SetString out;
    out.sets = std::move(sets);
    for (auto& pos : out.sets) {
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        out.char_count += pos.size();
    }
    return out;
}

Bijection Bijection::identity(u32 sigma) {
    Bijection b;
    b.forward.resize(sigma + 1);
    for (u32 i = 0; i <= sigma; ++i) b.forward[i] = i;
    b.forward[0] = 0;
    b.backward = b.forward;
    return b;
}

u32 Bijection::map(u32 id) const {
    if (id == 0 || id >= forward.size() || forward[id] == 0)
        throw std::out_of_range("Bijection: unmapped id");
    return forward[id];
}

Bijection Bijection::inverse() const {
    Bijection b;
    b.forward = backward;
    b.backward = forward;
    return b;
}

namespace {

bool blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

ParseResult parse_setstring(std::string_view text, Alphabet& alphabet) {
    ParseResult out;
    std::vector<std::vector<u32>> sets;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos == text.size()) break;
            nl = text.size();
        }
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (blank(line)) continue;
        if (line.front() == '#') continue;
        if (line == "-") {
            sets.emplace_back();
            continue;
        }
        std::vector<u32> ids;
        std::size_t t = 0;
        while (t < line.size()) {
            std::size_t e = line.find_first_of(" \t", t);
            if (e == std::string_view::npos) e = line.size();
            if (e > t) {
                std::string_view token = line.substr(t, e - t);
                if (token.front() == '#')
                    throw ParseError("token may not start with '#'", lineno);
                ids.push_back(alphabet.intern(token));
            }
            t = e + 1;
        }
        std::sort(ids.begin(), ids.end());
        auto dup = std::unique(ids.begin(), ids.end());
        out.duplicate_tokens += static_cast<u32>(ids.end() - dup);
        ids.erase(dup, ids.end());
        out.str.char_count += ids.size();
        sets.push_back(std::move(ids));
    }
    out.str.sets = std::move(sets);
    return out;
}

std::string serialize_setstring(const SetString& s, const Alphabet& alphabet) {
    std::string out;
    for (const auto& position : s.sets) {
        if (position.empty()) {
            out += "-\n";
            continue;
        }
        for (std::size_t j = 0; j < position.size(); ++j) {
            if (j > 0) out += ' ';
            out += alphabet.token(position[j]);
        }
        out += '\n';
    }
    return out;
}

SetString apply_bijection(const SetString& s, const Bijection& pi) {
    SetString out;
    out.sets.reserve(s.sets.size());
    out.char_count = s.char_count;
    for (const auto& position : s.sets) {
        std::vector<u32> mapped;
        mapped.reserve(position.size());
        for (u32 id : position) mapped.push_back(pi.map(id));
        std::sort(mapped.begin(), mapped.end());
        out.sets.push_back(std::move(mapped));
    }
    return out;
}

Renumbering sorted_renumbering(const Alphabet& alphabet) {
    std::vector<u32> order(alphabet.size());
    for (u32 i = 0; i < alphabet.size(); ++i) order[i] = i + 1;
    std::sort(order.begin(), order.end(),
              [&](u32 a, u32 b) { return alphabet.token(a) < alphabet.token(b); });
    Renumbering out;
    out.old_to_new.forward.assign(alphabet.size() + 1, 0);
    out.old_to_new.backward.assign(alphabet.size() + 1, 0);
    for (u32 new_id = 1; new_id <= alphabet.size(); ++new_id) {
        u32 old_id = order[new_id - 1];
        out.alphabet.intern(alphabet.token(old_id));
        out.old_to_new.forward[old_id] = new_id;
        out.old_to_new.backward[new_id] = old_id;
    }
    return out;
}

}  // namespace spm
