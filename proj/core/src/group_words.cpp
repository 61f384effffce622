#include "weyllab/group_words.hpp"

#include "weyllab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace weyllab {

namespace {

// +1 < -1 < +2 < -2 < ... as unsigned keys 0,1,2,3,...
inline int letter_key(std::int8_t l) {
    int k = (l > 0 ? l : -l) - 1;
    return 2 * k + (l < 0 ? 1 : 0);
}

inline bool letter_less(std::int8_t a, std::int8_t b) { return letter_key(a) < letter_key(b); }

bool rotation_less(const GroupWord& w, std::size_t ra, std::size_t rb) {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::int8_t la = w.letters[(ra + i) % n];
        std::int8_t lb = w.letters[(rb + i) % n];
        if (la != lb) return letter_less(la, lb);
    }
    return false;
}

} // namespace

bool GroupWord::operator<(const GroupWord& o) const {
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i] != o.letters[i]) return letter_less(letters[i], o.letters[i]);
    return false;
}

GroupWord word_inverse(const GroupWord& w) {
    GroupWord r;
    r.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        r.letters.push_back(static_cast<std::int8_t>(-*it));
    return r;
}

GroupWord word_concat(const GroupWord& a, const GroupWord& b) {
    GroupWord r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return freely_reduce(std::move(r));
}

GroupWord word_power(const GroupWord& w, int k) {
    if (k < 0) return word_power(word_inverse(w), -k);
    GroupWord r;
    for (int i = 0; i < k; ++i)
        r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
    return freely_reduce(std::move(r));
}

bool is_freely_reduced(const GroupWord& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w.letters[i] == -w.letters[i + 1]) return false;
    return true;
}

bool is_cyclically_reduced(const GroupWord& w) {
    if (!is_freely_reduced(w)) return false;
    if (w.size() >= 2 && w.letters.front() == -w.letters.back()) return false;
    return true;
}

GroupWord freely_reduce(GroupWord w) {
    std::vector<std::int8_t> out;
    out.reserve(w.size());
    for (std::int8_t l : w.letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    w.letters = std::move(out);
    return w;
}

GroupWord cyclically_reduce(GroupWord w) {
    w = freely_reduce(std::move(w));
    while (w.size() >= 2 && w.letters.front() == -w.letters.back()) {
        w.letters.erase(w.letters.begin());
        w.letters.pop_back();
        w = freely_reduce(std::move(w));
    }
    return w;
}

GroupWord canonical_rotation(const GroupWord& w) {
    if (w.size() <= 1) return w;
    std::size_t best = 0;
    for (std::size_t r = 1; r < w.size(); ++r)
        if (rotation_less(w, r, best)) best = r;
    GroupWord out;
    out.letters.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out.letters.push_back(w.letters[(best + i) % w.size()]);
    return out;
}

std::pair<GroupWord, int> primitive_decomposition(const GroupWord& w) {
    if (w.empty() || !is_cyclically_reduced(w))
        throw Error("fuchsian.Word", "primitive_decomposition requires a nonempty cyclically reduced word");
    const std::size_t n = w.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = 0; i + p < n && periodic; ++i)
            if (w.letters[i] != w.letters[i + p]) periodic = false;
        if (periodic) {
            GroupWord root;
            root.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(p));
            return {root, static_cast<int>(n / p)};
        }
    }
    return {w, 1};
}

std::string word_to_string(const GroupWord& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << static_cast<int>(w.letters[i]);
    }
    return os.str();
}

GroupWord word_from_string(const std::string& s) {
    GroupWord w;
    std::istringstream is(s);
    int v;
    while (is >> v) {
        if (v == 0 || v > 127 || v < -127) throw FileFormatError("bad word letter " + std::to_string(v));
        w.letters.push_back(static_cast<std::int8_t>(v));
    }
    return w;
}

} // namespace weyllab
