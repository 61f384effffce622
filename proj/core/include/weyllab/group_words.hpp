#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace weyllab {

/// Word in the generators: letters are signed indices, +(k+1) for generator k
/// and -(k+1) for its inverse.
struct GroupWord {
    std::vector<std::int8_t> letters;

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }

    bool operator==(const GroupWord& o) const { return letters == o.letters; }
    bool operator<(const GroupWord& o) const;
};

GroupWord word_inverse(const GroupWord& w);
GroupWord word_concat(const GroupWord& a, const GroupWord& b);
GroupWord word_power(const GroupWord& w, int k);

bool is_freely_reduced(const GroupWord& w);
bool is_cyclically_reduced(const GroupWord& w);

GroupWord freely_reduce(GroupWord w);

/// Strips matched conjugating letters off both ends until the word is
/// cyclically reduced.
GroupWord cyclically_reduce(GroupWord w);

/// Lexicographically least cyclic rotation (letters ordered by an encoding
/// that puts +1 < -1 < +2 < -2 < ...).
GroupWord canonical_rotation(const GroupWord& w);

/// Root and exponent of w as a cyclic word: w = root^k with root primitive.
std::pair<GroupWord, int> primitive_decomposition(const GroupWord& w);

std::string word_to_string(const GroupWord& w);          // e.g. "1 -2 3"
GroupWord word_from_string(const std::string& s);

} // namespace weyllab
