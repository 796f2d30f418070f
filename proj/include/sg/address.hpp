#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sg {

/// A word over the contraction alphabet {0,1,2}; the empty word is level 0.
using Word = std::string;  // digits '0'..'2'

bool valid_word(const Word& w);

/// Canonical identity of a point of V_m.
///
/// Junction points carry two (word, corner) addresses; the canonical one is
/// the lexicographically smallest pair, so equality of ids is equality of
/// points.
struct VertexId {
    int level = 0;
    Word word;   // length == level
    int corner = 0;  // 0, 1 or 2

    auto operator<=>(const VertexId&) const = default;

    std::string to_string() const;  // "<digits>:q<i>"
};

/// Canonical id of the point F_w(q_corner) at level |w|.
VertexId canonicalize(const Word& w, int corner);

/// The boundary point q_i viewed in V_level.
VertexId boundary_vertex(int i, int level);

/// Same point, re-addressed at a deeper level (m >= v.level).
VertexId lift(const VertexId& v, int m);

/// Smallest level at which the point appears (length of its minimal word).
int minimal_level(const VertexId& v);

/// The point F_digit(v), one level deeper.
VertexId apply_contraction(int digit, const VertexId& v);

/// All (word, corner) addresses of v at its own level: one for boundary
/// points, two for junction points.
std::vector<std::pair<Word, int>> addresses(const VertexId& v);

/// Parses "<digits>:q<i>" (boundary points ":q0" etc.) and canonicalizes.
VertexId parse_address(const std::string& text);

struct VertexIdHash {
    size_t operator()(const VertexId& v) const {
        size_t h = std::hash<std::string>()(v.word);
        return h * 31 + static_cast<size_t>(v.corner) * 7 + static_cast<size_t>(v.level);
    }
};

}  // namespace sg
