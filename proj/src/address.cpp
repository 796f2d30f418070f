#include "sg/address.hpp"

#include <algorithm>
#include <stdexcept>

namespace sg {

bool valid_word(const Word& w) {
    return std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '2'; });
}

std::string VertexId::to_string() const { return word + ":q" + std::to_string(corner); }

static void check_address(const Word& w, int corner) {
    if (!valid_word(w)) throw std::invalid_argument("address word has digit outside {0,1,2}: " + w);
    if (corner < 0 || corner > 2) throw std::invalid_argument("corner index outside {0,1,2}");
}

VertexId canonicalize(const Word& w, int corner) {
    check_address(w, corner);
    const int m = static_cast<int>(w.size());
    // Strip trailing digits equal to the corner: F_i(q_i) = q_i.
    size_t k = w.size();
    while (k > 0 && w[k - 1] - '0' == corner) --k;
    if (k == 0) {
        // Boundary point q_corner; its only level-m cell is the corner cell.
        return VertexId{m, Word(w.size(), static_cast<char>('0' + corner)), corner};
    }
    // Junction point: minimal addresses are (u·d, i) and (u·i, d).  Lifted back
    // to level m, the lexicographically smaller word puts min(d,i) first.
    const int d = w[k - 1] - '0';
    const int a = std::min(d, corner), b = std::max(d, corner);
    Word out = w.substr(0, k - 1);
    out.push_back(static_cast<char>('0' + a));
    out.append(w.size() - k, static_cast<char>('0' + b));
    return VertexId{m, std::move(out), b};
}

VertexId boundary_vertex(int i, int level) {
    if (i < 0 || i > 2) throw std::invalid_argument("boundary index outside {0,1,2}");
    return VertexId{level, Word(static_cast<size_t>(level), static_cast<char>('0' + i)), i};
}

VertexId lift(const VertexId& v, int m) {
    if (m < v.level) throw std::invalid_argument("lift: target level below vertex level");
    Word w = v.word;
    w.append(static_cast<size_t>(m - v.level), static_cast<char>('0' + v.corner));
    return canonicalize(w, v.corner);
}

int minimal_level(const VertexId& v) {
    size_t k = v.word.size();
    while (k > 0 && v.word[k - 1] - '0' == v.corner) --k;
    return static_cast<int>(k);
}

VertexId apply_contraction(int digit, const VertexId& v) {
    if (digit < 0 || digit > 2) throw std::invalid_argument("contraction index outside {0,1,2}");
    return canonicalize(static_cast<char>('0' + digit) + v.word, v.corner);
}

std::vector<std::pair<Word, int>> addresses(const VertexId& v) {
    const int k = minimal_level(v);
    std::vector<std::pair<Word, int>> out;
    out.emplace_back(v.word, v.corner);
    if (k == 0) return out;  // boundary point, single address
    const int d = v.word[k - 1] - '0';
    Word other = v.word.substr(0, static_cast<size_t>(k) - 1);
    other.push_back(static_cast<char>('0' + v.corner));
    other.append(v.word.size() - static_cast<size_t>(k), static_cast<char>('0' + d));
    out.emplace_back(std::move(other), d);
    return out;
}

VertexId parse_address(const std::string& text) {
    const auto pos = text.find(":q");
    if (pos == std::string::npos || pos + 3 != text.size())
        throw std::invalid_argument("address must look like \"<digits>:q<i>\": " + text);
    const char c = text[pos + 2];
    if (c < '0' || c > '2') throw std::invalid_argument("corner must be q0, q1 or q2: " + text);
    return canonicalize(text.substr(0, pos), c - '0');
}

}  // namespace sg
