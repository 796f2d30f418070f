#include "sg/graph.hpp"

#include <deque>
#include <stdexcept>

namespace sg {

namespace {

// Words of length m in lexicographic order, as an incrementing counter.
Word word_at(long cell, int level) {
    Word w(static_cast<size_t>(level), '0');
    for (int pos = level - 1; pos >= 0; --pos) {
        w[static_cast<size_t>(pos)] = static_cast<char>('0' + cell % 3);
        cell /= 3;
    }
    return w;
}

long pow3(int m) {
    long p = 1;
    while (m-- > 0) p *= 3;
    return p;
}

}  // namespace

LevelGraph::LevelGraph(int level) : level_(level), conductance_(energy_weight(level)) {
    if (level < 0) throw std::invalid_argument("graph level must be nonnegative");
    const long ncells = pow3(level);
    cells_.reserve(static_cast<size_t>(ncells));
    auto intern = [&](const VertexId& v) {
        auto [it, fresh] = index_.emplace(v, static_cast<int>(verts_.size()));
        if (fresh) verts_.push_back(v);
        return it->second;
    };
    for (long c = 0; c < ncells; ++c) {
        const Word w = word_at(c, level);
        std::array<int, 3> corner{};
        for (int i = 0; i < 3; ++i) corner[static_cast<size_t>(i)] = intern(canonicalize(w, i));
        cells_.push_back(corner);
        // Every level-m edge lies in exactly one m-cell, so no deduplication.
        edges_.emplace_back(corner[0], corner[1]);
        edges_.emplace_back(corner[0], corner[2]);
        edges_.emplace_back(corner[1], corner[2]);
    }
    adj_.resize(verts_.size());
    for (const auto& [a, b] : edges_) {
        adj_[static_cast<size_t>(a)].push_back(b);
        adj_[static_cast<size_t>(b)].push_back(a);
    }
    for (int i = 0; i < 3; ++i) boundary_[static_cast<size_t>(i)] = index_of(boundary_vertex(i, level));
}

Word LevelGraph::cell_word(int cell) const { return word_at(cell, level_); }

int LevelGraph::index_of(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::invalid_argument("vertex not in V_" + std::to_string(level_) + ": " + v.to_string());
    return it->second;
}

LevelGraph build_level_graph(int level) { return LevelGraph(level); }

std::optional<int> graph_distance_avoiding(const LevelGraph& g, const VertexId& x,
                                           const VertexId& y,
                                           const std::vector<VertexId>& avoid) {
    const int s = g.index_of(x), t = g.index_of(y);
    if (s == t) return 0;
    std::vector<char> blocked(static_cast<size_t>(g.vertex_count()), 0);
    for (const auto& a : avoid)
        if (g.contains(a)) blocked[static_cast<size_t>(g.index_of(a))] = 1;
    blocked[static_cast<size_t>(s)] = blocked[static_cast<size_t>(t)] = 0;
    std::vector<int> dist(static_cast<size_t>(g.vertex_count()), -1);
    std::deque<int> queue{s};
    dist[static_cast<size_t>(s)] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : g.neighbors(v)) {
            if (dist[static_cast<size_t>(u)] >= 0) continue;
            dist[static_cast<size_t>(u)] = dist[static_cast<size_t>(v)] + 1;
            if (u == t) return dist[static_cast<size_t>(u)];
            if (!blocked[static_cast<size_t>(u)]) queue.push_back(u);
        }
    }
    return std::nullopt;
}

std::vector<VertexId> bottom_row(int level) {
    // Position j/2^m along the q_1 -> q_2 side; digits 1 and 2 halve the range.
    std::vector<VertexId> row;
    const long count = 1L << level;
    row.reserve(static_cast<size_t>(count) + 1);
    for (long j = 0; j <= count; ++j) {
        Word w;
        long num = j, den = count;
        for (int k = 0; k < level; ++k) {
            den /= 2;
            if (num < den) {
                w.push_back('1');
            } else {
                w.push_back('2');
                num -= den;
            }
        }
        row.push_back(canonicalize(w, num == 0 ? 1 : 2));
    }
    return row;
}

std::vector<Rational> measure_weights(const LevelGraph& g) {
    std::vector<Rational> w(static_cast<size_t>(g.vertex_count()), Rational(0));
    const Rational cell_share = rat_pow(rational(1, 3), g.level()) / 3;
    for (const auto& cell : g.cells())
        for (int v : cell) w[static_cast<size_t>(v)] += cell_share;
    return w;
}

}  // namespace sg
