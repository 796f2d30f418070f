#include "sg/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sg {

const Rational Network::zero_ = Rational(0);

Network::Network(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (int i = 0; i < size(); ++i) {
        if (!index_.emplace(labels_[static_cast<size_t>(i)], i).second)
            throw std::invalid_argument("duplicate network label: " + labels_[static_cast<size_t>(i)]);
    }
    adj_.resize(labels_.size());
}

int Network::index_of(const std::string& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw std::invalid_argument("label not in network: " + l);
    return it->second;
}

const Rational& Network::conductance(int i, int j) const {
    const auto& row = adj_[static_cast<size_t>(i)];
    auto it = row.find(j);
    return it == row.end() ? zero_ : it->second;
}

const Rational& Network::conductance(const std::string& x, const std::string& y) const {
    return conductance(index_of(x), index_of(y));
}

void Network::add_conductance(int i, int j, const Rational& c) {
    if (i == j) throw std::invalid_argument("self-loop conductance");
    if (c < 0) throw std::invalid_argument("negative conductance");
    if (c == 0) return;
    adj_[static_cast<size_t>(i)][j] += c;
    adj_[static_cast<size_t>(j)][i] += c;
}

void Network::eliminate_in_place(int v) {
    auto row = std::move(adj_[static_cast<size_t>(v)]);
    adj_[static_cast<size_t>(v)].clear();
    Rational total(0);
    for (const auto& [u, c] : row) total += c;
    for (const auto& [u, c] : row) adj_[static_cast<size_t>(u)].erase(v);
    if (total == 0) return;  // isolated vertex: plain deletion
    for (auto i = row.begin(); i != row.end(); ++i) {
        for (auto j = std::next(i); j != row.end(); ++j) {
            const Rational gain = i->second * j->second / total;
            adj_[static_cast<size_t>(i->first)][j->first] += gain;
            adj_[static_cast<size_t>(j->first)][i->first] += gain;
        }
    }
}

Network Network::eliminate_vertex(const std::string& label) const {
    const int v = index_of(label);
    Network work = *this;
    work.eliminate_in_place(v);
    std::vector<std::string> keep;
    for (const auto& l : labels_)
        if (l != label) keep.push_back(l);
    Network out(keep);
    for (int a = 0; a < out.size(); ++a) {
        const int va = index_of(out.labels_[static_cast<size_t>(a)]);
        for (const auto& [u, c] : work.adj_[static_cast<size_t>(va)]) {
            const int b = out.index_of(labels_[static_cast<size_t>(u)]);
            if (b > a) out.add_conductance(a, b, c);
        }
    }
    return out;
}

Network Network::trace_to(const std::vector<std::string>& keep,
                          const std::vector<std::string>& order) const {
    if (keep.size() < 2) throw std::invalid_argument("trace_to: keep set needs at least two labels");
    std::vector<char> kept(static_cast<size_t>(size()), 0);
    for (const auto& l : keep) kept[static_cast<size_t>(index_of(l))] = 1;

    Network work = *this;
    if (!order.empty()) {
        std::set<int> seen;
        for (const auto& l : order) {
            const int v = index_of(l);
            if (kept[static_cast<size_t>(v)]) throw std::invalid_argument("order eliminates a kept label: " + l);
            if (!seen.insert(v).second) throw std::invalid_argument("order repeats label: " + l);
            work.eliminate_in_place(v);
        }
        if (static_cast<int>(order.size() + keep.size()) != size())
            throw std::invalid_argument("order must cover every eliminated label");
    } else {
        // minimum positive degree first; isolated vertices drop for free
        for (;;) {
            int best = -1;
            size_t best_deg = 0;
            for (int v = 0; v < size(); ++v) {
                if (kept[static_cast<size_t>(v)]) continue;
                const auto& row = work.adj_[static_cast<size_t>(v)];
                if (row.empty()) continue;
                if (best < 0 || row.size() < best_deg) { best = v; best_deg = row.size(); }
            }
            if (best < 0) break;
            work.eliminate_in_place(best);
        }
    }

    Network out(keep);
    for (int a = 0; a < out.size(); ++a) {
        const int va = index_of(out.labels_[static_cast<size_t>(a)]);
        for (const auto& [u, c] : work.adj_[static_cast<size_t>(va)]) {
            if (!kept[static_cast<size_t>(u)]) continue;  // only possible leftovers are kept
            const int b = out.index_of(labels_[static_cast<size_t>(u)]);
            if (b > a) out.add_conductance(a, b, c);
        }
    }
    return out;
}

Network level_network(const LevelGraph& g) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(g.vertex_count()));
    for (const auto& v : g.vertices()) labels.push_back(v.to_string());
    Network net(std::move(labels));
    for (const auto& [a, b] : g.edges()) net.add_conductance(a, b, g.conductance());
    return net;
}

Network effective_form(const LevelGraph& g, const std::vector<VertexId>& keep) {
    std::vector<std::string> labels;
    labels.reserve(keep.size());
    for (const auto& v : keep) labels.push_back(lift(v, g.level()).to_string());
    return level_network(g).trace_to(labels);
}

bool is_zero_coefficient(const LevelGraph& g, const std::vector<VertexId>& a,
                         const VertexId& x, const VertexId& y) {
    auto member = [&](const VertexId& p) {
        return std::find(a.begin(), a.end(), p) != a.end();
    };
    if (!member(x) || !member(y)) throw std::invalid_argument("is_zero_coefficient: endpoints must lie in A");
    return !graph_distance_avoiding(g, x, y, a).has_value();
}

LowerBoundSequences::LowerBoundSequences(int n) {
    if (n < 1) throw std::invalid_argument("lower bound sequences need n >= 1");
    a.assign(static_cast<size_t>(n) + 1, Rational(0));
    b.assign(static_cast<size_t>(n) + 1, Rational(0));
    a[1] = b[1] = 1;
    for (int i = 1; i < n; ++i) {
        a[static_cast<size_t>(i) + 1] = a[static_cast<size_t>(i)] / ((i + 3) * b[static_cast<size_t>(i)]);
        b[static_cast<size_t>(i) + 1] = 4 * (1 + b[static_cast<size_t>(i)] / a[static_cast<size_t>(i)]);
    }
}

Rational lower_bound_value(int path_length) {
    return LowerBoundSequences(path_length).a[static_cast<size_t>(path_length)];
}

}  // namespace sg
