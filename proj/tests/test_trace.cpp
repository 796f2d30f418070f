#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "sg/network.hpp"

using namespace sg;
using sg::testing::random_network;
using sg::testing::schur_trace;

TEST_CASE("single star-mesh steps") {
    Network tri({"1", "2", "3"});
    tri.add_conductance(0, 1, rational(1));
    tri.add_conductance(0, 2, rational(1));
    tri.add_conductance(1, 2, rational(1));
    const Network r = tri.eliminate_vertex("3");
    CHECK(r.conductance("1", "2") == rational(3, 2));

    Network star({"c", "a", "b", "d"});
    for (int leaf = 1; leaf <= 3; ++leaf) star.add_conductance(0, leaf, rational(1));
    const Network s = star.eliminate_vertex("c");
    CHECK(s.conductance("a", "b") == rational(1, 3));
    CHECK(s.conductance("a", "d") == rational(1, 3));
    CHECK(s.conductance("b", "d") == rational(1, 3));

    Network iso({"a", "b", "z"});
    iso.add_conductance(0, 1, rational(2));
    const Network t = iso.eliminate_vertex("z");
    CHECK(t.conductance("a", "b") == rational(2));
}

TEST_CASE("trace to the full label set is the identity") {
    std::mt19937 rng(5);
    const Network net = random_network(rng, 5);
    const Network same = net.trace_to(net.labels());
    for (int i = 0; i < net.size(); ++i)
        for (int j = i + 1; j < net.size(); ++j)
            CHECK(same.conductance(net.labels()[static_cast<size_t>(i)], net.labels()[static_cast<size_t>(j)]) ==
                  net.conductance(i, j));
}

TEST_CASE("level-1 form traces to the level-0 unit triangle") {
    const LevelGraph g(1);
    const Network net = effective_form(g, {boundary_vertex(0, 0), boundary_vertex(1, 0), boundary_vertex(2, 0)});
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK(net.conductance(i, j) == 1);
}

TEST_CASE("elimination order does not change the trace") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 4);  // 5..8
        const Network net = random_network(rng, n);
        std::vector<std::string> keep = {net.labels()[0], net.labels()[1], net.labels()[2]};
        std::vector<std::string> order(net.labels().begin() + 3, net.labels().end());
        const Network a = net.trace_to(keep);
        for (int rep = 0; rep < 3; ++rep) {
            std::shuffle(order.begin(), order.end(), rng);
            const Network b = net.trace_to(keep, order);
            for (size_t i = 0; i < keep.size(); ++i)
                for (size_t j = i + 1; j < keep.size(); ++j)
                    CHECK(a.conductance(keep[i], keep[j]) == b.conductance(keep[i], keep[j]));
        }
    }
}

TEST_CASE("trace agrees with the dense Schur-complement oracle") {
    std::mt19937 rng(23);
    int done = 0;
    while (done < 100) {
        const int n = 4 + static_cast<int>(rng() % 3);  // 4..6
        const Network net = random_network(rng, n);
        std::vector<std::string> keep = {net.labels()[0], net.labels()[1]};
        if (n > 4) keep.push_back(net.labels()[2]);
        std::vector<int> keep_idx;
        for (const auto& l : keep) keep_idx.push_back(net.index_of(l));
        DenseMatrix<Rational> s;
        try {
            s = schur_trace(net, keep_idx);
        } catch (const std::runtime_error&) {
            continue;  // floating eliminated component; not a valid oracle case
        }
        const Network traced = net.trace_to(keep);
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = i + 1; j < keep.size(); ++j)
                CHECK(traced.conductance(keep[i], keep[j]) ==
                      -s(static_cast<int>(i), static_cast<int>(j)));
        ++done;
    }
}

TEST_CASE("coefficients grow when the kept set shrinks") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const Network net = random_network(rng, 7);
        std::vector<std::string> large = {net.labels()[0], net.labels()[1], net.labels()[2], net.labels()[3]};
        std::vector<std::string> small = {net.labels()[0], net.labels()[1], net.labels()[2]};
        const Network big = net.trace_to(large);
        const Network sml = big.trace_to(small);
        for (size_t i = 0; i < small.size(); ++i)
            for (size_t j = i + 1; j < small.size(); ++j)
                CHECK(sml.conductance(small[i], small[j]) >= big.conductance(small[i], small[j]));
    }
}

TEST_CASE("edge-neighbor coefficients stay within the two-sided bound") {
    std::mt19937 rng(59);
    for (int m = 1; m <= 4; ++m) {
        const LevelGraph g(m);
        const Rational lo = energy_weight(m), hi = 4 * energy_weight(m);
        for (int trial = 0; trial < 10; ++trial) {
            const auto& edge = g.edges()[rng() % g.edges().size()];
            std::vector<VertexId> keep = {g.vertex(edge.first), g.vertex(edge.second)};
            std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
            for (int extra = 0; extra < 4; ++extra) {
                const VertexId v = g.vertex(pick(rng));
                if (std::find(keep.begin(), keep.end(), v) == keep.end()) keep.push_back(v);
            }
            const Network net = effective_form(g, keep);
            const Rational c = net.conductance(net.index_of(keep[0].to_string()),
                                               net.index_of(keep[1].to_string()));
            CHECK(c >= lo);
            CHECK(c <= hi);
        }
    }
}

TEST_CASE("zero coefficient exactly when every path is blocked") {
    std::mt19937 rng(67);
    for (int m = 1; m <= 3; ++m) {
        const LevelGraph g(m);
        for (int trial = 0; trial < 8; ++trial) {
            std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
            std::set<int> chosen;
            while (chosen.size() < std::min<size_t>(7, static_cast<size_t>(g.vertex_count())))
                chosen.insert(pick(rng));
            std::vector<VertexId> a;
            for (int i : chosen) a.push_back(g.vertex(i));
            const Network net = effective_form(g, a);
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = i + 1; j < a.size(); ++j) {
                    const bool blocked = is_zero_coefficient(g, a, a[i], a[j]);
                    const Rational c = net.conductance(net.index_of(a[i].to_string()),
                                                       net.index_of(a[j].to_string()));
                    CHECK(blocked == (c == 0));
                }
        }
    }
}

TEST_CASE("lower-bound sequences and the path-length bound") {
    CHECK(lower_bound_value(1) == 1);
    CHECK(lower_bound_value(2) == rational(1, 4));
    CHECK(lower_bound_value(3) == rational(1, 160));
    const LowerBoundSequences seq(6);
    CHECK(seq.b[2] == 8);
    for (int i = 1; i <= 6; ++i) {
        CHECK(seq.a[static_cast<size_t>(i)] > 0);
        CHECK(seq.b[static_cast<size_t>(i)] > 0);
    }

    std::mt19937 rng(83);
    int done = 0;
    while (done < 60) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const LevelGraph g(m);
        std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
        std::set<int> chosen;
        while (chosen.size() < 5) chosen.insert(pick(rng));
        std::vector<VertexId> a;
        for (int i : chosen) a.push_back(g.vertex(i));
        const Network net = effective_form(g, a);
        for (size_t i = 0; i < a.size() && done < 60; ++i)
            for (size_t j = i + 1; j < a.size() && done < 60; ++j) {
                const auto n = graph_distance_avoiding(g, a[i], a[j], a);
                if (!n) continue;
                const Rational c = net.conductance(net.index_of(a[i].to_string()),
                                                   net.index_of(a[j].to_string()));
                CHECK(c >= lower_bound_value(*n) * energy_weight(m));
                ++done;
            }
    }
}
