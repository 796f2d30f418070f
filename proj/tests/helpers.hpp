#pragma once

#include <random>
#include <string>
#include <vector>

#include "sg/linalg.hpp"
#include "sg/network.hpp"
#include "sg/rational.hpp"

namespace sg::testing {

inline Rational random_rational(std::mt19937& rng, int num_range = 9, int den_range = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return rational(num(rng), den(rng));
}

/// Random complete-ish network on n labeled vertices with nonnegative
/// rational conductances; every vertex keeps at least one positive coupling.
inline Network random_network(std::mt19937& rng, int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    Network net(labels);
    std::uniform_int_distribution<int> num(0, 6);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<char> touched(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Rational c = rational(num(rng), den(rng));
            if (c == 0) continue;
            net.add_conductance(i, j, c);
            touched[static_cast<size_t>(i)] = touched[static_cast<size_t>(j)] = 1;
        }
    for (int i = 0; i < n; ++i)
        if (!touched[static_cast<size_t>(i)]) net.add_conductance(i, (i + 1) % n, rational(1));
    return net;
}

/// Independent trace oracle: dense Schur complement of the network Laplacian
/// onto the kept block; returns the pairwise coefficient c_{x,y} = -S_{x,y}.
inline DenseMatrix<Rational> schur_trace(const Network& net, const std::vector<int>& keep) {
    const int n = net.size();
    DenseMatrix<Rational> lap(n, n);
    for (int i = 0; i < n; ++i)
        for (const auto& [j, c] : net.couplings(i)) {
            lap(i, i) += c;
            lap(i, j) -= c;
        }
    std::vector<char> kept(static_cast<size_t>(n), 0);
    for (int k : keep) kept[static_cast<size_t>(k)] = 1;
    std::vector<int> elim;
    for (int i = 0; i < n; ++i)
        if (!kept[static_cast<size_t>(i)]) elim.push_back(i);
    const int ne = static_cast<int>(elim.size());
    const int nk = static_cast<int>(keep.size());
    // isolated eliminated vertices drop out: remove zero rows first
    std::vector<int> active;
    for (int e : elim)
        if (lap(e, e) != 0) active.push_back(e);
    const int na = static_cast<int>(active.size());
    DenseMatrix<Rational> lee(na, na), lek(na, nk);
    for (int r = 0; r < na; ++r) {
        for (int c = 0; c < na; ++c) lee(r, c) = lap(active[static_cast<size_t>(r)], active[static_cast<size_t>(c)]);
        for (int c = 0; c < nk; ++c) lek(r, c) = lap(active[static_cast<size_t>(r)], keep[static_cast<size_t>(c)]);
    }
    DenseMatrix<Rational> s(nk, nk);
    for (int r = 0; r < nk; ++r)
        for (int c = 0; c < nk; ++c) s(r, c) = lap(keep[static_cast<size_t>(r)], keep[static_cast<size_t>(c)]);
    if (na > 0) {
        const auto inv = invert_dense(lee);
        for (int r = 0; r < nk; ++r)
            for (int c = 0; c < nk; ++c) {
                Rational acc(0);
                for (int p = 0; p < na; ++p)
                    for (int q = 0; q < na; ++q) acc += lek(p, r) * inv(p, q) * lek(q, c);
                s(r, c) -= acc;
            }
    }
    (void)ne;
    return s;  // traced coefficient c_{keep[r],keep[c]} = -s(r,c) for r != c
}

}  // namespace sg::testing
