#include "sg/special.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "sg/graph.hpp"

namespace sg {

namespace {

const LevelGraph& cached_graph(int level) {
    static std::map<int, LevelGraph> cache;
    auto it = cache.find(level);
    if (it == cache.end()) it = cache.emplace(level, LevelGraph(level)).first;
    return it->second;
}

std::vector<VertexId> beta0() {
    return {
        boundary_vertex(0, 2), boundary_vertex(1, 2), boundary_vertex(2, 2),
        canonicalize("02", 1),  // p_0
        canonicalize("10", 2),  // p_1
        canonicalize("21", 0),  // p_2
    };
}

// base-table lookup; points must be distinct members of beta_0
Rational beta0_value(const VertexId& x, const VertexId& y) {
    const auto pts = beta0();
    auto kind = [&](const VertexId& v) -> std::pair<char, int> {
        for (int i = 0; i < 6; ++i)
            if (pts[static_cast<size_t>(i)] == v) return {i < 3 ? 'q' : 'p', i % 3};
        throw std::invalid_argument("point not in beta_0: " + v.to_string());
    };
    const auto [kx, ix] = kind(x);
    const auto [ky, iy] = kind(y);
    if (kx == ky) {
        if (ix == iy) throw std::invalid_argument("beta coefficient of a point with itself");
        return kx == 'q' ? rational(5, 53) : rational(80, 53);
    }
    return ix == iy ? rational(410, 159) : rational(20, 53);
}

// F_i^{-1} applied through either address of v; nullopt when v is not in the
// closed 1-cell with the given first digit.
std::optional<VertexId> strip_digit(const VertexId& v, int digit) {
    for (const auto& [w, c] : addresses(v)) {
        if (!w.empty() && w[0] - '0' == digit) return canonicalize(w.substr(1), c);
    }
    return std::nullopt;
}

bool in_set(const std::vector<VertexId>& set, const VertexId& v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

}  // namespace

std::vector<VertexId> beta_points(int m) {
    if (m < 0) throw std::invalid_argument("beta level must be nonnegative");
    std::vector<VertexId> cur = beta0();
    for (int k = 1; k <= m; ++k) {
        std::set<VertexId> next;
        for (int i = 0; i < 3; ++i)
            for (const auto& v : cur) next.insert(apply_contraction(i, v));
        cur.assign(next.begin(), next.end());
    }
    return cur;
}

Rational beta_expected(int m, const VertexId& x, const VertexId& y) {
    const auto pts = beta_points(m);
    if (!in_set(pts, x) || !in_set(pts, y))
        throw std::invalid_argument("points not in beta_" + std::to_string(m));
    if (x == y) throw std::invalid_argument("beta coefficient of a point with itself");
    if (m == 0) return beta0_value(x, y);
    const auto prev = beta_points(m - 1);
    for (int i = 0; i < 3; ++i) {
        const auto sx = strip_digit(x, i);
        const auto sy = strip_digit(y, i);
        if (sx && sy && in_set(prev, *sx) && in_set(prev, *sy) && *sx != *sy)
            return rational(5, 3) * beta_expected(m - 1, *sx, *sy);
    }
    return Rational(0);  // different m-cells
}

std::vector<VertexId> new_level_points(int n) {
    if (n < 1) throw std::invalid_argument("new-level index must be >= 1");
    const LevelGraph& g = cached_graph(n);
    std::set<VertexId> old;
    for (const auto& v : cached_graph(n - 1).vertices()) old.insert(lift(v, n));
    std::vector<VertexId> out;
    for (const auto& v : g.vertices())
        if (!old.count(v)) out.push_back(v);
    return out;
}

std::optional<Rational> new_level_expected(int n, const VertexId& x, const VertexId& y) {
    if (minimal_level(x) != n || minimal_level(y) != n)
        throw std::invalid_argument("points not in V_n \\ V_{n-1}");
    if (x == y) throw std::invalid_argument("coefficient of a point with itself");
    if (n == 1) return rational(5, 2);

    const LevelGraph& g = cached_graph(n);
    const VertexId xl = lift(x, n), yl = lift(y, n);
    const auto d = graph_distance_avoiding(g, xl, yl, {});
    if (!d) return std::nullopt;
    if (*d >= 3) return Rational(0);

    // four-neighbor sets of the level-1 midpoints
    const auto mids = new_level_points(1);
    auto in_d_set = [&](int i, const VertexId& v) {
        const int m_idx = g.index_of(lift(mids[static_cast<size_t>(i)], n));
        for (int u : g.neighbors(m_idx))
            if (g.vertex(u) == v) return true;
        return false;
    };
    for (int i = 0; i < 3; ++i)
        if (in_d_set(i, xl) && in_d_set(i, yl))
            return energy_weight(n) * (*d == 1 ? rational(5, 4) : rational(1, 4));

    if (n == 2) return *d == 1 ? rational(25, 6) : std::optional<Rational>{};

    // same 1-cell, away from the four-neighbor sets: scale from level n-1
    const int digit = x.word[0] - '0';
    if (y.word[0] - '0' != digit) return std::nullopt;
    for (int i = 0; i < 3; ++i)
        if (in_d_set(i, xl) || in_d_set(i, yl)) return std::nullopt;
    const auto sx = strip_digit(x, digit), sy = strip_digit(y, digit);
    const auto inner = new_level_expected(n - 1, *sx, *sy);
    if (!inner) return std::nullopt;
    return rational(5, 3) * *inner;
}

Rational bottom_a(int n) {
    return rational(7) * rat_pow(rational(5), n) /
           (rat_pow(rational(3), n) + 6 * rat_pow(rational(10), n));
}

Rational bottom_b(int n) {
    const Rational p3 = rat_pow(rational(3), n), p10 = rat_pow(rational(10), n);
    return rational(49) * rat_pow(rational(25), n) / ((5 * p3 + 16 * p10) * (p3 + 6 * p10));
}

Rational bottom_tilde_b(int n) {
    return rational(35) * rat_pow(rational(5), n) /
           (10 * rat_pow(rational(6), n) + 32 * rat_pow(rational(20), n));
}

Rational bottom_interior_increment(int n) {
    const Rational p3 = rat_pow(rational(3), n), p10 = rat_pow(rational(10), n);
    return rational(196) * rat_pow(rational(25), n) * (10 * p3 + 39 * p10) /
           ((p3 + 6 * p10) * (5 * p3 + 16 * p10) * (5 * p3 + 9 * p10));
}

BottomRowCoeffs bottom_row_coeffs(int n) {
    if (n < 1) throw std::invalid_argument("bottom-row level must be >= 1");

    auto l_step = [](int nu, const Rational& l) -> Rational {
        const Rational p3 = rat_pow(rational(3), nu), p10 = rat_pow(rational(10), nu);
        return rational(5, 3) * l + rational(98) * rat_pow(rational(25), nu) * (10 * p3 + 39 * p10) /
                                        ((p3 + 6 * p10) * (5 * p3 + 16 * p10) * (5 * p3 + 9 * p10));
    };
    auto m_step = [](int nu, const Rational& l_prev) -> Rational {
        const Rational p3 = rat_pow(rational(3), nu), p10 = rat_pow(rational(10), nu);
        return rational(5, 3) * l_prev +
               rational(294) * rat_pow(rational(25), nu) / ((p3 + 6 * p10) * (5 * p3 + 9 * p10));
    };

    std::map<std::pair<int, int>, Rational> cov;
    auto put = [&cov](int i, int j, const Rational& v) {
        if (i > j) std::swap(i, j);
        auto [it, fresh] = cov.emplace(std::make_pair(i, j), v);
        if (!fresh && it->second != v)
            throw std::logic_error("inconsistent bottom-row coefficient rules");
    };

    Rational l = rational(20, 9), m = rational(20, 9);
    // level 1: complete
    put(-1, 0, bottom_a(1));
    put(-1, 2, bottom_a(1));
    put(-1, 1, 2 * bottom_a(1));
    put(0, 2, bottom_b(1));
    put(0, 1, l);
    put(1, 2, l);

    for (int nu = 2; nu <= n; ++nu) {
        const int half = 1 << (nu - 1), full = 1 << nu;
        const Rational inc = bottom_interior_increment(nu);
        std::map<std::pair<int, int>, Rational> next;
        auto put2 = [&next](int i, int j, const Rational& v) {
            if (i > j) std::swap(i, j);
            auto [it, fresh] = next.emplace(std::make_pair(i, j), v);
            if (!fresh && it->second != v)
                throw std::logic_error("inconsistent bottom-row coefficient rules");
        };
        // interior propagation with reflection symmetry
        for (const auto& [key, c] : cov) {
            const auto [i, j] = key;
            if (i <= 0 || j >= half) continue;
            put2(i, j, rational(5, 3) * c + inc);
            put2(full - j, full - i, rational(5, 3) * c + inc);
        }
        const Rational a = bottom_a(nu), b = bottom_b(nu);
        put2(-1, 0, a);
        put2(-1, full, a);
        for (int j = 1; j < full; ++j) put2(-1, j, 2 * a);
        put2(0, full, b);
        for (int j = half + 1; j < full; ++j) {
            put2(0, j, 2 * b);
            put2(full - j, full, 2 * b);
        }
        for (int i = 1; i < half; ++i)
            for (int j = half + 1; j < full; ++j) put2(i, j, 4 * b);
        const Rational l_next = l_step(nu, l);
        const Rational m_next = m_step(nu, l);
        put2(0, 1, l_next);
        put2(full - 1, full, l_next);
        put2(half - 1, half, m_next);
        put2(half, half + 1, m_next);
        l = l_next;
        m = m_next;
        cov = std::move(next);
    }

    BottomRowCoeffs out;
    out.n = n;
    out.a = bottom_a(n);
    out.b = bottom_b(n);
    out.tilde_b = bottom_tilde_b(n);
    out.l = l;
    out.m = m;
    out.with_top = cov;
    const int full = 1 << n;
    const Rational a = out.a;
    for (const auto& [key, c] : cov) {
        const auto [i, j] = key;
        if (i < 0) continue;
        Rational shift;
        if (i == 0 && j == full) shift = a / rat_pow(rational(2), n + 1);
        else if (i == 0 || j == full) shift = a / rat_pow(rational(2), n);
        else shift = a / rat_pow(rational(2), n - 1);
        out.without_top.emplace(key, c + shift);
    }
    return out;
}

}  // namespace sg
