#pragma once

#include <array>
#include <map>
#include <vector>

#include "sg/energy.hpp"
#include "sg/graph.hpp"
#include "sg/linalg.hpp"
#include "sg/rational.hpp"

namespace sg {

/// Boundary data of one biharmonic cell: values a_i and normal derivatives
/// b_i at the three corners (local, unit-cell convention).
template <class T>
struct CellBoundary {
    std::array<T, 3> a{};
    std::array<T, 3> b{};
};

/// Corner Laplacian values of the biharmonic function with boundary data
/// (a, b): c_i = -15(2a_i - a_{i+1} - a_{i-1}) + 11 b_i - 4 b_{i+1} - 4 b_{i-1}.
template <class T>
std::array<T, 3> solve_cell(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    std::array<T, 3> c{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        c[static_cast<size_t>(i)] = T(-15) * (T(2) * a[static_cast<size_t>(i)] - a[static_cast<size_t>(j)] - a[static_cast<size_t>(k)]) +
                                    T(11) * b[static_cast<size_t>(i)] - T(4) * b[static_cast<size_t>(j)] - T(4) * b[static_cast<size_t>(k)];
    }
    return c;
}

/// Inverse direction: the normal derivatives determined by values and corner
/// Laplacians, b_i = 2a_i - a_{i+1} - a_{i-1} + (1/45)(7c_i + 4c_{i+1} + 4c_{i-1}).
template <class T>
std::array<T, 3> normal_from_laplacian(const std::array<T, 3>& a, const std::array<T, 3>& c) {
    std::array<T, 3> b{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        b[static_cast<size_t>(i)] = T(2) * a[static_cast<size_t>(i)] - a[static_cast<size_t>(j)] - a[static_cast<size_t>(k)] +
                                    (T(7) * c[static_cast<size_t>(i)] + T(4) * c[static_cast<size_t>(j)] + T(4) * c[static_cast<size_t>(k)]) / T(45);
    }
    return b;
}

/// Theta = integral of |Delta u|^2 over the unit cell, quadratic-form display.
template <class T>
T theta(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    T sa2(0), sb2(0), sab_cross(0), saa(0), sab_diag(0), sbb(0);
    for (int i = 0; i < 3; ++i) {
        sa2 += a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
        sb2 += b[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
        sab_diag += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
        for (int j = 0; j < 3; ++j)
            if (i != j) sab_cross += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        for (int j = i + 1; j < 3; ++j) {
            saa += a[static_cast<size_t>(i)] * a[static_cast<size_t>(j)];
            sbb += b[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        }
    }
    return T(90) * sa2 + T(30) * sab_cross + T(11) * sb2 - T(90) * saa - T(60) * sab_diag - T(8) * sbb;
}

/// Theta through the defect vector d_i = 2a_i - a_{i+1} - a_{i-1} - b_i:
/// 11 sum d_i^2 - 8 sum_{i<j} d_i d_j.
template <class T>
T theta_dform(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    std::array<T, 3> d{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        d[static_cast<size_t>(i)] = T(2) * a[static_cast<size_t>(i)] - a[static_cast<size_t>(j)] - a[static_cast<size_t>(k)] - b[static_cast<size_t>(i)];
    }
    T s2(0), scross(0);
    for (int i = 0; i < 3; ++i) {
        s2 += d[static_cast<size_t>(i)] * d[static_cast<size_t>(i)];
        for (int j = i + 1; j < 3; ++j) scross += d[static_cast<size_t>(i)] * d[static_cast<size_t>(j)];
    }
    return T(11) * s2 - T(8) * scross;
}

/// c^T M c with the harmonic cell mass matrix (7/45 diagonal, 4/45 off).
template <class T>
T quadratic_mass(const std::array<T, 3>& c) {
    T s2(0), scross(0);
    for (int i = 0; i < 3; ++i) {
        s2 += c[static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
        for (int j = i + 1; j < 3; ++j) scross += c[static_cast<size_t>(i)] * c[static_cast<size_t>(j)];
    }
    return (T(7) * s2 + T(8) * scross) / T(45);
}

template <class T>
T theta_mass(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    return quadratic_mass(solve_cell(a, b));
}

/// (25/3)^m sum of per-cell Theta on unit-cell (local) data.
template <class T>
T total_T(int m, const std::vector<CellBoundary<T>>& cells) {
    T acc(0);
    for (const auto& cell : cells) acc += theta(cell.a, cell.b);
    return from_rational<T>(rat_pow(rational(25, 3), m)) * acc;
}

/// 3^{-m} sum of c^T M c over cells, with global corner Laplacian values
/// c_global = 5^m c_local.  Equals total_T on consistent data.
template <class T>
T total_T_mass(int m, const std::vector<std::array<T, 3>>& c_global) {
    T acc(0);
    for (const auto& c : c_global) acc += quadratic_mass(c);
    return from_rational<T>(rat_pow(rational(1, 3), m)) * acc;
}

/// Piecewise-biharmonic spline problem: values on E, one-sided normal
/// derivatives on F.  At a junction the designated side for the F constraint
/// is the cell with the lexicographically smaller word.
template <class T>
struct SplineProblem {
    int level = 0;
    std::map<VertexId, T> values;   // E
    std::map<VertexId, T> normals;  // F, global scale (5/3)^m one-sided
};

template <class T>
struct SplineSolution {
    std::vector<CellBoundary<T>> cells;              // local (a, b) per cell
    std::vector<std::array<T, 3>> laplacian_global;  // 5^m * solve_cell per cell
    T total;                                         // total_T of the solution
};

template <class T>
SplineSolution<T> spline_solve(const LevelGraph& g, const SplineProblem<T>& p);

template <class T>
struct ValuesOnlySolution {
    NodeValues<T> delta_u;  // global Laplacian values, zero on V_0
    T total;
};

/// Minimizer over all normal-derivative data: Delta u is single-valued,
/// vanishes on V_0, and solves (14 I + 4 Adj) Delta u = 45 * 5^m Delta_m u on
/// V_m \ V_0, where Delta_m is the plain graph Laplacian.
template <class T>
ValuesOnlySolution<T> values_only_solve(const LevelGraph& g, const NodeValues<T>& u);

/// True iff some triple of E spans the harmonic coordinates (the 3x3 matrix
/// of h_j values has nonzero determinant); exact.
bool check_assumption_H(const std::vector<VertexId>& e);

struct GreenExtension {
    std::vector<double> values;        // on V_m, zero on V_0
    std::vector<double> coefficients;  // c with [G] c = a
    double max_interpolation_error;    // max |u(x_i) - a_i|
};

/// Double-kernel construction u = sum_i c_i int G(x,.)G(x_i,.) dmu on the
/// level-m discretization with Dirichlet boundary.
GreenExtension green_extend(const LevelGraph& g, const std::vector<VertexId>& points,
                            const std::vector<double>& a);

// --- template definitions ---

template <class T>
SplineSolution<T> spline_solve(const LevelGraph& g, const SplineProblem<T>& p) {
    const int m = g.level();
    const int ncells = static_cast<int>(g.cells().size());
    const int n = 6 * ncells;  // per cell: a_0..a_2, b_0..b_2 (local)
    const auto a_idx = [](int cell, int corner) { return 6 * cell + corner; };
    const auto b_idx = [](int cell, int corner) { return 6 * cell + 3 + corner; };

    // vertex -> incident (cell, corner), cells in word order (lex)
    std::vector<std::vector<std::pair<int, int>>> sides(static_cast<size_t>(g.vertex_count()));
    for (int c = 0; c < ncells; ++c)
        for (int i = 0; i < 3; ++i)
            sides[static_cast<size_t>(g.cells()[static_cast<size_t>(c)][static_cast<size_t>(i)])].emplace_back(c, i);

    std::vector<std::optional<T>> value_at(static_cast<size_t>(g.vertex_count()));
    std::vector<std::optional<T>> normal_at(static_cast<size_t>(g.vertex_count()));
    for (const auto& [v, val] : p.values) value_at[static_cast<size_t>(g.index_of(lift(v, m)))] = val;
    for (const auto& [v, val] : p.normals) normal_at[static_cast<size_t>(g.index_of(lift(v, m)))] = val;

    DenseMatrix<T> mat(n, n);
    std::vector<T> rhs(static_cast<size_t>(n), T(0));
    int row = 0;
    // coefficients of c_{cell,corner} as a linear functional of the unknowns
    auto add_c = [&](int r, int cell, int corner, const T& f) {
        const int j = (corner + 1) % 3, k = (corner + 2) % 3;
        mat(r, a_idx(cell, corner)) += f * T(-30);
        mat(r, a_idx(cell, j)) += f * T(15);
        mat(r, a_idx(cell, k)) += f * T(15);
        mat(r, b_idx(cell, corner)) += f * T(11);
        mat(r, b_idx(cell, j)) += f * T(-4);
        mat(r, b_idx(cell, k)) += f * T(-4);
    };
    // one-sided normal derivative of the (harmonic) cell Laplacian at a corner
    auto add_c_normal = [&](int r, int cell, int corner, const T& f) {
        const int j = (corner + 1) % 3, k = (corner + 2) % 3;
        add_c(r, cell, corner, f * T(2));
        add_c(r, cell, j, -f);
        add_c(r, cell, k, -f);
    };
    const T scale = from_rational<T>(energy_weight(m));

    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& inc = sides[static_cast<size_t>(v)];
        const auto& val_opt = value_at[static_cast<size_t>(v)];
        const auto& nrm_opt = normal_at[static_cast<size_t>(v)];
        if (inc.size() == 1) {
            const auto [w, i] = inc[0];
            // value given, or vanishing one-sided normal derivative of Delta u
            if (val_opt.has_value()) {
                mat(row, a_idx(w, i)) = T(1);
                rhs[static_cast<size_t>(row)] = *val_opt;
            } else {
                add_c_normal(row, w, i, T(1));
            }
            ++row;
            // normal derivative given, or Delta u vanishes at the boundary point
            if (nrm_opt.has_value()) {
                mat(row, b_idx(w, i)) = scale;
                rhs[static_cast<size_t>(row)] = *nrm_opt;
            } else {
                add_c(row, w, i, T(1));
            }
            ++row;
        } else {
            const auto [w, i] = inc[0];
            const auto [w2, i2] = inc[1];
            // u continuous
            mat(row, a_idx(w, i)) = T(1);
            mat(row, a_idx(w2, i2)) = T(-1);
            ++row;
            // value given, or matching normal derivatives of Delta u
            if (val_opt.has_value()) {
                mat(row, a_idx(w, i)) = T(1);
                rhs[static_cast<size_t>(row)] = *val_opt;
            } else {
                add_c_normal(row, w, i, T(1));
                add_c_normal(row, w2, i2, T(1));
            }
            ++row;
            // u in dom Delta: one-sided normal derivatives cancel
            mat(row, b_idx(w, i)) = T(1);
            mat(row, b_idx(w2, i2)) = T(1);
            ++row;
            // normal given on the designated (first-word) side, or Delta u continuous
            if (nrm_opt.has_value()) {
                mat(row, b_idx(w, i)) = scale;
                rhs[static_cast<size_t>(row)] = *nrm_opt;
            } else {
                add_c(row, w, i, T(1));
                add_c(row, w2, i2, T(-1));
            }
            ++row;
        }
    }
    if (row != n) throw std::logic_error("spline assembly: equation count mismatch");

    const auto x = solve_dense(mat, rhs);
    SplineSolution<T> out;
    out.cells.resize(static_cast<size_t>(ncells));
    out.laplacian_global.resize(static_cast<size_t>(ncells));
    const T five_m = from_rational<T>(rat_pow(rational(5), m));
    for (int c = 0; c < ncells; ++c) {
        for (int i = 0; i < 3; ++i) {
            out.cells[static_cast<size_t>(c)].a[static_cast<size_t>(i)] = x[static_cast<size_t>(a_idx(c, i))];
            out.cells[static_cast<size_t>(c)].b[static_cast<size_t>(i)] = x[static_cast<size_t>(b_idx(c, i))];
        }
        const auto cl = solve_cell(out.cells[static_cast<size_t>(c)].a, out.cells[static_cast<size_t>(c)].b);
        for (int i = 0; i < 3; ++i)
            out.laplacian_global[static_cast<size_t>(c)][static_cast<size_t>(i)] = five_m * cl[static_cast<size_t>(i)];
    }
    out.total = total_T(m, out.cells);
    return out;
}

template <class T>
ValuesOnlySolution<T> values_only_solve(const LevelGraph& g, const NodeValues<T>& u) {
    if (static_cast<int>(u.size()) != g.vertex_count())
        throw std::invalid_argument("values_only_solve: value vector does not match V_m");
    const int m = g.level();
    const int n = g.vertex_count();
    // graph Laplacian of the data
    std::vector<T> delta_m(static_cast<size_t>(n), T(0));
    for (const auto& [x, y] : g.edges()) {
        const T d = u[static_cast<size_t>(y)] - u[static_cast<size_t>(x)];
        delta_m[static_cast<size_t>(x)] += d;
        delta_m[static_cast<size_t>(y)] -= d;
    }
    // (14 I + 4 Adj) Delta u = 45 5^m Delta_m u on the free vertices; the
    // matrix is the assembled harmonic mass matrix scaled by 45, hence SPD
    std::vector<std::tuple<int, int, T>> edges;
    edges.reserve(g.edges().size());
    std::vector<T> diag(static_cast<size_t>(n), T(14));
    for (const auto& [x, y] : g.edges()) {
        edges.emplace_back(x, y, T(-4));
        diag[static_cast<size_t>(x)] += T(4);
        diag[static_cast<size_t>(y)] += T(4);
    }
    std::vector<std::optional<T>> fixed(static_cast<size_t>(n));
    for (int b : g.boundary()) fixed[static_cast<size_t>(b)] = T(0);
    const T rhs_scale = T(45) * from_rational<T>(rat_pow(rational(5), m));
    std::vector<T> load(static_cast<size_t>(n), T(0));
    for (int v = 0; v < n; ++v) load[static_cast<size_t>(v)] = rhs_scale * delta_m[static_cast<size_t>(v)];
    ValuesOnlySolution<T> out;
    out.delta_u = solve_graph_quadratic<T>(n, edges, diag, load, fixed);
    out.total = T(0);
    for (int v = 0; v < n; ++v) out.total += out.delta_u[static_cast<size_t>(v)] * delta_m[static_cast<size_t>(v)];
    out.total *= from_rational<T>(energy_weight(m));
    return out;
}

}  // namespace sg
