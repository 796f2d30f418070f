#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "sg/graph.hpp"
#include "sg/linalg.hpp"
#include "sg/rational.hpp"

namespace sg {

/// Values on the vertices of a level graph, indexed like g.vertices().
/// T is Rational on the exact verification paths and double elsewhere.
template <class T>
using NodeValues = std::vector<T>;

/// Constraint set with prescribed values; dirichlet additionally pins V_0 to 0.
template <class T>
struct ExtensionProblem {
    int level = 0;
    std::map<VertexId, T> constraints;
    T lambda = T(0);
    bool dirichlet = false;
};

/// (5/3)^m sum over edges of the squared difference.
template <class T>
T graph_energy(const LevelGraph& g, const NodeValues<T>& u) {
    if (static_cast<int>(u.size()) != g.vertex_count())
        throw std::invalid_argument("graph_energy: value vector does not match V_m");
    const T scale = from_rational<T>(energy_weight(g.level()));
    T acc(0);
    for (const auto& [a, b] : g.edges()) {
        const T d = u[static_cast<size_t>(a)] - u[static_cast<size_t>(b)];
        acc += d * d;
    }
    return scale * acc;
}

/// Bilinear form E(u, v) of the level-m graph energy.
template <class T>
T energy_bilinear(const LevelGraph& g, const NodeValues<T>& u, const NodeValues<T>& v) {
    const T scale = from_rational<T>(energy_weight(g.level()));
    T acc(0);
    for (const auto& [a, b] : g.edges())
        acc += (u[static_cast<size_t>(a)] - u[static_cast<size_t>(b)]) *
               (v[static_cast<size_t>(a)] - v[static_cast<size_t>(b)]);
    return scale * acc;
}

/// The energy-preserving harmonic extension of level-k values to level m
/// (the "2/5, 2/5, 1/5" rule applied cell by cell).
template <class T>
NodeValues<T> harmonic_extend(const LevelGraph& from, const NodeValues<T>& u, const LevelGraph& to) {
    if (from.level() > to.level()) throw std::invalid_argument("harmonic_extend: target level below source");
    NodeValues<T> cur = u;
    for (int lev = from.level(); lev < to.level(); ++lev) {
        const LevelGraph& src = (lev == from.level()) ? from : build_level_graph(lev);
        const LevelGraph next = build_level_graph(lev + 1);
        NodeValues<T> out(static_cast<size_t>(next.vertex_count()), T(0));
        for (size_t c = 0; c < src.cells().size(); ++c) {
            const Word w = src.cell_word(static_cast<int>(c));
            const auto& corners = src.cells()[c];
            std::array<T, 3> a{cur[static_cast<size_t>(corners[0])],
                               cur[static_cast<size_t>(corners[1])],
                               cur[static_cast<size_t>(corners[2])]};
            for (int i = 0; i < 3; ++i) {
                Word wi = w;
                wi.push_back(static_cast<char>('0' + i));
                out[static_cast<size_t>(next.index_of(canonicalize(wi, i)))] = a[static_cast<size_t>(i)];
                // midpoint between corners i and j, opposite k: (2 a_i + 2 a_j + a_k) / 5
                const int j = (i + 1) % 3, k = (i + 2) % 3;
                out[static_cast<size_t>(next.index_of(canonicalize(wi, j)))] =
                    (T(2) * a[static_cast<size_t>(i)] + T(2) * a[static_cast<size_t>(j)] + a[static_cast<size_t>(k)]) / T(5);
            }
        }
        cur = std::move(out);
    }
    return cur;
}

namespace detail {
template <class T>
std::vector<std::tuple<int, int, T>> energy_edges(const LevelGraph& g) {
    const T w = from_rational<T>(energy_weight(g.level()));
    std::vector<std::tuple<int, int, T>> edges;
    edges.reserve(g.edges().size());
    for (const auto& [a, b] : g.edges()) edges.emplace_back(a, b, w);
    return edges;
}

template <class T>
std::vector<std::optional<T>> pin_constraints(const LevelGraph& g, const ExtensionProblem<T>& p) {
    std::vector<std::optional<T>> fixed(static_cast<size_t>(g.vertex_count()));
    if (p.dirichlet)
        for (int b : g.boundary()) fixed[static_cast<size_t>(b)] = T(0);
    for (const auto& [v, a] : p.constraints) {
        const int i = g.index_of(lift(v, g.level()));
        if (fixed[static_cast<size_t>(i)] && *fixed[static_cast<size_t>(i)] != a)
            throw std::invalid_argument("conflicting constraint at " + v.to_string());
        fixed[static_cast<size_t>(i)] = a;
    }
    return fixed;
}
}  // namespace detail

/// Minimizer of E_lambda(u) = E(u) + lambda * sum_v w_v u(v)^2 subject to the
/// constraints (lambda = 0 gives the plain energy minimizer, graph-harmonic
/// at every unconstrained vertex).
template <class T>
NodeValues<T> minimize_energy_lambda(const LevelGraph& g, const ExtensionProblem<T>& p) {
    if (p.constraints.empty() && !p.dirichlet && p.lambda == T(0))
        throw std::invalid_argument("unconstrained energy minimization is singular");
    std::vector<T> diag(static_cast<size_t>(g.vertex_count()), T(0));
    if (p.lambda != T(0)) {
        const auto weights = measure_weights(g);
        for (int v = 0; v < g.vertex_count(); ++v) diag[static_cast<size_t>(v)] = p.lambda * from_rational<T>(weights[static_cast<size_t>(v)]);
    }
    return solve_graph_quadratic<T>(g.vertex_count(), detail::energy_edges<T>(g), diag, {},
                                    detail::pin_constraints(g, p));
}

template <class T>
NodeValues<T> minimize_energy(const LevelGraph& g, const std::map<VertexId, T>& constraints,
                              bool dirichlet = false) {
    ExtensionProblem<T> p{g.level(), constraints, T(0), dirichlet};
    return minimize_energy_lambda(g, p);
}

/// Column of the discrete resolvent: the unique u vanishing on V_0 with
/// E(u, v) + lambda <u, v>_w = v(x_i) for every Dirichlet test function v.
template <class T>
class DiscreteResolvent {
  public:
    DiscreteResolvent(const LevelGraph& g, const T& lambda)
        : graph_(g), solver_(make_solver(g, lambda)) {}

    NodeValues<T> column(const VertexId& x) const {
        const int i = graph_.index_of(lift(x, graph_.level()));
        for (int b : graph_.boundary())
            if (b == i) throw std::invalid_argument("resolvent column at a Dirichlet boundary point");
        std::vector<T> load(static_cast<size_t>(graph_.vertex_count()), T(0));
        load[static_cast<size_t>(i)] = T(1);
        return solver_.solve(load);
    }

  private:
    static GraphQuadraticSolver<T> make_solver(const LevelGraph& g, const T& lambda) {
        std::vector<T> diag(static_cast<size_t>(g.vertex_count()), T(0));
        if (lambda != T(0)) {
            const auto weights = measure_weights(g);
            for (int v = 0; v < g.vertex_count(); ++v) diag[static_cast<size_t>(v)] = lambda * from_rational<T>(weights[static_cast<size_t>(v)]);
        }
        std::vector<std::optional<T>> fixed(static_cast<size_t>(g.vertex_count()));
        for (int b : g.boundary()) fixed[static_cast<size_t>(b)] = T(0);
        return GraphQuadraticSolver<T>(g.vertex_count(), detail::energy_edges<T>(g), diag, fixed);
    }

    const LevelGraph& graph_;
    GraphQuadraticSolver<T> solver_;
};

template <class T>
struct ResolventSolution {
    std::vector<T> coefficients;  // c with G c = a
    NodeValues<T> minimizer;      // sum_i c_i column(x_i)
    T value;                      // E_lambda(u) = a . c
};

/// Gram-matrix construction: assemble G_{ij} from resolvent columns,
/// solve G c = a, and superpose the columns.
template <class T>
ResolventSolution<T> resolvent_construct(const LevelGraph& g, const std::vector<VertexId>& points,
                                         const std::vector<T>& a, const T& lambda) {
    if (points.empty() || points.size() != a.size())
        throw std::invalid_argument("resolvent_construct: points/values mismatch");
    DiscreteResolvent<T> res(g, lambda);
    std::vector<NodeValues<T>> cols;
    cols.reserve(points.size());
    for (const auto& p : points) cols.push_back(res.column(p));
    const int n = static_cast<int>(points.size());
    DenseMatrix<T> gram(n, n);
    for (int i = 0; i < n; ++i) {
        const int vi = g.index_of(lift(points[static_cast<size_t>(i)], g.level()));
        for (int j = 0; j < n; ++j) gram(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(vi)];
    }
    ResolventSolution<T> out;
    out.coefficients = solve_dense(gram, a);
    out.minimizer.assign(static_cast<size_t>(g.vertex_count()), T(0));
    for (int j = 0; j < n; ++j)
        for (int v = 0; v < g.vertex_count(); ++v)
            out.minimizer[static_cast<size_t>(v)] += out.coefficients[static_cast<size_t>(j)] * cols[static_cast<size_t>(j)][static_cast<size_t>(v)];
    out.value = T(0);
    for (int i = 0; i < n; ++i) out.value += a[static_cast<size_t>(i)] * out.coefficients[static_cast<size_t>(i)];
    return out;
}

/// Exact integrals of a function treated as harmonic inside each m-cell:
/// returns (int u dmu, int u^2 dmu).  Uses the harmonic cell mass matrix
/// M_ii = 7/45, M_ij = 4/45.
std::pair<Rational, Rational> integrate_piecewise_harmonic(const LevelGraph& g,
                                                           const NodeValues<Rational>& u);

}  // namespace sg
