#include "sg/biharmonic.hpp"

#include <cmath>
#include <stdexcept>

namespace sg {

bool check_assumption_H(const std::vector<VertexId>& e) {
    if (e.size() < 3) return false;
    int level = 0;
    for (const auto& v : e) level = std::max(level, minimal_level(v));
    const LevelGraph g(level);
    const LevelGraph g0(0);
    // harmonic coordinates h_0, h_1, h_2 evaluated at the points of E
    std::vector<std::array<Rational, 3>> h(e.size());
    for (int j = 0; j < 3; ++j) {
        NodeValues<Rational> delta(3, Rational(0));
        delta[static_cast<size_t>(g0.index_of(boundary_vertex(j, 0)))] = Rational(1);
        const auto vals = harmonic_extend(g0, delta, g);
        for (size_t i = 0; i < e.size(); ++i)
            h[i][static_cast<size_t>(j)] = vals[static_cast<size_t>(g.index_of(lift(e[i], level)))];
    }
    const size_t n = e.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                const auto &a = h[i], &b = h[j], &c = h[k];
                const Rational det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                                     a[1] * (b[0] * c[2] - b[2] * c[0]) +
                                     a[2] * (b[0] * c[1] - b[1] * c[0]);
                if (det != 0) return true;
            }
    return false;
}

GreenExtension green_extend(const LevelGraph& g, const std::vector<VertexId>& points,
                            const std::vector<double>& a) {
    if (points.empty() || points.size() != a.size())
        throw std::invalid_argument("green_extend: points/values mismatch");
    const int m = g.level();
    const int nv = g.vertex_count();
    const double w_edge = to_double(energy_weight(m));
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(g.edges().size());
    for (const auto& [x, y] : g.edges()) edges.emplace_back(x, y, w_edge);
    std::vector<std::optional<double>> fixed(static_cast<size_t>(nv));
    for (int b : g.boundary()) fixed[static_cast<size_t>(b)] = 0.0;
    GraphQuadraticSolver<double> solver(nv, edges, {}, fixed);

    const auto wq = measure_weights(g);
    std::vector<double> w(static_cast<size_t>(nv));
    for (int v = 0; v < nv; ++v) w[static_cast<size_t>(v)] = to_double(wq[static_cast<size_t>(v)]);

    const int n = static_cast<int>(points.size());
    // columns of the Green kernel, then the double-kernel functions z_i
    std::vector<std::vector<double>> green(static_cast<size_t>(n)), z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int vi = g.index_of(lift(points[static_cast<size_t>(i)], m));
        std::vector<double> unit(static_cast<size_t>(nv), 0.0);
        unit[static_cast<size_t>(vi)] = 1.0;
        green[static_cast<size_t>(i)] = solver.solve(unit);
        std::vector<double> load(static_cast<size_t>(nv));
        for (int v = 0; v < nv; ++v)
            load[static_cast<size_t>(v)] = w[static_cast<size_t>(v)] * green[static_cast<size_t>(i)][static_cast<size_t>(v)];
        z[static_cast<size_t>(i)] = solver.solve(load);
    }
    DenseMatrix<double> gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0;
            for (int v = 0; v < nv; ++v)
                s += w[static_cast<size_t>(v)] * green[static_cast<size_t>(i)][static_cast<size_t>(v)] *
                     green[static_cast<size_t>(j)][static_cast<size_t>(v)];
            gram(i, j) = s;
            gram(j, i) = s;
        }
    GreenExtension out;
    out.coefficients = solve_dense(gram, a);
    out.values.assign(static_cast<size_t>(nv), 0.0);
    for (int i = 0; i < n; ++i)
        for (int v = 0; v < nv; ++v)
            out.values[static_cast<size_t>(v)] += out.coefficients[static_cast<size_t>(i)] * z[static_cast<size_t>(i)][static_cast<size_t>(v)];
    out.max_interpolation_error = 0;
    for (int i = 0; i < n; ++i) {
        const int vi = g.index_of(lift(points[static_cast<size_t>(i)], m));
        out.max_interpolation_error = std::max(
            out.max_interpolation_error,
            std::abs(out.values[static_cast<size_t>(vi)] - a[static_cast<size_t>(i)]));
    }
    return out;
}

}  // namespace sg
