#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sg {

/// Small dense matrix, row-major; used for the exact verification paths and
/// the cell-local biharmonic algebra.
template <class T>
class DenseMatrix {
  public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, T(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

  private:
    int rows_, cols_;
    std::vector<T> a_;
};

namespace detail {
inline double pivot_size(double x) { return std::abs(x); }
template <class T>
double pivot_size(const T& x) { return x == 0 ? 0.0 : 1.0; }  // exact scalars: any nonzero pivot
}  // namespace detail

/// Gaussian elimination with pivoting; throws on a singular system.
template <class T>
std::vector<T> solve_dense(DenseMatrix<T> a, std::vector<T> b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_dense: shape mismatch");
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
        int best = -1;
        double best_size = 0;
        for (int r = col; r < n; ++r) {
            const double s = detail::pivot_size(a(r, col));
            if (s > best_size) { best = r; best_size = s; }
        }
        if (best < 0) throw std::runtime_error("solve_dense: singular matrix");
        if (best != col) {
            for (int c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
            std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(best)]);
        }
        const T piv = a(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (a(r, col) == T(0)) continue;
            const T f = a(r, col) / piv;
            a(r, col) = T(0);
            for (int c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    std::vector<T> x(static_cast<size_t>(n), T(0));
    for (int r = n - 1; r >= 0; --r) {
        T acc = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = acc / a(r, r);
    }
    return x;
}

template <class T>
DenseMatrix<T> invert_dense(const DenseMatrix<T>& a) {
    const int n = a.rows();
    DenseMatrix<T> inv(n, n);
    for (int c = 0; c < n; ++c) {
        std::vector<T> e(static_cast<size_t>(n), T(0));
        e[static_cast<size_t>(c)] = T(1);
        const auto col = solve_dense(a, e);
        for (int r = 0; r < n; ++r) inv(r, c) = col[static_cast<size_t>(r)];
    }
    return inv;
}

/// Constrained minimization of  sum_e w_e (u_x - u_y)^2 + sum_v d_v u_v^2 - 2 sum_v f_v u_v
/// over the free vertices (fixed[v] pins u_v).  Equivalent to the SPD system
/// (L + D) u = f with constraint substitution; solved by sparse symmetric
/// elimination in minimum-degree order, then back-substitution.
template <class T>
class GraphQuadraticSolver {
  public:
    GraphQuadraticSolver(int n, const std::vector<std::tuple<int, int, T>>& edges,
                         const std::vector<T>& diag,
                         const std::vector<std::optional<T>>& fixed)
        : n_(n), fixed_(fixed), rows_(static_cast<size_t>(n)), diag_(static_cast<size_t>(n), T(0)) {
        for (int v = 0; v < n; ++v) diag_[static_cast<size_t>(v)] = diag.empty() ? T(0) : diag[static_cast<size_t>(v)];
        fixed_rhs_.assign(static_cast<size_t>(n), T(0));
        for (const auto& [x, y, w] : edges) {
            if (w == T(0)) continue;
            const bool fx = is_fixed(x), fy = is_fixed(y);
            if (fx && fy) continue;
            if (fx) { diag_[static_cast<size_t>(y)] += w; fixed_rhs_[static_cast<size_t>(y)] += w * *fixed_[static_cast<size_t>(x)]; continue; }
            if (fy) { diag_[static_cast<size_t>(x)] += w; fixed_rhs_[static_cast<size_t>(x)] += w * *fixed_[static_cast<size_t>(y)]; continue; }
            diag_[static_cast<size_t>(x)] += w;
            diag_[static_cast<size_t>(y)] += w;
            rows_[static_cast<size_t>(x)][y] -= w;
            rows_[static_cast<size_t>(y)][x] -= w;
        }
        factorize();
    }

    /// Solves for one load vector; reusable for many right-hand sides.
    std::vector<T> solve(const std::vector<T>& load) const {
        std::vector<T> rhs(static_cast<size_t>(n_), T(0));
        for (int v = 0; v < n_; ++v)
            if (!is_fixed(v)) rhs[static_cast<size_t>(v)] = load.empty() ? fixed_rhs_[static_cast<size_t>(v)]
                                                                        : load[static_cast<size_t>(v)] + fixed_rhs_[static_cast<size_t>(v)];
        // forward substitution through the recorded eliminations
        for (const auto& st : steps_) {
            const T uv = rhs[static_cast<size_t>(st.vertex)] / st.pivot;
            for (const auto& [u, c] : st.offdiag) rhs[static_cast<size_t>(u)] -= c * uv;
        }
        std::vector<T> x(static_cast<size_t>(n_), T(0));
        for (int v = 0; v < n_; ++v)
            if (is_fixed(v)) x[static_cast<size_t>(v)] = *fixed_[static_cast<size_t>(v)];
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            T acc = rhs[static_cast<size_t>(it->vertex)];
            for (const auto& [u, c] : it->offdiag) acc -= c * x[static_cast<size_t>(u)];
            x[static_cast<size_t>(it->vertex)] = acc / it->pivot;
        }
        return x;
    }

  private:
    struct Step {
        int vertex;
        T pivot;
        std::vector<std::pair<int, T>> offdiag;
    };

    bool is_fixed(int v) const { return fixed_[static_cast<size_t>(v)].has_value(); }

    void factorize() {
        // bucketed minimum-degree ordering
        std::vector<int> degree(static_cast<size_t>(n_), -1);
        std::map<int, std::vector<int>> buckets;
        auto enqueue = [&](int v) {
            degree[static_cast<size_t>(v)] = static_cast<int>(rows_[static_cast<size_t>(v)].size());
            buckets[degree[static_cast<size_t>(v)]].push_back(v);
        };
        std::vector<char> done(static_cast<size_t>(n_), 0);
        for (int v = 0; v < n_; ++v) {
            if (is_fixed(v)) { done[static_cast<size_t>(v)] = 1; continue; }
            enqueue(v);
        }
        for (;;) {
            int v = -1;
            while (!buckets.empty()) {
                auto& [deg, list] = *buckets.begin();
                while (!list.empty()) {
                    const int cand = list.back();
                    list.pop_back();
                    if (!done[static_cast<size_t>(cand)] && degree[static_cast<size_t>(cand)] == deg) { v = cand; break; }
                }
                if (v >= 0) break;
                if (list.empty()) buckets.erase(buckets.begin());
            }
            if (v < 0) break;
            done[static_cast<size_t>(v)] = 1;
            auto& row = rows_[static_cast<size_t>(v)];
            const T piv = diag_[static_cast<size_t>(v)];
            if (piv == T(0)) throw std::runtime_error("graph quadratic is singular (no constraints pin the solution)");
            Step st{v, piv, {row.begin(), row.end()}};
            for (const auto& [x, cx] : st.offdiag) {
                auto& rx = rows_[static_cast<size_t>(x)];
                rx.erase(v);
                const T f = cx / piv;
                for (const auto& [y, cy] : st.offdiag) {
                    if (y == x) { diag_[static_cast<size_t>(x)] -= f * cy; continue; }
                    rx[y] -= f * cy;
                    if (rx[y] == T(0)) rx.erase(y);
                }
                degree[static_cast<size_t>(x)] = static_cast<int>(rx.size());
                buckets[degree[static_cast<size_t>(x)]].push_back(x);
            }
            row.clear();
            steps_.push_back(std::move(st));
        }
        // constraint loads are pushed through the factorization lazily in solve()
    }

    int n_;
    std::vector<std::optional<T>> fixed_;
    std::vector<std::map<int, T>> rows_;
    std::vector<T> diag_;
    std::vector<T> fixed_rhs_;
    std::vector<Step> steps_;
};

/// One-shot convenience wrapper around GraphQuadraticSolver.
template <class T>
std::vector<T> solve_graph_quadratic(int n, const std::vector<std::tuple<int, int, T>>& edges,
                                     const std::vector<T>& diag,
                                     const std::vector<T>& load,
                                     const std::vector<std::optional<T>>& fixed) {
    return GraphQuadraticSolver<T>(n, edges, diag, fixed).solve(load);
}

}  // namespace sg
