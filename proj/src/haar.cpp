#include "sg/haar.hpp"

#include <cmath>
#include <stdexcept>

#include "sg/network.hpp"

namespace sg {

std::vector<Rational> haar_scaled_row(int m, int n, int k) {
    if (n < 0 || n > m || k < 0 || k >= (1 << n))
        throw std::invalid_argument("Haar index out of range");
    const long N = 1L << m;
    std::vector<Rational> row(static_cast<size_t>(N) + 1, Rational(0));
    // subintervals [j, j+1]/2^{m+1}; the interpolation takes t_0 and t_{2^m}
    // on the half-width end pieces and t_i on the width-1/2^m piece around i
    const Rational lo = rational(k) / rat_pow(rational(2), n);
    const Rational mid = rational(2 * k + 1) / rat_pow(rational(2), n + 1);
    const Rational hi = rational(k + 1) / rat_pow(rational(2), n);
    for (long j = 0; j < 2 * N; ++j) {
        const Rational x = rational(2 * j + 1) / rat_pow(rational(2), m + 2);
        int sign = 0;
        if (lo <= x && x < mid) sign = 1;
        else if (mid < x && x <= hi) sign = -1;
        if (sign == 0) continue;
        const long i = (j % 2 == 0) ? j / 2 : (j + 1) / 2;
        row[static_cast<size_t>(i)] += rational(sign) / rat_pow(rational(2), m + 1);
    }
    return row;
}

Rational haar_scaled(int m, int n, int k, const std::vector<Rational>& t) {
    if (static_cast<long>(t.size()) != (1L << m) + 1)
        throw std::invalid_argument("bottom data length mismatch");
    const auto row = haar_scaled_row(m, n, k);
    Rational acc(0);
    for (size_t i = 0; i < row.size(); ++i) acc += row[i] * t[i];
    return acc;
}

double haar_coefficient(int m, int n, int k, const std::vector<double>& t) {
    const auto row = haar_scaled_row(m, n, k);
    if (t.size() != row.size()) throw std::invalid_argument("bottom data length mismatch");
    double acc = 0;
    for (size_t i = 0; i < row.size(); ++i) acc += to_double(row[i]) * t[i];
    return std::pow(2.0, 0.5 * n) * acc;
}

GammaDecomposition gamma_decomposition(int m) {
    if (m < 1) throw std::invalid_argument("gamma decomposition needs m >= 1");
    const LevelGraph g(m);
    const auto row_pts = bottom_row(m);
    const int dim = static_cast<int>(row_pts.size());
    const Network traced = effective_form(g, row_pts);
    std::vector<int> net_index(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i)
        net_index[static_cast<size_t>(i)] = traced.index_of(lift(row_pts[static_cast<size_t>(i)], m).to_string());

    // quadratic form of the traced network in t-coordinates
    DenseMatrix<Rational> q(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const Rational& c = traced.conductance(net_index[static_cast<size_t>(i)], net_index[static_cast<size_t>(j)]);
            if (c == 0) continue;
            q(i, i) += c;
            q(j, j) += c;
            q(i, j) -= c;
            q(j, i) -= c;
        }
    }

    // per-Haar-level form: sum_k 2^n r_{n,k} r_{n,k}^T
    std::vector<DenseMatrix<Rational>> level_form;
    for (int n = 0; n <= m; ++n) {
        DenseMatrix<Rational> f(dim, dim);
        const Rational two_n = rat_pow(rational(2), n);
        for (int k = 0; k < (1 << n); ++k) {
            const auto r = haar_scaled_row(m, n, k);
            for (int i = 0; i < dim; ++i) {
                if (r[static_cast<size_t>(i)] == 0) continue;
                for (int j = 0; j < dim; ++j)
                    f(i, j) += two_n * r[static_cast<size_t>(i)] * r[static_cast<size_t>(j)];
            }
        }
        level_form.push_back(std::move(f));
    }

    // overdetermined system: sum_n gamma_n * level_form[n] == q entrywise
    const int unknowns = m + 1;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            std::vector<Rational> r(static_cast<size_t>(unknowns));
            for (int n = 0; n < unknowns; ++n) r[static_cast<size_t>(n)] = level_form[static_cast<size_t>(n)](i, j);
            rows.push_back(std::move(r));
            rhs.push_back(q(i, j));
        }
    }
    GammaDecomposition out;
    out.m = m;
    out.gamma.assign(static_cast<size_t>(unknowns), Rational(0));
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < unknowns; ++col) {
        int pr = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(pr)]);
        std::swap(rhs[static_cast<size_t>(rank)], rhs[static_cast<size_t>(pr)]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[static_cast<size_t>(r)][static_cast<size_t>(col)] == 0) continue;
            const Rational f = rows[static_cast<size_t>(r)][static_cast<size_t>(col)] / rows[static_cast<size_t>(rank)][static_cast<size_t>(col)];
            for (int c = 0; c < unknowns; ++c)
                rows[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * rows[static_cast<size_t>(rank)][static_cast<size_t>(c)];
            rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(rank)];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    out.consistent = (rank == unknowns);
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (rhs[static_cast<size_t>(r)] != 0) out.consistent = false;
    if (out.consistent)
        for (int r = 0; r < rank; ++r)
            out.gamma[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] =
                rhs[static_cast<size_t>(r)] / rows[static_cast<size_t>(r)][static_cast<size_t>(pivot_col[static_cast<size_t>(r)])];
    return out;
}

namespace {
Rational gamma_coarsest(int m) {
    return rational(70) * rat_pow(rational(10), m) /
           (5 * rat_pow(rational(3), m) + 16 * rat_pow(rational(10), m));
}
}  // namespace

std::vector<Rational> gamma_expected(int m) {
    if (m < 1) throw std::invalid_argument("gamma table needs m >= 1");
    std::vector<Rational> out(static_cast<size_t>(m) + 1);
    for (int n = 0; n < m; ++n)
        out[static_cast<size_t>(n)] = rat_pow(rational(10, 3), n) * gamma_coarsest(m - n);
    out[static_cast<size_t>(m)] = rational(20) * rat_pow(rational(10, 3), m - 1);
    return out;
}

Rational phi_b_expected(int m) {
    return rational(14) * rat_pow(rational(10), m) /
           (rat_pow(rational(3), m) + 6 * rat_pow(rational(10), m));
}

Rational phi_c_expected(int m) {
    const Rational p3 = rat_pow(rational(3), m), p10 = rat_pow(rational(10), m);
    return (5 * p3 + 9 * p10) / (5 * p3 + 30 * p10);
}

}  // namespace sg
