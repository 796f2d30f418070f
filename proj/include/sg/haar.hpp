#pragma once

#include <vector>

#include "sg/energy.hpp"
#include "sg/graph.hpp"
#include "sg/rational.hpp"

namespace sg {

/// Scaled Haar coefficient of bottom data t = (t_0..t_{2^m}): returns the
/// rational r with D^m_{n,k} = 2^{n/2} r, so that (D^m_{n,k})^2 = 2^n r^2
/// stays rational.  r is the inner product of the +-1 step pattern with the
/// piecewise-constant interpolation (endpoints half-weighted).
Rational haar_scaled(int m, int n, int k, const std::vector<Rational>& t);

/// Row vector of haar_scaled as a linear functional in t.
std::vector<Rational> haar_scaled_row(int m, int n, int k);

/// D^m_{n,k} as a floating value, 2^{n/2} times the scaled coefficient.
double haar_coefficient(int m, int n, int k, const std::vector<double>& t);

/// The traced bottom-row form expanded in the Haar system: E(t) =
/// sum_n gamma[n] sum_k (D^m_{n,k})^2 with gamma keyed by Haar level n
/// (n = 0 coarsest).  consistent is false when the traced form is not in the
/// span of the per-level Haar forms (never observed; structural check).
struct GammaDecomposition {
    int m = 0;
    std::vector<Rational> gamma;  // size m+1, index = Haar level
    bool consistent = false;
};

GammaDecomposition gamma_decomposition(int m);

/// Closed-form gamma values: coarsest 70*10^m/(5*3^m+16*10^m); level n < m
/// satisfies the (10/3) recursion in (n, m) jointly; finest 20*(10/3)^{m-1}.
std::vector<Rational> gamma_expected(int m);

/// The bump function: 0 on the bottom row, 1 at q_0, harmonic elsewhere.
template <class T>
struct PhiBump {
    int m = 0;
    NodeValues<T> values;
    T c;         // value at the two mid-side points (q_0+q_i)/2
    T b_direct;  // (5/3)^m (2 u(q_0) - u(y_1) - u(y_2)), y_i level-m neighbors
    T b_from_c;  // (5/3)(2 - 2c)
};

template <class T>
PhiBump<T> phi_bump(int m);

Rational phi_b_expected(int m);  // 14*10^m/(3^m+6*10^m)
Rational phi_c_expected(int m);  // (5*3^m+9*10^m)/(5*3^m+30*10^m)

/// Energy minimizer constrained on the bottom row only (q_0 free).
template <class T>
NodeValues<T> harmonic_away_from_bottom(const LevelGraph& g, const std::vector<T>& t);

/// Normal derivative at a boundary point: (5/3)^m (2u(q) - sum of the two
/// level-m neighbor values).
template <class T>
T boundary_normal_derivative(const LevelGraph& g, const NodeValues<T>& u, const VertexId& q);

/// The weighted bottom-row average (t_0 + 2 t_1 + ... + 2 t_{2^m-1} + t_{2^m}) / 2^{m+1}.
template <class T>
T bottom_weighted_average(const std::vector<T>& t) {
    const size_t last = t.size() - 1;
    T acc = t[0] + t[last];
    for (size_t i = 1; i < last; ++i) acc += T(2) * t[i];
    return acc / T(2 * static_cast<long>(last));
}

// --- template definitions ---

template <class T>
PhiBump<T> phi_bump(int m) {
    if (m < 1) throw std::invalid_argument("phi_bump needs m >= 1");
    const LevelGraph g(m);
    std::map<VertexId, T> constraints;
    for (const auto& v : bottom_row(m)) constraints[v] = T(0);
    constraints[boundary_vertex(0, 0)] = T(1);
    PhiBump<T> out;
    out.m = m;
    out.values = minimize_energy(g, constraints);
    out.c = out.values[static_cast<size_t>(g.index_of(lift(canonicalize("0", 1), m)))];
    out.b_direct = boundary_normal_derivative(g, out.values, boundary_vertex(0, 0));
    out.b_from_c = T(5) / T(3) * (T(2) - T(2) * out.c);
    return out;
}

template <class T>
NodeValues<T> harmonic_away_from_bottom(const LevelGraph& g, const std::vector<T>& t) {
    const auto row = bottom_row(g.level());
    if (t.size() != row.size()) throw std::invalid_argument("bottom data length mismatch");
    std::map<VertexId, T> constraints;
    for (size_t i = 0; i < row.size(); ++i) constraints[row[i]] = t[i];
    return minimize_energy(g, constraints);
}

template <class T>
T boundary_normal_derivative(const LevelGraph& g, const NodeValues<T>& u, const VertexId& q) {
    const int i = g.index_of(lift(q, g.level()));
    const auto& nb = g.neighbors(i);
    if (nb.size() != 2) throw std::invalid_argument("normal derivative defined at boundary points only");
    return from_rational<T>(energy_weight(g.level())) *
           (T(2) * u[static_cast<size_t>(i)] - u[static_cast<size_t>(nb[0])] - u[static_cast<size_t>(nb[1])]);
}

}  // namespace sg
