#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "sg/energy.hpp"

using namespace sg;
using sg::testing::random_rational;

namespace {
NodeValues<Rational> boundary_data(const LevelGraph& g, Rational a, Rational b, Rational c) {
    const LevelGraph g0(0);
    NodeValues<Rational> u0(3);
    u0[static_cast<size_t>(g0.index_of(boundary_vertex(0, 0)))] = a;
    u0[static_cast<size_t>(g0.index_of(boundary_vertex(1, 0)))] = b;
    u0[static_cast<size_t>(g0.index_of(boundary_vertex(2, 0)))] = c;
    return harmonic_extend(g0, u0, g);
}
}  // namespace

TEST_CASE("one-step extension uses the 2/5 2/5 1/5 rule") {
    const LevelGraph g(1);
    const auto u = boundary_data(g, rational(1), rational(0), rational(0));
    CHECK(u[static_cast<size_t>(g.index_of(canonicalize("0", 1)))] == rational(2, 5));
    CHECK(u[static_cast<size_t>(g.index_of(canonicalize("0", 2)))] == rational(2, 5));
    CHECK(u[static_cast<size_t>(g.index_of(canonicalize("1", 2)))] == rational(1, 5));
    CHECK(graph_energy(g, u) == 2);
}

TEST_CASE("harmonic extension preserves energy exactly") {
    std::mt19937 rng(101);
    for (int t = 0; t < 5; ++t) {
        const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        const LevelGraph g0(0);
        NodeValues<Rational> u0{a, b, c};
        const Rational e0 = graph_energy(g0, u0);
        for (int m = 1; m <= 3; ++m) {
            const LevelGraph g(m);
            CHECK(graph_energy(g, harmonic_extend(g0, u0, g)) == e0);
        }
    }
}

TEST_CASE("minimize_energy equals harmonic extension for boundary constraints") {
    const LevelGraph g(3);
    std::map<VertexId, Rational> cons;
    cons[boundary_vertex(0, 0)] = rational(1);
    cons[boundary_vertex(1, 0)] = rational(0);
    cons[boundary_vertex(2, 0)] = rational(0);
    const auto u = minimize_energy(g, cons);
    const auto v = boundary_data(g, rational(1), rational(0), rational(0));
    CHECK(u == v);
}

TEST_CASE("single constraint gives a constant") {
    const LevelGraph g(2);
    std::map<VertexId, Rational> cons;
    cons[canonicalize("01", 2)] = rational(3, 7);
    const auto u = minimize_energy(g, cons);
    for (const auto& x : u) CHECK(x == rational(3, 7));
    CHECK(graph_energy(g, u) == 0);
}

TEST_CASE("maximum principle") {
    std::mt19937 rng(55);
    const LevelGraph g(3);
    std::map<VertexId, Rational> cons;
    cons[boundary_vertex(1, 0)] = rational(-2);
    cons[canonicalize("021", 0)] = rational(5, 2);
    cons[canonicalize("2", 1)] = random_rational(rng);
    const auto u = minimize_energy(g, cons);
    Rational lo = rational(5, 2), hi = rational(-2);
    for (const auto& [k, v] : cons) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (const auto& x : u) {
        CHECK(x >= lo);
        CHECK(x <= hi);
    }
}

TEST_CASE("Euler-Lagrange identity for the damped minimizer") {
    const int m = 3;
    const LevelGraph g(m);
    const auto w = measure_weights(g);
    ExtensionProblem<double> p;
    p.level = m;
    p.lambda = 2.5;
    p.dirichlet = true;
    p.constraints[canonicalize("01", 2)] = 1.0;
    p.constraints[canonicalize("2", 1)] = -0.5;
    const auto u = minimize_energy_lambda(g, p);
    std::vector<int> pinned;
    for (int b : g.boundary()) pinned.push_back(b);
    for (const auto& [k, v] : p.constraints) pinned.push_back(g.index_of(lift(k, m)));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int t = 0; t < 100; ++t) {
        NodeValues<double> v(static_cast<size_t>(g.vertex_count()));
        for (auto& x : v) x = d(rng);
        for (int i : pinned) v[static_cast<size_t>(i)] = 0.0;
        double weighted = 0;
        for (int i = 0; i < g.vertex_count(); ++i)
            weighted += to_double(w[static_cast<size_t>(i)]) * u[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
        CHECK(std::abs(energy_bilinear(g, u, v) + p.lambda * weighted) < 1e-10);
    }
}

TEST_CASE("damping shrinks the mass monotonically") {
    const LevelGraph g(3);
    const auto w = measure_weights(g);
    double prev = 1e100;
    for (double lambda : {1.0, 10.0, 100.0}) {
        ExtensionProblem<double> p;
        p.level = 3;
        p.lambda = lambda;
        p.dirichlet = true;
        p.constraints[canonicalize("01", 2)] = 1.0;
        const auto u = minimize_energy_lambda(g, p);
        CHECK(u[static_cast<size_t>(g.index_of(lift(canonicalize("01", 2), 3)))] == doctest::Approx(1.0));
        double mass = 0;
        for (int i = 0; i < g.vertex_count(); ++i)
            mass += to_double(w[static_cast<size_t>(i)]) * u[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
        CHECK(mass < prev);
        prev = mass;
    }
}

TEST_CASE("resolvent columns are symmetric and vanish on the boundary") {
    const LevelGraph g(2);
    DiscreteResolvent<Rational> res(g, rational(0));
    const VertexId x = canonicalize("0", 1), y = canonicalize("12", 0);
    const auto cx = res.column(x);
    const auto cy = res.column(y);
    CHECK(cx[static_cast<size_t>(g.index_of(lift(y, 2)))] == cy[static_cast<size_t>(g.index_of(lift(x, 2)))]);
    for (int b : g.boundary()) CHECK(cx[static_cast<size_t>(b)] == 0);
    CHECK_THROWS(res.column(boundary_vertex(0, 0)));
}

TEST_CASE("resolvent construction reproduces the direct constrained solve") {
    std::mt19937 rng(31);
    const int m = 3;
    const LevelGraph g(m);
    std::vector<VertexId> pts = {canonicalize("0", 1), canonicalize("12", 0), canonicalize("221", 1)};
    std::vector<Rational> a = {random_rational(rng), random_rational(rng), random_rational(rng)};
    const auto sol = resolvent_construct<Rational>(g, pts, a, rational(0));
    std::map<VertexId, Rational> cons;
    for (size_t i = 0; i < pts.size(); ++i) cons[pts[i]] = a[i];
    const auto direct = minimize_energy(g, cons, /*dirichlet=*/true);
    CHECK(sol.minimizer == direct);
    CHECK(sol.value == graph_energy(g, direct));
    for (size_t i = 0; i < pts.size(); ++i)
        CHECK(sol.minimizer[static_cast<size_t>(g.index_of(lift(pts[i], m)))] == a[i]);
}

TEST_CASE("piecewise-harmonic integrals") {
    for (int m = 1; m <= 3; ++m) {
        const LevelGraph g(m);
        // constants integrate to themselves
        NodeValues<Rational> ones(static_cast<size_t>(g.vertex_count()), rational(1));
        CHECK(integrate_piecewise_harmonic(g, ones) == std::pair{rational(1), rational(1)});
        // harmonic coordinate h_0: second moment is level-independent, 7/45
        const LevelGraph g0(0);
        NodeValues<Rational> h0{rational(1), rational(0), rational(0)};
        const auto [mean, second] = integrate_piecewise_harmonic(g, harmonic_extend(g0, h0, g));
        CHECK(second == rational(7, 45));
        CHECK(mean == rational(1, 3));
    }
}

TEST_CASE("vertex-weight quadrature converges monotonically to the exact integral") {
    const LevelGraph g0(0);
    NodeValues<Rational> h0{rational(1), rational(0), rational(0)};
    const Rational exact = rational(7, 45);
    Rational prev_err(-1);
    for (int m = 0; m <= 4; ++m) {
        const LevelGraph g(m);
        const auto u = harmonic_extend(g0, h0, g);
        const auto w = measure_weights(g);
        Rational quad(0);
        for (int i = 0; i < g.vertex_count(); ++i)
            quad += w[static_cast<size_t>(i)] * u[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
        const Rational err = abs(quad - exact);
        if (prev_err >= 0) CHECK(err < prev_err);
        prev_err = err;
    }
}
