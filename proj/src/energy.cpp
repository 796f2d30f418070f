#include "sg/energy.hpp"

namespace sg {

std::pair<Rational, Rational> integrate_piecewise_harmonic(const LevelGraph& g,
                                                           const NodeValues<Rational>& u) {
    if (static_cast<int>(u.size()) != g.vertex_count())
        throw std::invalid_argument("integrate: value vector does not match V_m");
    const Rational cell_mass = rat_pow(rational(1, 3), g.level());
    Rational mean_sum(0), square_sum(0);
    for (const auto& cell : g.cells()) {
        const Rational& a0 = u[static_cast<size_t>(cell[0])];
        const Rational& a1 = u[static_cast<size_t>(cell[1])];
        const Rational& a2 = u[static_cast<size_t>(cell[2])];
        mean_sum += (a0 + a1 + a2) / 3;
        // a^T M a with M_ii = 7/45, M_ij = 4/45 on the harmonic cell
        square_sum += (7 * (a0 * a0 + a1 * a1 + a2 * a2) +
                       8 * (a0 * a1 + a0 * a2 + a1 * a2)) / 45;
    }
    return {cell_mass * mean_sum, cell_mass * square_sum};
}

}  // namespace sg
