#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sg/address.hpp"
#include "sg/rational.hpp"

namespace sg {

/// beta_m = union of F_i beta_{m-1}; beta_0 = {q_0,q_1,q_2, p_0, p_1, p_2}
/// with p_0 = F_0F_2q_1, p_1 = F_1F_0q_2, p_2 = F_2F_1q_0.  Canonical ids in
/// V_{m+2}; copies share the level-1 junction midpoints, so |beta_1| = 15.
std::vector<VertexId> beta_points(int m);

/// Expected traced coefficient on beta_m: the base table (410/159, 5/53,
/// 20/53, 80/53) scaled by (5/3)^m inside one copy, 0 across copies.
Rational beta_expected(int m, const VertexId& x, const VertexId& y);

/// V_n \ V_{n-1} as canonical ids in V_n.
std::vector<VertexId> new_level_points(int n);

/// Expected traced coefficient on the new-level set, where a rule applies:
/// n=1 all 5/2; distance >= 3 gives 0; pairs inside one four-neighbor set
/// D^i_n get (5/3)^n 5/4 (d=1) or (5/3)^n 1/4 (d=2); same-corner pairs at
/// distance 1 get (5/3)^n 3/2 (the 25/6 class at n=2); same-cell pairs away
/// from the D-sets recurse with factor 5/3.  nullopt = no rule covers the
/// pair.
std::optional<Rational> new_level_expected(int n, const VertexId& x, const VertexId& y);

/// Closed-form and recurrence data for the bottom-row trace at level n.
/// Pair keys are bottom indices 0..2^n, with -1 for the top point q_0; only
/// pairs the formulas determine appear in the maps.
struct BottomRowCoeffs {
    int n = 0;
    Rational a;        // c^n_{q_0, x_0} = 7 5^n / (3^n + 6 10^n)
    Rational b;        // c^n_{0, 2^n}  = 49 25^n / ((5 3^n + 16 10^n)(3^n + 6 10^n))
    Rational tilde_b;  // 35 5^n / (10 6^n + 32 20^n)
    Rational l;        // c^n_{0,1}
    Rational m;        // middle pair coefficient
    std::map<std::pair<int, int>, Rational> with_top;
    std::map<std::pair<int, int>, Rational> without_top;
};

BottomRowCoeffs bottom_row_coeffs(int n);

/// The increment added to every interior pair when passing from level n-1 to
/// level n.
Rational bottom_interior_increment(int n);

Rational bottom_a(int n);
Rational bottom_b(int n);
Rational bottom_tilde_b(int n);

}  // namespace sg
