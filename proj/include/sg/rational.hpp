#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sg {

/// Exact rational scalar used on every verification path.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// q^e for integer e (negative exponents allowed, q != 0).
inline Rational rat_pow(const Rational& q, long e) {
    if (e < 0) {
        if (q == 0) throw std::domain_error("rat_pow: zero base, negative exponent");
        return rat_pow(1 / q, -e);
    }
    Rational acc = 1, base = q;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// (5/3)^m, the energy renormalization weight of the level-m graph.
inline Rational energy_weight(int level) { return rat_pow(rational(5, 3), level); }

/// Canonical "p/q" text form (always with denominator, e.g. "1/1").
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p/q" or a plain integer "p".
inline Rational parse_fraction(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad fraction: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Converts an exact rational into the scalar type of the active backend.
template <class T>
T from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline double from_rational<double>(const Rational& q) { return q.get_d(); }

}  // namespace sg
