#pragma once

#include "domain.hpp"
#include "rational.hpp"

namespace hd {

struct IndexReport {
    Rational e, nX, nY, mu, chiEmb;
    int g = 0;
    bool connecting = true;
};

inline Rational euler_measure(const Diagram& d, const Domain& a) {
    check_domain(d, a);
    Rational s(0);
    for (const auto& r : d.regions()) s += Rational(a[r.id]) * (Rational(1) - Rational(r.cornerCount, 4));
    return s;
}

inline Rational point_multiplicity(const Diagram& d, const Domain& a, int v) {
    check_domain(d, a);
    std::int64_t s = 0;
    for (const auto& q : d.quadrants_at(v)) s += a[q.region];
    return Rational(s, 4);
}

inline Rational generator_multiplicity(const Diagram& d, const Domain& a, const Generator& x) {
    Rational s(0);
    for (int v : x.points) s += point_multiplicity(d, a, v);
    return s;
}

namespace detail {
inline void require_connecting(const Diagram& d, const Domain& a, const Generator& x, const Generator& y,
                               bool allowNonConnecting) {
    if (!allowNonConnecting && !connects(d, a, x, y))
        throw PreconditionError("domain " + format_domain(a) + " does not connect " + format_generator(d, x) +
                                " to " + format_generator(d, y));
}
}  // namespace detail

inline Rational maslov_index(const Diagram& d, const Domain& a, const Generator& x, const Generator& y,
                             bool allowNonConnecting = false) {
    detail::require_connecting(d, a, x, y, allowNonConnecting);
    return euler_measure(d, a) + generator_multiplicity(d, a, x) + generator_multiplicity(d, a, y);
}

inline Rational embedded_euler_char(const Diagram& d, const Domain& a, const Generator& x, const Generator& y,
                                    bool allowNonConnecting = false) {
    detail::require_connecting(d, a, x, y, allowNonConnecting);
    return Rational(d.genus()) - generator_multiplicity(d, a, x) - generator_multiplicity(d, a, y) +
           euler_measure(d, a);
}

inline Rational chi_with_double_points(const Diagram& d, const Domain& a, const Generator& x, const Generator& y,
                                       int dPlus, int dMinus, bool allowNonConnecting = false) {
    if (dPlus < 0 || dMinus < 0) throw PreconditionError("double point counts must be nonnegative");
    return embedded_euler_char(d, a, x, y, allowNonConnecting) + Rational(2 * (dPlus - dMinus));
}

inline Rational analytic_index(int g, const Rational& chiS, const Rational& e) { return Rational(g) - chiS + 2 * e; }

inline Rational branch_budget(int g, const Rational& chiS) { return Rational(g) - chiS; }

inline IndexReport index_report(const Diagram& d, const Domain& a, const Generator& x, const Generator& y,
                                bool allowNonConnecting = false) {
    IndexReport r;
    r.connecting = connects(d, a, x, y);
    detail::require_connecting(d, a, x, y, allowNonConnecting);
    r.g = d.genus();
    r.e = euler_measure(d, a);
    r.nX = generator_multiplicity(d, a, x);
    r.nY = generator_multiplicity(d, a, y);
    r.mu = r.e + r.nX + r.nY;
    r.chiEmb = Rational(r.g) - r.nX - r.nY + r.e;
    return r;
}

}  // namespace hd
