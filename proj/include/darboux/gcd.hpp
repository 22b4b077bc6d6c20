#ifndef DARBOUX_GCD_HPP
#define DARBOUX_GCD_HPP

#include "poly.hpp"

#include <map>

namespace darboux {

namespace detail {

inline int main_variable(const Poly& a, const Poly& b) {
    const Ring& r = a.ring() ? a.ring() : b.ring();
    for (size_t i = r->size(); i-- > 0;)
        if (a.depends_on(i) || b.depends_on(i)) return static_cast<int>(i);
    return -1;
}

// Coefficients of f as a polynomial in variable v.
inline std::map<int, Poly> coeffs_in(const Poly& f, size_t v) {
    std::map<int, Poly> out;
    for (auto& [m, c] : f.terms()) {
        Monomial rest(m);
        rest[v] = 0;
        auto [it, ins] = out.try_emplace(m[v], Poly(f.ring()));
        it->second.add_term(rest, c);
    }
    return out;
}

inline Poly lead_in(const Poly& f, size_t v) { return coeffs_in(f, v).rbegin()->second; }

inline Poly var_power(const Ring& r, size_t v, int e) {
    Monomial m(r->size(), 0);
    m[v] = e;
    return Poly::monomial(r, m, Scalar(1));
}

Poly gcd_rec(const Poly& a, const Poly& b);

inline Poly content_in(const Poly& f, size_t v) {
    Poly g;
    for (auto& [e, c] : coeffs_in(f, v)) {
        g = g.is_zero() ? c : gcd_rec(g, c);
        if (g.is_constant()) return Poly(f.ring(), Scalar(1));
    }
    return g;
}

inline Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive();
    if (b.is_zero()) return a.primitive();
    const Ring& r = a.ring() ? a.ring() : b.ring();
    int vi = main_variable(a, b);
    if (vi < 0) return Poly(r, Scalar(1));
    size_t v = static_cast<size_t>(vi);
    if (a.degree_in(v) < 0 || !a.depends_on(v)) {
        // a free of v: gcd divides every coefficient of b in v
        Poly g = a;
        for (auto& [e, c] : coeffs_in(b, v)) {
            g = gcd_rec(g, c);
            if (g.is_constant()) return Poly(r, Scalar(1));
        }
        return g.primitive();
    }
    if (!b.depends_on(v)) return gcd_rec(b, a);
    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly cont = gcd_rec(ca, cb);
    Poly p = exact_div(a, ca), q = exact_div(b, cb);
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (true) {
        // pseudo-remainder of p by q in v
        Poly lq = lead_in(q, v);
        int dq = q.degree_in(v);
        while (!p.is_zero() && p.degree_in(v) >= dq) {
            Poly lp = lead_in(p, v);
            p = lq * p - lp * var_power(r, v, p.degree_in(v) - dq) * q;
        }
        if (p.is_zero()) break;
        if (!p.depends_on(v)) {
            q = Poly(r, Scalar(1));
            break;
        }
        p = exact_div(p, content_in(p, v));
        std::swap(p, q);
    }
    if (q.depends_on(v)) q = exact_div(q, content_in(q, v));
    return (cont * q).primitive();
}

}  // namespace detail

// Greatest common divisor over Q(sqrt m), normalized with primitive().
inline Poly gcd(const Poly& a, const Poly& b) { return detail::gcd_rec(a, b); }

inline bool coprime(const Poly& a, const Poly& b) { return gcd(a, b).is_constant(); }

}  // namespace darboux

#endif
