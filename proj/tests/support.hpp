#ifndef DARBOUX_TEST_SUPPORT_HPP
#define DARBOUX_TEST_SUPPORT_HPP

#include "darboux.hpp"

#include <ostream>
#include <random>

namespace darboux {
inline void PrintTo(const Poly& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.str(); }
}  // namespace darboux

namespace testing_support {

using namespace darboux;

constexpr int kCases = 200;

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    bool coin() { return integer(0, 1) == 1; }

    Rational rational(long bound = 5) {
        Rational q(integer(-bound, bound), integer(1, 4));
        q.canonicalize();
        return q;
    }
    Rational nonzero_rational(long bound = 5) {
        Rational q;
        do q = rational(bound);
        while (q == 0);
        return q;
    }

    // Random polynomial in the given variables with total degree <= deg.
    Poly poly(const Ring& r, const std::vector<size_t>& vars, int deg, int max_terms = 4) {
        Poly p(r);
        auto ms = monomials_up_to(r, vars, deg);
        int n = static_cast<int>(integer(1, max_terms));
        for (int k = 0; k < n; ++k) p += Poly::monomial(r, ms[integer(0, ms.size() - 1)], Scalar(rational()));
        return p;
    }
    Poly nonzero_poly(const Ring& r, const std::vector<size_t>& vars, int deg, int max_terms = 4) {
        Poly p;
        do p = poly(r, vars, deg, max_terms);
        while (p.is_zero());
        return p;
    }
};

// x' = x M1, y' = (y + f) M2 - f'(x) x M1: x and y + f(x) are Darboux
// polynomials with cofactors M1 and M2.
struct Planted {
    SystemDef sys;
    Poly p, q, m1, m2;
};

inline std::optional<Planted> planted_pair(const Ring& r, const Poly& f, const Poly& m1, const Poly& m2) {
    Poly x = Poly::var(r, "x"), y = Poly::var(r, "y");
    Poly q = y + f;
    Poly X = x * m1, Y = q * m2 - f.derivative("x") * x * m1;
    if (std::max(X.deg_x(), Y.deg_x()) < 1) return std::nullopt;
    return Planted{SystemDef(r, {X, Y}), x, q, m1, m2};
}

inline Ring xy() { return make_ring({"x", "y"}); }

}  // namespace testing_support

#endif
