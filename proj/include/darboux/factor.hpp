#ifndef DARBOUX_FACTOR_HPP
#define DARBOUX_FACTOR_HPP

#include "poly.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace darboux {

// Dense univariate polynomial over Q; c[i] is the coefficient of s^i.
using UPoly = std::vector<Rational>;

namespace upoly {

inline void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline UPoly sub(UPoly a, const UPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
    if (b.empty()) throw Error("univariate division by zero");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    UPoly q(a.size() - b.size() + 1, Rational(0));
    for (int i = deg(a) - deg(b); i >= 0; --i) {
        Rational c = a[i + b.size() - 1] / b.back();
        q[i] = c;
        for (size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline UPoly monic(UPoly p) {
    trim(p);
    if (p.empty()) return p;
    Rational l = p.back();
    for (auto& c : p) c /= l;
    return p;
}

inline UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline UPoly derivative(const UPoly& p) {
    if (p.size() <= 1) return {};
    UPoly d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    trim(d);
    return d;
}

inline Rational eval(const UPoly& p, const Rational& x) {
    Rational r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

// Primitive integer multiple with positive leading coefficient.
inline UPoly primitive(UPoly p) {
    trim(p);
    if (p.empty()) return p;
    Integer g = 0, l = 1;
    for (auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational f(l, g);
    f.canonicalize();
    if (p.back() < 0) f = -f;
    for (auto& c : p) c *= f;
    return p;
}

}  // namespace upoly

// Positive divisors of |n|, or nullopt when n is too large to enumerate.
inline std::optional<std::vector<Integer>> positive_divisors(const Integer& n) {
    Integer a = abs(n);
    if (a == 0) return std::nullopt;
    if (a > Integer("1000000000000")) return std::nullopt;
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= a; ++d) {
        if (a % d != 0) continue;
        small.push_back(d);
        if (d * d != a) large.push_back(a / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

struct UFactor {
    UPoly poly;  // primitive, positive leading coefficient
    int multiplicity;
    bool assumed_irreducible = false;
};

namespace detail {

// Square-free decomposition (Yun): returns (a_i, i) with p = c * prod a_i^i.
inline std::vector<std::pair<UPoly, int>> squarefree(const UPoly& p) {
    std::vector<std::pair<UPoly, int>> out;
    UPoly f = upoly::monic(p);
    if (upoly::deg(f) <= 0) return out;
    UPoly fp = upoly::derivative(f);
    UPoly a = upoly::gcd(f, fp);
    UPoly b = upoly::divmod(f, a).first;
    UPoly c = upoly::divmod(fp, a).first;
    UPoly d = upoly::sub(c, upoly::derivative(b));
    for (int i = 1; upoly::deg(b) > 0; ++i) {
        UPoly g = upoly::gcd(b, d);
        if (upoly::deg(g) > 0) out.push_back({g, i});
        UPoly nb = upoly::divmod(b, g).first;
        c = upoly::divmod(d, g).first;
        b = nb;
        d = upoly::sub(c, upoly::derivative(b));
    }
    return out;
}

inline std::optional<Rational> find_rational_root(const UPoly& f) {
    UPoly p = upoly::primitive(f);
    if (p[0] == 0) return Rational(0);
    auto num = positive_divisors(p[0].get_num());
    auto den = positive_divisors(p.back().get_num());
    if (!num || !den) return std::nullopt;
    for (auto& q : *den)
        for (auto& n : *num)
            for (int s : {1, -1}) {
                Rational r(n * s, q);
                r.canonicalize();
                if (upoly::eval(p, r) == 0) return r;
            }
    return std::nullopt;
}

// Newton interpolation through (xs[i], ys[i]).
inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    size_t n = xs.size();
    std::vector<Rational> dd(ys);
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    UPoly r{dd[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        r = upoly::mul(r, UPoly{-xs[i], Rational(1)});
        if (r.empty()) r = UPoly{Rational(0)};
        r[0] += dd[i];
    }
    upoly::trim(r);
    return r;
}

struct SplitOutcome {
    std::optional<std::pair<UPoly, UPoly>> split;
    bool gave_up = false;
};

// Kronecker's method: search for an integer factor of degree s.
inline SplitOutcome kronecker_split(const UPoly& f, long budget) {
    int n = upoly::deg(f);
    double norm2 = 0;
    for (auto& c : f) norm2 += c.get_d() * c.get_d();
    norm2 = std::sqrt(norm2);
    const Rational& lc = f.back();
    for (int s = 2; s <= n / 2; ++s) {
        double bound = std::pow(2.0, s) * norm2 + 1;
        // Pick s+1 evaluation points with few divisors.
        std::vector<std::pair<size_t, long>> pts;
        for (long x = -12; x <= 12; ++x) {
            Rational v = upoly::eval(f, Rational(x));
            if (v == 0) continue;
            auto ds = positive_divisors(v.get_num());
            if (!ds) continue;
            pts.push_back({ds->size(), x});
        }
        std::sort(pts.begin(), pts.end());
        if (pts.size() < static_cast<size_t>(s + 1)) return {std::nullopt, true};
        std::vector<Rational> xs;
        std::vector<std::vector<Integer>> choices;
        double combos = 1;
        for (int i = 0; i <= s; ++i) {
            long x = pts[i].second;
            xs.push_back(Rational(x));
            Integer v = upoly::eval(f, Rational(x)).get_num();
            auto ds = *positive_divisors(v);
            std::vector<Integer> opts;
            for (auto& d : ds) {
                opts.push_back(d);
                if (i > 0) opts.push_back(-d);
            }
            combos *= static_cast<double>(opts.size());
            choices.push_back(std::move(opts));
        }
        if (combos > static_cast<double>(budget)) return {std::nullopt, true};
        std::vector<size_t> idx(s + 1, 0);
        while (true) {
            std::vector<Rational> ys;
            for (int i = 0; i <= s; ++i) ys.push_back(Rational(choices[i][idx[i]]));
            UPoly g = interpolate(xs, ys);
            bool ok = upoly::deg(g) == s;
            for (auto& c : g)
                if (!ok || c.get_den() != 1 || std::abs(c.get_d()) > bound) ok = false;
            if (ok) {
                Rational ratio = lc / g.back();
                ok = ratio.get_den() == 1;
            }
            if (ok) {
                auto [q, r] = upoly::divmod(f, g);
                if (r.empty()) return {std::make_pair(upoly::primitive(g), upoly::primitive(q)), false};
            }
            size_t k = 0;
            while (k <= static_cast<size_t>(s) && ++idx[k] == choices[k].size()) idx[k++] = 0;
            if (k > static_cast<size_t>(s)) break;
        }
    }
    return {std::nullopt, false};
}

inline void factor_squarefree(const UPoly& f, int mult, std::vector<UFactor>& out) {
    UPoly p = upoly::primitive(f);
    if (upoly::deg(p) <= 0) return;
    if (upoly::deg(p) == 1) {
        out.push_back({p, mult});
        return;
    }
    if (auto r = find_rational_root(p)) {
        UPoly lin = upoly::primitive(UPoly{-*r, Rational(1)});
        out.push_back({lin, mult});
        factor_squarefree(upoly::divmod(p, lin).first, mult, out);
        return;
    }
    if (upoly::deg(p) <= 3) {
        out.push_back({p, mult});
        return;
    }
    auto res = kronecker_split(p, 200000);
    if (res.split) {
        factor_squarefree(res.split->first, mult, out);
        factor_squarefree(res.split->second, mult, out);
    } else {
        out.push_back({p, mult, res.gave_up || upoly::deg(p) > 6});
    }
}

}  // namespace detail

struct UFactorization {
    Rational unit;
    std::vector<UFactor> factors;
};

// Factorization over Q: square-free split, rational roots, then Kronecker
// trial division. Factors that exceed the search budget are flagged.
inline UFactorization factor_upoly(UPoly p) {
    upoly::trim(p);
    if (p.empty()) throw Error("factoring the zero polynomial");
    UFactorization out;
    for (auto& [a, i] : detail::squarefree(p)) detail::factor_squarefree(a, i, out.factors);
    std::sort(out.factors.begin(), out.factors.end(), [](const UFactor& x, const UFactor& y) {
        if (x.poly.size() != y.poly.size()) return x.poly.size() < y.poly.size();
        for (size_t i = x.poly.size(); i-- > 0;)
            if (x.poly[i] != y.poly[i]) return x.poly[i] < y.poly[i];
        return x.multiplicity < y.multiplicity;
    });
    UPoly prod{Rational(1)};
    for (auto& f : out.factors)
        for (int k = 0; k < f.multiplicity; ++k) prod = upoly::mul(prod, f.poly);
    out.unit = p.back() / prod.back();
    return out;
}

struct PolyFactor {
    Poly factor;
    int multiplicity;
    bool assumed_irreducible = false;
};

struct Factorization {
    Scalar unit;
    std::vector<PolyFactor> factors;

    Poly expand(const Ring& r) const {
        Poly p(r, unit);
        for (auto& f : factors) p *= f.factor.pow(f.multiplicity);
        return p;
    }
};

inline UPoly to_upoly(const Poly& f, size_t var) {
    UPoly u;
    for (auto& [m, c] : f.terms()) {
        for (size_t i = 0; i < m.size(); ++i)
            if (i != var && m[i]) throw Error("polynomial is not univariate");
        if (static_cast<size_t>(m[var]) >= u.size()) u.resize(m[var] + 1, Rational(0));
        u[m[var]] = c.rational();
    }
    return u;
}

inline Poly from_upoly(const Ring& r, size_t var, const UPoly& u) {
    Poly p(r);
    for (size_t i = 0; i < u.size(); ++i) {
        Monomial m(r->size(), 0);
        m[var] = static_cast<int>(i);
        p.add_term(m, Scalar(u[i]));
    }
    return p;
}

// Factor a univariate polynomial with rational coefficients.
inline Factorization factor_univariate(const Poly& f) {
    if (f.is_zero()) throw Error("factoring the zero polynomial");
    if (!f.is_rational()) throw Error("factor_univariate needs rational coefficients");
    const Ring& r = f.ring();
    size_t var = 0;
    int nvars = 0;
    for (size_t i = 0; i < r->size(); ++i)
        if (f.depends_on(i)) {
            var = i;
            ++nvars;
        }
    if (nvars > 1) throw Error("polynomial is not univariate");
    Factorization out;
    if (nvars == 0) {
        out.unit = f.constant_value();
        return out;
    }
    auto uf = factor_upoly(to_upoly(f, var));
    out.unit = Scalar(uf.unit);
    for (auto& x : uf.factors) out.factors.push_back({from_upoly(r, var, x.poly), x.multiplicity, x.assumed_irreducible});
    return out;
}

}  // namespace darboux

#endif
