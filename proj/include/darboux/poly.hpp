#ifndef DARBOUX_POLY_HPP
#define DARBOUX_POLY_HPP

#include "scalar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace darboux {

enum class Role { state, time, parameter };

struct Variable {
    std::string name;
    Role role;
};

// Ordered variable table: states first, then time, then parameters.
class VarTable {
public:
    VarTable(std::vector<std::string> states, bool with_time, std::vector<std::string> params) {
        for (auto& s : states) vars_.push_back({std::move(s), Role::state});
        if (with_time) vars_.push_back({"t", Role::time});
        for (auto& p : params) vars_.push_back({std::move(p), Role::parameter});
        for (size_t i = 0; i < vars_.size(); ++i)
            for (size_t j = 0; j < i; ++j)
                if (vars_[i].name == vars_[j].name)
                    throw Error("duplicate variable '" + vars_[i].name + "'");
    }

    size_t size() const { return vars_.size(); }
    const Variable& operator[](size_t i) const { return vars_[i]; }
    const std::vector<Variable>& vars() const { return vars_; }

    std::optional<size_t> find(const std::string& name) const {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        return std::nullopt;
    }
    size_t index_of(const std::string& name) const {
        auto i = find(name);
        if (!i) throw Error("unknown variable '" + name + "'");
        return *i;
    }

    std::vector<size_t> indices(Role r) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].role == r) out.push_back(i);
        return out;
    }
    size_t num_states() const { return indices(Role::state).size(); }
    std::optional<size_t> time_index() const {
        auto v = indices(Role::time);
        if (v.empty()) return std::nullopt;
        return v.front();
    }

    bool operator==(const VarTable& o) const {
        if (vars_.size() != o.vars_.size()) return false;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name != o.vars_[i].name || vars_[i].role != o.vars_[i].role) return false;
        return true;
    }

private:
    std::vector<Variable> vars_;
};

using Ring = std::shared_ptr<const VarTable>;

inline Ring make_ring(std::vector<std::string> states, std::vector<std::string> params = {},
                      bool with_time = true) {
    return std::make_shared<const VarTable>(std::move(states), with_time, std::move(params));
}

using Monomial = std::vector<int>;

inline int mono_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

// Graded lex over the table order; the largest monomial is the leading one.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

class NotDivisible;

class Poly {
public:
    using Terms = std::map<Monomial, Scalar, GrlexLess>;

    Poly() = default;
    explicit Poly(Ring r) : ring_(std::move(r)) {}
    Poly(Ring r, const Scalar& c) : ring_(std::move(r)) {
        if (!c.is_zero()) terms_[Monomial(ring_->size(), 0)] = c;
    }

    static Poly var(const Ring& r, const std::string& name) { return var(r, r->index_of(name)); }
    static Poly var(const Ring& r, size_t i) {
        Monomial m(r->size(), 0);
        m[i] = 1;
        return monomial(r, m, Scalar(1));
    }
    static Poly monomial(const Ring& r, Monomial m, const Scalar& c) {
        Poly p(r);
        if (!c.is_zero()) p.terms_[std::move(m)] = c;
        return p;
    }

    const Ring& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
    }
    Scalar constant_value() const {
        if (!is_constant()) throw Error("polynomial is not constant");
        return terms_.empty() ? Scalar() : terms_.begin()->second;
    }
    Scalar coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }
    bool is_rational() const {
        for (auto& [m, c] : terms_)
            if (!c.is_rational()) return false;
        return true;
    }
    bool is_real() const {
        for (auto& [m, c] : terms_)
            if (!c.is_real()) return false;
        return true;
    }

    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }
    int degree_in(const std::vector<size_t>& idx) const {
        int d = -1;
        for (auto& [m, c] : terms_) {
            int s = 0;
            for (size_t i : idx) s += m[i];
            d = std::max(d, s);
        }
        return d;
    }
    // Degree in the state variables; -1 for the zero polynomial.
    int deg_x() const { return ring_ ? degree_in(ring_->indices(Role::state)) : -1; }
    int degree_in(size_t i) const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m[i]);
        return d;
    }
    bool depends_on(size_t i) const {
        for (auto& [m, c] : terms_)
            if (m[i]) return true;
        return false;
    }

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Scalar& leading_coeff() const { return terms_.rbegin()->second; }

    Poly operator-() const {
        Poly r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        adopt(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        adopt(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
    friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.ring_ ? a.ring_ : b.ring_);
        check_rings(a, b);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.is_zero() && b.is_zero()) return true;
        check_rings(a, b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned n) const {
        Poly r(ring_, Scalar(1)), base(*this);
        while (n) {
            if (n & 1) r *= base;
            if (n >>= 1) base *= base;
        }
        return r;
    }

    Poly derivative(size_t i) const {
        Poly r(ring_);
        for (auto& [m, c] : terms_) {
            if (!m[i]) continue;
            Monomial d(m);
            --d[i];
            r.add_term(d, c * Scalar(m[i]));
        }
        return r;
    }
    Poly derivative(const std::string& name) const { return derivative(ring_->index_of(name)); }

    // Antiderivative in variable i with zero constant.
    Poly integral(size_t i) const {
        Poly r(ring_);
        for (auto& [m, c] : terms_) {
            Monomial d(m);
            ++d[i];
            r.add_term(d, c * Scalar(make_rational(1, d[i])));
        }
        return r;
    }

    Poly map_coeffs(const std::function<Scalar(const Scalar&)>& f) const {
        Poly r(ring_);
        for (auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }
    Poly re() const { return map_coeffs([](const Scalar& c) { return c.re(); }); }
    Poly im() const { return map_coeffs([](const Scalar& c) { return c.im(); }); }
    Poly conj() const { return map_coeffs([](const Scalar& c) { return c.conj(); }); }

    // Terms selected by a monomial predicate.
    Poly filter(const std::function<bool(const Monomial&)>& keep) const {
        Poly r(ring_);
        for (auto& [m, c] : terms_)
            if (keep(m)) r.terms_.emplace(m, c);
        return r;
    }
    // Component of the given degree in the variables idx.
    Poly homogeneous_part(const std::vector<size_t>& idx, int k) const {
        return filter([&](const Monomial& m) {
            int s = 0;
            for (size_t i : idx) s += m[i];
            return s == k;
        });
    }

    Scalar eval(const std::vector<Scalar>& point) const {
        Scalar s;
        for (auto& [m, c] : terms_) {
            Scalar t = c;
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i]) t *= point[i].pow(m[i]);
            s += t;
        }
        return s;
    }
    double eval(const std::vector<double>& point) const {
        double s = 0;
        for (auto& [m, c] : terms_) {
            double t = c.to_double();
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i]) t *= std::pow(point[i], m[i]);
            s += t;
        }
        return s;
    }

    // Replace variable i by the polynomial v.
    Poly substitute(size_t i, const Poly& v) const {
        Poly r(ring_);
        std::vector<Poly> powers{Poly(ring_, Scalar(1))};
        for (auto& [m, c] : terms_) {
            while (static_cast<int>(powers.size()) <= m[i]) powers.push_back(powers.back() * v);
            Monomial rest(m);
            rest[i] = 0;
            r += monomial(ring_, rest, c) * powers[m[i]];
        }
        return r;
    }

    // Scale to primitive form: integer coprime coefficients with a positive
    // leading coefficient when rational, monic otherwise.
    Poly primitive() const {
        if (is_zero()) return *this;
        if (!is_rational()) return *this * leading_coeff().inverse();
        Integer g = 0, l = 1;
        for (auto& [m, c] : terms_) {
            const Rational& q = c.rational();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        }
        Rational f(l, g);
        f.canonicalize();
        if (leading_coeff().rational() < 0) f = -f;
        return *this * Scalar(f);
    }

    void add_term(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static void check_rings(const Poly& a, const Poly& b) {
        if (a.ring_ && b.ring_ && a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_))
            throw Error("polynomials over different variable tables");
    }

private:
    void adopt(const Poly& o) {
        check_rings(*this, o);
        if (!ring_) ring_ = o.ring_;
    }

    Ring ring_;
    Terms terms_;
};

inline Poly constant(const Ring& r, const Scalar& c) { return Poly(r, c); }

class NotDivisible : public Error {
public:
    explicit NotDivisible(Poly rem) : Error("not divisible"), remainder(std::move(rem)) {}
    Poly remainder;
};

struct DivResult {
    Poly quotient;
    Poly remainder;
};

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Multivariate division by a single divisor under graded lex.
// The remainder is zero exactly when g divides f.
inline DivResult divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw Error("division by zero polynomial");
    Poly::check_rings(f, g);
    const Ring& r = f.ring() ? f.ring() : g.ring();
    Poly p = f, q(r), rem(r);
    const Monomial& lg = g.leading_monomial();
    Scalar inv = g.leading_coeff().inverse();
    while (!p.is_zero()) {
        Monomial lm = p.leading_monomial();
        Scalar lc = p.leading_coeff();
        if (mono_divides(lg, lm)) {
            Monomial s(lm.size());
            for (size_t i = 0; i < s.size(); ++i) s[i] = lm[i] - lg[i];
            Scalar c = lc * inv;
            q.add_term(s, c);
            for (auto& [m, gc] : g.terms()) {
                Monomial t(m.size());
                for (size_t i = 0; i < t.size(); ++i) t[i] = m[i] + s[i];
                p.add_term(t, -(c * gc));
            }
        } else {
            rem.add_term(lm, lc);
            p.add_term(lm, -lc);
        }
    }
    return {q, rem};
}

inline std::optional<Poly> try_exact_div(const Poly& f, const Poly& g) {
    auto d = divmod(f, g);
    if (!d.remainder.is_zero()) return std::nullopt;
    return d.quotient;
}

inline Poly exact_div(const Poly& f, const Poly& g) {
    auto d = divmod(f, g);
    if (!d.remainder.is_zero()) throw NotDivisible(d.remainder);
    return d.quotient;
}

inline bool divides(const Poly& g, const Poly& f) { return divmod(f, g).remainder.is_zero(); }

// Every monomial of total degree <= k in the variables idx.
inline std::vector<Monomial> monomials_up_to(const Ring& r, const std::vector<size_t>& idx, int k) {
    std::vector<Monomial> out;
    Monomial cur(r->size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t pos, int left) {
        if (pos == idx.size()) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[idx[pos]] = e;
            rec(pos + 1, left - e);
        }
        cur[idx[pos]] = 0;
    };
    rec(0, k);
    std::sort(out.begin(), out.end(), GrlexLess());
    return out;
}

enum class TermOrder { descending, ascending };

namespace detail {

// Print order: state degree, then state exponents (earlier variables
// first), then time, then parameters.
inline bool print_before(const VarTable& vt, const Monomial& a, const Monomial& b, TermOrder ord) {
    auto key = [&](const Monomial& m, Role role) {
        std::vector<int> k;
        for (size_t i = 0; i < vt.size(); ++i)
            if (vt[i].role == role) k.push_back(m[i]);
        return k;
    };
    auto deg = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); };
    for (Role role : {Role::state, Role::time, Role::parameter}) {
        auto ka = key(a, role), kb = key(b, role);
        int da = deg(ka), db = deg(kb);
        if (da != db) return ord == TermOrder::descending ? da > db : da < db;
        if (ka != kb) return ka > kb;
    }
    return false;
}

inline std::string monomial_str(const VarTable& vt, const Monomial& m) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += vt[i].name;
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

}  // namespace detail

// Canonical text: explicit '*' and '^', rationals as p/q.
inline std::string to_string(const Poly& p, TermOrder ord = TermOrder::descending) {
    if (p.is_zero()) return "0";
    const VarTable& vt = *p.ring();
    std::vector<std::pair<Monomial, Scalar>> ts(p.terms().begin(), p.terms().end());
    std::stable_sort(ts.begin(), ts.end(), [&](const auto& x, const auto& y) {
        return detail::print_before(vt, x.first, y.first, ord);
    });
    std::string out;
    bool first = true;
    for (auto& [m, c] : ts) {
        std::string mono = detail::monomial_str(vt, m);
        bool neg;
        Scalar mag = c;
        if (c.is_atomic()) {
            neg = c.is_rational() ? c.a() < 0 : (c.a() == 0 ? c.b() < 0 : false);
            if (neg) mag = -c;
        } else {
            neg = false;
        }
        std::string cs;
        if (mono.empty()) {
            cs = mag.str();
        } else if (mag.is_one()) {
            cs = mono;
        } else {
            cs = (mag.is_atomic() ? mag.str() : "(" + mag.str() + ")") + "*" + mono;
        }
        if (first) {
            out = (neg ? "-" : "") + cs;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + cs;
        }
    }
    return out;
}

}  // namespace darboux

#endif
