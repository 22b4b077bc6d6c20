#ifndef DARBOUX_SCALAR_HPP
#define DARBOUX_SCALAR_HPP

#include <gmpxx.h>

#include <cctype>
#include <regex>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace darboux {

using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RadicandMismatch : public Error {
public:
    RadicandMismatch(long m1, long m2)
        : Error("radicand mismatch: sqrt(" + std::to_string(m1) + ") vs sqrt(" +
                std::to_string(m2) + ")") {}
};

inline Rational make_rational(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
    static const std::regex form(R"(\s*-?[0-9]+(/[0-9]+)?\s*)");
    if (!std::regex_match(s, form)) throw Error("not a rational literal: '" + s + "'");
    auto slash = s.find('/');
    if (slash != std::string::npos && s.find_first_not_of("0 ", slash + 1) == std::string::npos)
        throw Error("zero denominator in '" + s + "'");
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    Rational r(t);
    r.canonicalize();
    return r;
}

// Splits n != 0 as s^2 * m with m squarefree. Trial division stops at 10^6;
// a remaining cofactor is treated as squarefree unless it is a perfect square.
inline std::pair<Integer, Integer> squarefree_split(const Integer& n) {
    if (n == 0) throw Error("squarefree_split of zero");
    Integer rest = abs(n);
    Integer s = 1;
    Integer m = 1;
    for (unsigned long p = 2; p <= 1000000 && Integer(p) * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) m *= p;
    }
    if (rest > 1) {
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            Integer r;
            mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
            s *= r;
        } else {
            m *= rest;
        }
    }
    if (n < 0) m = -m;
    return {s, m};
}

// a + b*sqrt(m); m == 0 means "no radicand" and forces b == 0.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}
    Scalar(const Rational& v) : a_(v) {}
    Scalar(const Integer& v) : a_(v) {}
    Scalar(Rational a, Rational b, long m) : a_(std::move(a)), b_(std::move(b)), m_(m) {
        if (m_ == 1 || (m_ == 0 && b_ != 0)) throw Error("invalid radicand");
        normalize();
    }

    static Scalar sqrt_of(const Rational& q) {
        if (q == 0) return Scalar();
        Integer nd = q.get_num() * q.get_den();
        auto [s, m] = squarefree_split(nd);
        Rational coeff(s, q.get_den());
        coeff.canonicalize();
        if (m == 1) return Scalar(coeff);
        return Scalar(0, coeff, m.get_si());
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long radicand() const { return m_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_real() const { return m_ >= 0; }

    const Rational& rational() const {
        if (!is_rational()) throw Error("scalar is not rational: " + str());
        return a_;
    }

    Scalar conj() const { return m_ == 0 ? *this : Scalar(a_, -b_, m_); }

    // For m < 0: Re lies in Q, Im in Q(sqrt(|m|)).
    Scalar re() const { return m_ < 0 ? Scalar(a_) : *this; }
    Scalar im() const {
        if (m_ >= 0) return Scalar();
        if (m_ == -1) return Scalar(b_);
        return Scalar(0, b_, -m_);
    }

    double to_double() const {
        if (m_ < 0) throw Error("complex scalar has no real value: " + str());
        return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(m_));
    }

    // Sign of a real scalar; throws for non-real.
    int sign() const {
        if (m_ < 0) throw Error("sign of complex scalar");
        if (b_ == 0) return sgn(a_);
        // compare a against -b*sqrt(m)
        int sa = sgn(a_), sb = sgn(b_);
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rational lhs = a_ * a_, rhs = b_ * b_ * m_;
        return lhs > rhs ? sa : sb;
    }

    Scalar inverse() const {
        if (is_zero()) throw Error("division by zero");
        if (b_ == 0) return Scalar(Rational(1) / a_);
        Rational n = a_ * a_ - b_ * b_ * m_;
        return Scalar(a_ / n, -b_ / n, m_);
    }

    Scalar operator-() const {
        Scalar r(*this);
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        long m = join(o);
        a_ += o.a_;
        b_ += o.b_;
        m_ = m;
        normalize();
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar& operator*=(const Scalar& o) {
        long m = join(o);
        Rational na = a_ * o.a_ + b_ * o.b_ * m;
        Rational nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        m_ = m;
        normalize();
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.m_ == y.m_);
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar pow(unsigned n) const {
        Scalar r(1), base(*this);
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    // "a + b*sqrt(m)" with the zero parts dropped.
    std::string str() const {
        if (b_ == 0) return a_.get_str();
        std::string rad = "sqrt(" + std::to_string(m_) + ")";
        std::string bpart;
        Rational ab = abs(b_);
        bpart = ab == 1 ? rad : ab.get_str() + "*" + rad;
        if (a_ == 0) return (b_ < 0 ? "-" : "") + bpart;
        return a_.get_str() + (b_ < 0 ? " - " : " + ") + bpart;
    }

    // Rational if it needs no parentheses as a factor.
    bool is_atomic() const { return b_ == 0 || a_ == 0; }

private:
    long join(const Scalar& o) const {
        if (b_ == 0) return o.b_ == 0 ? 0 : o.m_;
        if (o.b_ == 0 || o.m_ == m_) return m_;
        throw RadicandMismatch(m_, o.m_);
    }
    void normalize() {
        if (b_ == 0) m_ = 0;
    }

    Rational a_{0};
    Rational b_{0};
    long m_ = 0;
};

inline std::string to_string(const Scalar& s) { return s.str(); }

}  // namespace darboux

#endif
