#ifndef DARBOUX_JACOBI_HPP
#define DARBOUX_JACOBI_HPP

#include "eigen.hpp"
#include "gcd.hpp"
#include "integral.hpp"

namespace darboux {

// Jacobi equation with l_i = a_i x + b_i y + c_i, where the matrix rows are
// (a1 a2 a3), (b1 b2 b3), (c1 c2 c3):
//   x' = l1 - x l3,  y' = l2 - y l3.
struct JacobiBuild {
    std::optional<SystemDef> sys;
    std::vector<Poly> singular_factors;  // nonconstant gcd(X, Y)
    bool degenerate = false;
};

enum class JacobiCase { three_simple_real, repeated_simple, complex, double_divisor, triple_divisor, degenerate };

inline const char* case_name(JacobiCase c) {
    switch (c) {
        case JacobiCase::three_simple_real: return "three-simple-real";
        case JacobiCase::repeated_simple: return "repeated-simple";
        case JacobiCase::complex: return "complex";
        case JacobiCase::double_divisor: return "double-divisor";
        case JacobiCase::triple_divisor: return "triple-divisor";
        case JacobiCase::degenerate: return "degenerate";
    }
    return "?";
}

struct LinearPI {
    Scalar lambda;
    Vec vector;
    Poly p;
    Poly cofactor;
};

struct JacobiResult {
    JacobiCase kind = JacobiCase::degenerate;
    EigenStructure eigen;
    std::optional<SystemDef> sys;
    std::vector<Poly> singular_factors;
    std::vector<LinearPI> eigen_lines;           // one per eigenvector theta
    std::optional<IntegralExpr> general;         // autonomous first integral
    std::vector<IntegralExpr> nonautonomous;     // time-dependent first integrals
    std::string note;
};

namespace detail {

inline Ring jacobi_ring() {
    static const Ring r = make_ring({"x", "y"});
    return r;
}

inline Poly linear_form(const Ring& r, const Scalar& a, const Scalar& b, const Scalar& c) {
    return Poly::var(r, "x") * a + Poly::var(r, "y") * b + Poly(r, c);
}

inline Poly l_i(const SMatrix& a, size_t i) {
    return linear_form(jacobi_ring(), a(0, i), a(1, i), a(2, i));
}

inline Poly vec_poly(const Vec& v) { return linear_form(jacobi_ring(), v[0], v[1], v[2]); }

inline bool is_scalar_matrix(const SMatrix& a) {
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (i != j ? !a(i, j).is_zero() : a(i, i) != a(0, 0)) return false;
    return true;
}

}  // namespace detail

// "a1,a2,a3; b1,b2,b3; c1,c2,c3"
inline SMatrix parse_matrix(const std::string& text) {
    SMatrix m(3, 3);
    std::vector<std::string> rows;
    std::string cur;
    for (char c : text + ";") {
        if (c == ';') {
            rows.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!rows.empty() && detail::trim(rows.back()).empty()) rows.pop_back();
    if (rows.size() != 3) throw ParseError(1, 1, "matrix needs three rows separated by ';'");
    for (size_t i = 0; i < 3; ++i) {
        std::vector<std::string> cells;
        std::string cell;
        for (char c : rows[i] + ",") {
            if (c == ',') {
                cells.push_back(detail::trim(cell));
                cell.clear();
            } else {
                cell += c;
            }
        }
        if (cells.size() != 3) throw ParseError(static_cast<int>(i) + 1, 1, "matrix rows need three entries");
        for (size_t j = 0; j < 3; ++j) {
            try {
                m(i, j) = Scalar(parse_rational(cells[j]));
            } catch (const std::exception&) {
                throw ParseError(static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                                 "matrix entry '" + cells[j] + "' is not rational; substitute parameter values");
            }
        }
    }
    return m;
}

inline JacobiBuild jacobi_build(const SMatrix& a) {
    if (a.rows() != 3 || a.cols() != 3) throw Error("Jacobi matrix must be 3x3");
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (!a(i, j).is_rational()) throw Error("Jacobi matrix entries must be rational");
    JacobiBuild out;
    const Ring& r = detail::jacobi_ring();
    Poly x = Poly::var(r, "x"), y = Poly::var(r, "y");
    Poly l3 = detail::l_i(a, 2);
    Poly xx = detail::l_i(a, 0) - x * l3, yy = detail::l_i(a, 1) - y * l3;
    if (detail::is_scalar_matrix(a)) {
        out.degenerate = true;
        return out;
    }
    Poly g = gcd(xx, yy);
    if (!g.is_constant()) out.singular_factors.push_back(g);
    out.sys = SystemDef(r, {xx, yy});
    return out;
}

// p = alpha x + beta y + gamma with cofactor lambda - l3, for an
// eigenvector (alpha, beta, gamma) of A.
inline LinearPI jacobi_linear_pi(const SMatrix& a, const Scalar& lambda, const Vec& v) {
    if (v.size() != 3) throw Error("eigenvector must have three components");
    Vec res = detail::shifted(a, lambda) * v;
    if (!is_zero_vec(res)) throw Error("not an eigenvector for lambda = " + lambda.str());
    if (v[0].is_zero() && v[1].is_zero()) throw Error("eigenvector gives a constant polynomial");
    LinearPI out{lambda, v, detail::vec_poly(v), Poly(detail::jacobi_ring(), lambda) - detail::l_i(a, 2)};
    auto b = jacobi_build(a);
    if (b.sys && out.p.is_real()) {
        auto chk = verify_poly_pi(*b.sys, out.p);
        if (!chk || chk.report.primary != out.cofactor) throw Error("internal: eigen-line cofactor mismatch");
    }
    return out;
}

namespace detail {

inline JacobiCase classify(const EigenStructure& e) {
    if (e.has_complex()) return JacobiCase::complex;
    int top = 0;
    for (auto& b : e.blocks)
        for (int d : b.divisor_degrees) top = std::max(top, d);
    if (top == 3) return JacobiCase::triple_divisor;
    if (top == 2) return JacobiCase::double_divisor;
    return e.blocks.size() == 3 ? JacobiCase::three_simple_real : JacobiCase::repeated_simple;
}

inline Poly chain_poly(const EigenBlock& b, size_t chain, size_t level) { return vec_poly(b.chains[chain][level]); }

// Common positive rescaling of (u, v) to integer coefficients with unit content.
inline std::pair<Poly, Poly> integral_pair(const Poly& u, const Poly& v) {
    Integer den = 1, num = 0;
    for (const Poly* p : {&u, &v})
        for (auto& [m, c] : p->terms())
            for (const Rational& q : {c.a(), c.b()}) {
                if (q == 0) continue;
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
                mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
            }
    Rational k(den, num == 0 ? Integer(1) : Integer(abs(num)));
    k.canonicalize();
    return {u * Scalar(k), v * Scalar(k)};
}

inline void check_first_integral(const SystemDef& sys, const IntegralExpr& e) {
    auto c = verify_integral_expr(sys, e, Target::zero());
    if (!c) throw Error("internal: Jacobi integral failed verification: " + c.message);
}

}  // namespace detail

// Eigen-structure, case tag, eigen-lines and the verified general integral.
inline JacobiResult jacobi_general_integral(const SMatrix& a) {
    JacobiResult out;
    auto b = jacobi_build(a);
    out.sys = b.sys;
    out.singular_factors = b.singular_factors;
    if (b.degenerate) {
        out.kind = JacobiCase::degenerate;
        out.note = "A is a multiple of the identity; the Jacobi field vanishes";
        return out;
    }
    out.eigen = eigen_3x3(a);
    out.kind = detail::classify(out.eigen);
    const SystemDef& sys = *out.sys;
    Poly l3 = detail::l_i(a, 2);
    for (auto& blk : out.eigen.blocks)
        for (auto& ch : blk.chains) {
            Poly p = detail::vec_poly(ch.front());
            out.eigen_lines.push_back({blk.lambda, ch.front(), p, Poly(sys.ring(), blk.lambda) - l3});
        }
    IntegralExpr e;
    auto& bl = out.eigen.blocks;
    switch (out.kind) {
        case JacobiCase::three_simple_real: {
            Scalar l1 = bl[0].lambda, l2 = bl[1].lambda, l3v = bl[2].lambda;
            e.factors = {{PolyPI{detail::chain_poly(bl[0], 0, 0)}, l2 - l3v},
                         {PolyPI{detail::chain_poly(bl[1], 0, 0)}, l3v - l1},
                         {PolyPI{detail::chain_poly(bl[2], 0, 0)}, l1 - l2}};
            break;
        }
        case JacobiCase::repeated_simple: {
            for (auto& blk : bl)
                if (blk.chains.size() == 2) {
                    e.factors = {{PolyPI{detail::chain_poly(blk, 0, 0)}, Scalar(1)},
                                 {PolyPI{detail::chain_poly(blk, 1, 0)}, Scalar(-1)}};
                }
            break;
        }
        case JacobiCase::complex: {
            const EigenBlock& c = bl[0];
            const EigenBlock& r3 = bl[2];
            Poly p = detail::chain_poly(c, 0, 0);
            auto [u, v] = detail::integral_pair(p.re(), p.im());
            Scalar xi = c.lambda.re(), zeta = c.lambda.im();
            e.factors = {{PolyPI{u * u + v * v}, zeta},
                         {PolyPI{detail::chain_poly(r3, 0, 0)}, zeta * Scalar(-2)},
                         {ExpArctanPI{v, u}, (r3.lambda - xi) * Scalar(2)}};
            if (e.factors.back().gamma.is_zero()) e.factors.pop_back();
            break;
        }
        case JacobiCase::double_divisor: {
            const EigenBlock* dbl = nullptr;
            for (auto& blk : bl)
                if (blk.divisor_degrees.front() == 2) dbl = &blk;
            Poly p1 = detail::chain_poly(*dbl, 0, 0), q1 = detail::chain_poly(*dbl, 0, 1);
            Poly p3;
            Scalar lam3;
            if (dbl->chains.size() > 1) {
                p3 = detail::chain_poly(*dbl, 1, 0);
                lam3 = dbl->lambda;
            } else {
                for (auto& blk : bl)
                    if (&blk != dbl) {
                        p3 = detail::chain_poly(blk, 0, 0);
                        lam3 = blk.lambda;
                    }
            }
            e.factors = {{PolyPI{p1}, Scalar(1)}, {PolyPI{p3}, Scalar(-1)}};
            Scalar g = lam3 - dbl->lambda;
            if (!g.is_zero()) e.factors.push_back({ExpRationalPI{q1, p1, 1}, g});
            break;
        }
        case JacobiCase::triple_divisor: {
            Poly p = detail::chain_poly(bl[0], 0, 0), q1 = detail::chain_poly(bl[0], 0, 1),
                 q2 = detail::chain_poly(bl[0], 0, 2);
            e.factors = {{PolyPI{q1 * q1 - p * q2}, Scalar(1)}, {PolyPI{p}, Scalar(-2)}};
            break;
        }
        case JacobiCase::degenerate: break;
    }
    e.time_antiderivative = Poly(sys.ring());
    detail::check_first_integral(sys, e);
    out.general = e;
    return out;
}

// Time-dependent first integrals: (p_i / p_j) e^{(lambda_j - lambda_i) t}
// for real eigen-lines, arctan(Im p / Re p) - zeta t for a complex pair,
// and p^(1)/p - t for a multiple divisor.
inline std::vector<IntegralExpr> jacobi_nonautonomous_integral(const SMatrix& a) {
    auto res = jacobi_general_integral(a);
    std::vector<IntegralExpr> out;
    if (res.kind == JacobiCase::degenerate) return out;
    const SystemDef& sys = *res.sys;
    Poly t = Poly::var(sys.ring(), sys.time());
    std::vector<const LinearPI*> real;
    for (auto& l : res.eigen_lines)
        if (l.lambda.is_real()) real.push_back(&l);
    for (size_t i = 0; i < real.size(); ++i)
        for (size_t j = i + 1; j < real.size(); ++j) {
            if (real[i]->lambda == real[j]->lambda) continue;
            IntegralExpr e;
            e.factors = {{PolyPI{real[i]->p}, Scalar(1)}, {PolyPI{real[j]->p}, Scalar(-1)}};
            e.time_antiderivative = t * (real[i]->lambda - real[j]->lambda);
            out.push_back(e);
        }
    for (auto& blk : res.eigen.blocks) {
        if (!blk.lambda.is_real() && blk.lambda.im().sign() > 0) {
            Poly p = detail::vec_poly(blk.chains[0][0]);
            auto [u, v] = detail::integral_pair(p.re(), p.im());
            IntegralExpr e;
            e.factors = {{ExpArctanPI{v, u}, Scalar(1)}};
            e.time_antiderivative = t * blk.lambda.im();
            out.push_back(e);
        }
        if (blk.lambda.is_real() && blk.chains[0].size() >= 2) {
            IntegralExpr e;
            e.factors = {{ExpRationalPI{detail::vec_poly(blk.chains[0][1]), detail::vec_poly(blk.chains[0][0]), 1},
                          Scalar(1)}};
            e.time_antiderivative = t;
            out.push_back(e);
        }
    }
    for (auto& e : out) detail::check_first_integral(sys, e);
    return out;
}

}  // namespace darboux

#endif
