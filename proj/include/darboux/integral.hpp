#ifndef DARBOUX_INTEGRAL_HPP
#define DARBOUX_INTEGRAL_HPP

#include "ansatz.hpp"
#include "verify.hpp"

namespace darboux {

class CombineError : public Error {
public:
    enum Kind { inconsistent, unbounded_residual };
    CombineError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
    Kind kind;
};

struct CombineResult {
    Vec gamma;
    IntegralExpr expr;
};

// Complex u + i v enters integrals as (u^2 + v^2) and exp(arctan(v/u)).
inline std::pair<PartialIntegral, PartialIntegral> split_complex(const ComplexPI& c) {
    return {PolyPI{c.u * c.u + c.v * c.v}, ExpArctanPI{c.v, c.u}};
}

namespace detail {

inline bool time_only(const SystemDef& sys, const Monomial& m) {
    for (size_t i = 0; i < m.size(); ++i)
        if (i != sys.time() && m[i]) return false;
    return true;
}

}  // namespace detail

// Solve sum gamma_j M_j = target by coefficient matching. With time
// completion, monomials in t alone are left to a factor exp(-Phi(t)).
inline std::vector<CombineResult> combine(const SystemDef& sys, const std::vector<PartialIntegral>& pis,
                                          const Target& target, bool allow_time_completion = false) {
    std::vector<Poly> cof;
    for (auto& pi : pis) {
        if (std::holds_alternative<ComplexPI>(pi))
            throw Error("split complex partial integrals with split_complex before combining");
        auto v = verify_pi(sys, pi);
        if (!v) throw Error(kind_name(pi) + " candidate is not a partial integral: " + v.message);
        cof.push_back(v.report.primary);
    }
    Poly t = target.polynomial(sys);
    MonomialFilter keep = nullptr;
    if (allow_time_completion) keep = [&](const Monomial& m) { return !detail::time_only(sys, m); };
    auto a = build_ansatz(cof, t, keep);
    auto sol = a.rows.empty() ? solve_ansatz(cof, t, keep) : solve_linear(a.matrix, a.rhs);
    if (!sol.particular) {
        if (!allow_time_completion) {
            auto loose = build_ansatz(cof, t, [&](const Monomial& m) { return !detail::time_only(sys, m); });
            bool ok = loose.rows.empty() || solve_linear(loose.matrix, loose.rhs).particular.has_value();
            if (ok)
                throw CombineError(CombineError::unbounded_residual,
                                   "residual depends on t alone; enable time completion");
        }
        throw CombineError(CombineError::inconsistent, "no exponents satisfy the target identity");
    }
    std::vector<Vec> null;
    if (a.rows.empty()) {
        for (size_t j = 0; j < pis.size(); ++j) {
            Vec e(pis.size());
            e[j] = Scalar(1);
            null.push_back(e);
        }
    } else {
        null = nullspace_raw(a.matrix);
    }
    for (auto& v : null) v = clear_denominators(v);

    std::vector<Vec> gammas;
    if (t.is_zero()) {
        gammas = null;
    } else {
        gammas.push_back(*sol.particular);
        for (auto& n : null) {
            Vec g = *sol.particular;
            for (size_t j = 0; j < g.size(); ++j) g[j] += n[j];
            gammas.push_back(g);
        }
    }

    std::vector<CombineResult> out;
    for (auto& g : gammas) {
        if (is_zero_vec(g)) continue;
        IntegralExpr e;
        e.kind = target.kind;
        e.rho = target.rho;
        Poly residual = -t;
        for (size_t j = 0; j < pis.size(); ++j) {
            if (g[j].is_zero()) continue;
            e.factors.push_back({pis[j], g[j]});
            residual += cof[j] * g[j];
        }
        if (!residual.is_zero()) {
            if (!residual.filter([&](const Monomial& m) { return !detail::time_only(sys, m); }).is_zero())
                throw Error("internal: residual is not a function of t");
            e.time_antiderivative = residual.integral(sys.time());
        } else {
            e.time_antiderivative = Poly(sys.ring());
        }
        auto chk = verify_integral_expr(sys, e, target);
        if (!chk) throw Error("internal: combined integral failed verification: " + chk.message);
        out.push_back({g, e});
    }
    // only the trivial gamma, but exponents exist once t-only terms are freed
    if (out.empty() && !allow_time_completion) {
        auto loose = build_ansatz(cof, t, [&](const Monomial& m) { return !detail::time_only(sys, m); });
        if (loose.rows.empty() || !nullspace_raw(loose.matrix).empty())
            throw CombineError(CombineError::unbounded_residual, "residual depends on t alone; enable time completion");
    }
    return out;
}

// Number of partial integrals that guarantees a first integral: C(n+d-1, n).
inline Integer darboux_capacity(unsigned long n, unsigned long d) {
    if (n < 1 || d < 1) throw Error("capacity needs n, d >= 1");
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n + d - 1, n);
    return c;
}

struct RiccatiReport {
    std::optional<Poly> delta;            // det of the t-dependent coefficient matrix
    std::optional<bool> ratios_constant;  // Cramer ratios Delta_j / Delta free of t
    std::vector<CombineResult> results;
    std::string diagnostic;
};

// Scalar equation x' = sum a_i(t) x^(n-i): combine partial integrals whose
// cofactors are polynomial in x with t-dependent coefficients.
inline RiccatiReport riccati_abel_combine(const SystemDef& sys, const std::vector<PartialIntegral>& pis,
                                          const Target& target) {
    if (sys.n() != 1) throw Error("riccati_abel_combine needs a single state variable");
    RiccatiReport rep;
    size_t ix = sys.states()[0];
    std::vector<Poly> cof;
    for (auto& pi : pis) {
        auto v = verify_pi(sys, pi);
        if (!v) {
            rep.diagnostic = kind_name(pi) + " candidate rejected: " + v.message;
            return rep;
        }
        cof.push_back(v.report.primary);
    }
    Poly t = target.polynomial(sys);
    auto coeff_in_x = [&](const Poly& p, int s) {
        Poly c(sys.ring());
        for (auto& [m, v] : p.terms())
            if (m[ix] == s) {
                Monomial r(m);
                r[ix] = 0;
                c.add_term(r, v);
            }
        return c;
    };
    std::vector<int> rows;
    auto note = [&](const Poly& p) {
        for (auto& [m, v] : p.terms())
            if (std::find(rows.begin(), rows.end(), m[ix]) == rows.end()) rows.push_back(m[ix]);
    };
    for (auto& c : cof) note(c);
    note(t);
    std::sort(rows.rbegin(), rows.rend());
    if (rows.size() == cof.size() && !cof.empty()) {
        PMatrix a(rows.size(), cof.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cof.size(); ++j) a(i, j) = coeff_in_x(cof[j], rows[i]);
        Poly delta = det_poly(a);
        rep.delta = delta;
        if (!delta.is_zero() && !t.is_zero()) {
            bool constant = true;
            for (size_t j = 0; j < cof.size(); ++j) {
                PMatrix aj = a;
                for (size_t i = 0; i < rows.size(); ++i) aj(i, j) = coeff_in_x(t, rows[i]);
                auto q = try_exact_div(det_poly(aj), delta);
                if (!q || !q->is_constant()) constant = false;
            }
            rep.ratios_constant = constant;
        }
    }
    try {
        rep.results = combine(sys, pis, target, true);
        if (rep.results.empty()) rep.diagnostic = "only the trivial combination exists";
    } catch (const CombineError& e) {
        rep.diagnostic = e.what();
    }
    return rep;
}

namespace detail {

inline std::string exponent_str(const Scalar& g) {
    if (g.is_rational() && g.a().get_den() == 1) return g.str();
    return "(" + g.str() + ")";
}

inline std::string times_gamma(const Scalar& g, const std::string& body) {
    if (g.is_one()) return body;
    if (g == Scalar(-1)) return "-" + body;
    std::string gs = g.is_rational() || g.is_atomic() ? g.str() : "(" + g.str() + ")";
    return gs + "*" + body;
}

inline std::string paren(const Poly& p) { return "(" + to_string(p, TermOrder::ascending) + ")"; }

inline std::string render_factor(const Factor& f) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PolyPI>) {
                std::string b = paren(x.p);
                return f.gamma.is_one() ? b : b + "^" + exponent_str(f.gamma);
            } else if constexpr (std::is_same_v<T, ConditionalPI>) {
                return "exp(" + times_gamma(f.gamma, paren(x.p)) + ")";
            } else if constexpr (std::is_same_v<T, ExpRationalPI>) {
                std::string den = paren(x.p);
                if (x.h > 1) den += "^" + std::to_string(x.h);
                return "exp(" + times_gamma(f.gamma, paren(x.q) + "/" + den) + ")";
            } else if constexpr (std::is_same_v<T, ExpArctanPI>) {
                return "exp(" + times_gamma(f.gamma, "atan(" + paren(x.v) + "/" + paren(x.u) + ")") + ")";
            } else {
                return "(" + to_string(x.u, TermOrder::ascending) + " + i*(" + to_string(x.v, TermOrder::ascending) +
                       "))^" + exponent_str(f.gamma);
            }
        },
        f.pi);
}

inline bool positive_exponent(const Scalar& g) { return !g.is_real() || g.sign() > 0; }

}  // namespace detail

// Text form: positive-exponent factors first, then the rest, then the time
// factor; "1" when empty.
inline std::string render_integral(const IntegralExpr& e) {
    std::vector<std::string> parts;
    for (int pass = 0; pass < 2; ++pass)
        for (auto& f : e.factors)
            if (detail::positive_exponent(f.gamma) == (pass == 0)) parts.push_back(detail::render_factor(f));
    if (!e.time_antiderivative.is_zero())
        parts.push_back("exp(" + to_string(-e.time_antiderivative, TermOrder::ascending) + ")");
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += " * " + parts[i];
    return out;
}

}  // namespace darboux

#endif
