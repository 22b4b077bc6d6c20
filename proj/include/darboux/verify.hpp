#ifndef DARBOUX_VERIFY_HPP
#define DARBOUX_VERIFY_HPP

#include "gcd.hpp"
#include "partial_integral.hpp"

namespace darboux {

namespace detail {

inline bool degree_within(const SystemDef& sys, const Poly& m) { return m.deg_x() <= sys.degree() - 1; }

inline Verification degree_failure(const SystemDef& sys, const Poly& m, const std::string& what) {
    auto v = Verification::failure(FailReason::degree, what + " has state degree " + std::to_string(m.deg_x()) +
                                                           ", bound is " + std::to_string(sys.degree() - 1));
    v.report.primary = m;
    return v;
}

}  // namespace detail

// d p = p M with deg_x M <= d - 1.
inline Verification verify_poly_pi(const SystemDef& sys, const Poly& p) {
    if (p.is_zero()) return Verification::failure(FailReason::zero_candidate, "zero polynomial");
    auto dv = divmod(derive(sys, p), p);
    if (!dv.remainder.is_zero())
        return Verification::failure(FailReason::non_divisible, "p does not divide d p", dv.remainder);
    Poly m = dv.quotient.ring() ? dv.quotient : Poly(sys.ring());
    if (!detail::degree_within(sys, m)) return detail::degree_failure(sys, m, "cofactor");
    return Verification::success(m);
}

// exp(p) with cofactor M = d p.
inline Verification verify_conditional_pi(const SystemDef& sys, const Poly& p) {
    if (p.is_zero()) return Verification::failure(FailReason::zero_candidate, "zero exponent");
    Poly m = derive(sys, p);
    if (!detail::degree_within(sys, m)) return detail::degree_failure(sys, m, "cofactor");
    return Verification::success(m);
}

// exp(q / p^h): primary M of p, secondary N = (d q - h q M) / p^h.
inline Verification verify_exp_rational_pi(const SystemDef& sys, const Poly& q, const Poly& p, int h) {
    if (h < 1) return Verification::failure(FailReason::degree, "multiplicity exponent must be >= 1");
    if (q.is_zero()) return Verification::failure(FailReason::zero_candidate, "zero numerator");
    if (!coprime(p, q)) return Verification::failure(FailReason::not_coprime, "q and p share a factor");
    auto base = verify_poly_pi(sys, p);
    if (!base) {
        base.message = "base p: " + base.message;
        return base;
    }
    const Poly& m = base.report.primary;
    auto dv = divmod(derive(sys, q) - q * m * Scalar(h), p.pow(h));
    if (!dv.remainder.is_zero())
        return Verification::failure(FailReason::non_divisible, "p^h does not divide d q - h q M", dv.remainder);
    Poly n = dv.quotient.ring() ? dv.quotient : Poly(sys.ring());
    if (!detail::degree_within(sys, n)) return detail::degree_failure(sys, n, "cofactor N");
    return Verification::success(m, n);
}

// exp(arctan(v / u)): primary V, secondary U.
inline Verification verify_exp_arctan_pi(const SystemDef& sys, const Poly& v, const Poly& u) {
    if (u.is_zero() || v.is_zero()) return Verification::failure(FailReason::zero_candidate, "u and v must be nonzero");
    if (!u.is_real() || !v.is_real()) return Verification::failure(FailReason::zero_candidate, "u and v must be real");
    if (!coprime(u, v)) return Verification::failure(FailReason::not_coprime, "u and v share a factor");
    Poly du = derive(sys, u), dvv = derive(sys, v);
    auto r1 = divmod(u * dvv - v * du, u * u + v * v);
    if (!r1.remainder.is_zero())
        return Verification::failure(FailReason::non_divisible, "u^2 + v^2 does not divide u dv - v du", r1.remainder);
    Poly vv = r1.quotient.ring() ? r1.quotient : Poly(sys.ring());
    auto r2 = divmod(du + v * vv, u);
    if (!r2.remainder.is_zero())
        return Verification::failure(FailReason::non_divisible, "u does not divide du + v V", r2.remainder);
    Poly uu = r2.quotient.ring() ? r2.quotient : Poly(sys.ring());
    if (!detail::degree_within(sys, vv)) return detail::degree_failure(sys, vv, "cofactor V");
    if (!detail::degree_within(sys, uu)) return detail::degree_failure(sys, uu, "cofactor U");
    return Verification::success(vv, uu);
}

// u + i v: primary U, secondary V. Both routes are computed and compared.
inline Verification verify_complex_pi(const SystemDef& sys, const Poly& u, const Poly& v) {
    if (u.is_zero() || v.is_zero()) return Verification::failure(FailReason::zero_candidate, "u and v must be nonzero");
    if (!coprime(u, v)) return Verification::failure(FailReason::not_coprime, "u and v share a factor");
    Poly du = derive(sys, u), dvv = derive(sys, v);
    Poly norm = u * u + v * v;
    // route (a): solve du = uU - vV, dv = uV + vU directly
    auto ra = divmod(u * du + v * dvv, norm);
    if (!ra.remainder.is_zero())
        return Verification::failure(FailReason::non_divisible, "u^2 + v^2 does not divide u du + v dv", ra.remainder);
    auto rb = divmod(u * dvv - v * du, norm);
    if (!rb.remainder.is_zero())
        return Verification::failure(FailReason::non_divisible, "u^2 + v^2 does not divide u dv - v du", rb.remainder);
    Poly ua = ra.quotient.ring() ? ra.quotient : Poly(sys.ring());
    Poly va = rb.quotient.ring() ? rb.quotient : Poly(sys.ring());
    if (!detail::degree_within(sys, ua)) return detail::degree_failure(sys, ua, "cofactor U");
    if (!detail::degree_within(sys, va)) return detail::degree_failure(sys, va, "cofactor V");
    // route (b): u^2 + v^2 has cofactor 2U and the arctan factor gives V
    auto pn = verify_poly_pi(sys, norm);
    auto at = verify_exp_arctan_pi(sys, v, u);
    if (!pn || !at || pn.report.primary != ua * Scalar(2) || at.report.primary != va) {
        auto f = Verification::failure(FailReason::routes_disagree, "direct and modulus/arctan routes disagree");
        f.report = {ua, va, true};
        return f;
    }
    return Verification::success(ua, va);
}

// Dispatch; the primary cofactor is the one a factor contributes to an
// integral identity (M, d p, N, V).
inline Verification verify_pi(const SystemDef& sys, const PartialIntegral& pi) {
    return std::visit(
        [&](const auto& x) -> Verification {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PolyPI>) return verify_poly_pi(sys, x.p);
            else if constexpr (std::is_same_v<T, ConditionalPI>) return verify_conditional_pi(sys, x.p);
            else if constexpr (std::is_same_v<T, ExpRationalPI>) {
                auto r = verify_exp_rational_pi(sys, x.q, x.p, x.h);
                if (r) std::swap(r.report.primary, *r.report.secondary);
                return r;
            } else if constexpr (std::is_same_v<T, ExpArctanPI>) return verify_exp_arctan_pi(sys, x.v, x.u);
            else return verify_complex_pi(sys, x.u, x.v);
        },
        pi);
}

// Re and Im of z * (u - i v)^h as a pair of real polynomials.
inline std::pair<Poly, Poly> conj_power_times(const Poly& u, const Poly& v, int h, const Poly& zr, const Poly& zi) {
    Poly re = zr, im = zi;
    for (int k = 0; k < h; ++k) {
        Poly nr = re * u + im * v;
        Poly ni = im * u - re * v;
        re = std::move(nr);
        im = std::move(ni);
    }
    return {re, im};
}

struct ComplexExpFactor {
    Verification re;  // exp(Re / (u^2+v^2)^h), cofactor K
    Verification im;  // exp(Im / (u^2+v^2)^h), cofactor L
    Poly re_numerator;
    Poly im_numerator;
    bool ok() const { return re.ok && im.ok; }
};

// exp(z / w^h) for the complex partial integral w = u + i v, split into
// two real exponential factors.
inline ComplexExpFactor complex_exp_factor(const SystemDef& sys, const Poly& u, const Poly& v, int h, const Poly& zr,
                                           const Poly& zi) {
    ComplexExpFactor out;
    auto base = verify_complex_pi(sys, u, v);
    if (!base) {
        out.re = out.im = base;
        return out;
    }
    auto [re, im] = conj_power_times(u, v, h, zr, zi);
    out.re_numerator = re;
    out.im_numerator = im;
    Poly p = u * u + v * v;
    out.re = re.is_zero() ? Verification::success(Poly(sys.ring()), Poly(sys.ring())) : verify_exp_rational_pi(sys, re, p, h);
    out.im = im.is_zero() ? Verification::success(Poly(sys.ring()), Poly(sys.ring())) : verify_exp_rational_pi(sys, im, p, h);
    return out;
}

// g = 0 is an integral manifold iff g divides d g.
inline Verification integral_manifold_check(const SystemDef& sys, const Poly& g) {
    if (g.is_zero()) return Verification::failure(FailReason::zero_candidate, "zero polynomial");
    auto dv = divmod(derive(sys, g), g);
    if (!dv.remainder.is_zero())
        return Verification::failure(FailReason::non_divisible, "g does not divide d g", dv.remainder);
    return Verification::success(dv.quotient.ring() ? dv.quotient : Poly(sys.ring()));
}

struct ExprCheck {
    bool ok = false;
    Poly lhs;       // sum of gamma * cofactor - Phi'(t)
    Poly target;
    std::string message;
    explicit operator bool() const { return ok; }
};

// sum gamma_j M_j + sum xi_k N_k - Phi'(t) == target, each component re-verified.
inline ExprCheck verify_integral_expr(const SystemDef& sys, const IntegralExpr& e, const Target& target) {
    ExprCheck out;
    out.target = target.polynomial(sys);
    out.lhs = Poly(sys.ring());
    for (auto& f : e.factors) {
        if (std::holds_alternative<ComplexPI>(f.pi)) {
            out.message = "complex factors must be split into modulus and arctan parts";
            return out;
        }
        auto v = verify_pi(sys, f.pi);
        if (!v) {
            out.message = "component " + kind_name(f.pi) + " is not a partial integral: " + v.message;
            return out;
        }
        out.lhs += v.report.primary * f.gamma;
    }
    if (!e.time_antiderivative.is_zero()) {
        if (e.time_antiderivative.deg_x() > 0 || !e.time_antiderivative.filter([&](const Monomial& m) {
                for (size_t i = 0; i < m.size(); ++i)
                    if (i != sys.time() && m[i]) return true;
                return false;
            }).is_zero()) {
            out.message = "time factor must depend on t only";
            return out;
        }
        out.lhs -= e.time_antiderivative.derivative(sys.time());
    }
    out.ok = out.lhs == out.target;
    if (!out.ok) out.message = "identity fails: " + to_string(out.lhs) + " != " + to_string(out.target);
    return out;
}

}  // namespace darboux

#endif
