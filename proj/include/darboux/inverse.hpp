#ifndef DARBOUX_INVERSE_HPP
#define DARBOUX_INVERSE_HPP

#include "linalg.hpp"
#include "verify.hpp"

namespace darboux {

// A prescribed partial integral: polynomial g with d g = g M, or exp(w)
// with d w = M.
struct InverseRow {
    enum Kind { poly, exponential };
    Kind kind;
    Poly g;
    Poly m;
};

enum class InverseStatus { ok, jacobian_zero, not_divisible, roundtrip_failed };

inline const char* status_name(InverseStatus s) {
    switch (s) {
        case InverseStatus::ok: return "ok";
        case InverseStatus::jacobian_zero: return "jacobian-zero";
        case InverseStatus::not_divisible: return "not-divisible";
        case InverseStatus::roundtrip_failed: return "roundtrip-failed";
    }
    return "?";
}

struct InverseResult {
    InverseStatus status = InverseStatus::ok;
    std::vector<Poly> rhs;             // X_i = Delta_i / Delta
    std::optional<SystemDef> sys;      // absent when every X_i is constant
    Poly delta;
    std::vector<Poly> numerators;      // Delta_i
    std::optional<size_t> failed_index;
    Poly remainder;
    bool degree_ok = true;             // prescribed cofactors within deg_x <= d - 1
    std::string message;
    explicit operator bool() const { return status == InverseStatus::ok; }
};

namespace detail {

inline Poly derive_rhs(const Ring& r, const std::vector<Poly>& rhs, const Poly& f) {
    Poly out = f.derivative(*r->time_index());
    auto st = r->indices(Role::state);
    for (size_t i = 0; i < st.size(); ++i) out += rhs[i] * f.derivative(st[i]);
    if (!out.ring()) out = Poly(r);
    return out;
}

inline Poly in_ring(const Ring& r, const Poly& p) { return p.ring() ? p : Poly(r); }

// Solve J X = b by Cramer's rule with exact division.
inline InverseResult cramer(const Ring& r, const std::vector<Poly>& rows, const std::vector<Poly>& b) {
    auto st = r->indices(Role::state);
    size_t n = st.size();
    if (rows.size() != n) throw Error("need exactly one partial integral per state variable");
    PMatrix j(n, n);
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) j(k, i) = in_ring(r, rows[k].derivative(st[i]));
    InverseResult out;
    out.delta = in_ring(r, det_poly(j));
    if (out.delta.is_zero()) {
        out.status = InverseStatus::jacobian_zero;
        out.message = "Jacobian determinant vanishes identically; the partial integrals are functionally dependent";
        return out;
    }
    for (size_t i = 0; i < n; ++i) {
        PMatrix ji = j;
        for (size_t k = 0; k < n; ++k) ji(k, i) = in_ring(r, b[k]);
        Poly num = in_ring(r, det_poly(ji));
        out.numerators.push_back(num);
        auto dv = divmod(num, out.delta);
        if (!dv.remainder.is_zero()) {
            out.status = InverseStatus::not_divisible;
            out.failed_index = i;
            out.remainder = dv.remainder;
            out.message = "Delta does not divide Delta_" + r->vars()[st[i]].name;
            return out;
        }
        out.rhs.push_back(in_ring(r, dv.quotient));
    }
    int d = 0;
    for (auto& x : out.rhs) d = std::max(d, x.deg_x());
    if (d >= 1) out.sys = SystemDef(r, out.rhs);
    return out;
}

inline void roundtrip_fail(InverseResult& out, size_t k, const Poly& lhs, const Poly& rhs) {
    out.status = InverseStatus::roundtrip_failed;
    out.failed_index = k;
    out.remainder = lhs - rhs;
    out.message = "round trip fails for input " + std::to_string(k + 1);
}

inline void note_degree(InverseResult& out, const Poly& m) {
    int d = out.sys ? out.sys->degree() : 0;
    if (m.deg_x() > d - 1) out.degree_ok = false;
}

}  // namespace detail

// X_i = Delta_i / Delta where Delta is the Jacobian of the row functions
// and column i is replaced by g M - d_t g (poly) or M - d_t w (exponential).
inline InverseResult inverse_system(const Ring& r, const std::vector<InverseRow>& pis) {
    if (!r->time_index()) throw Error("ring needs the time variable t");
    std::vector<Poly> rows, b;
    size_t t = *r->time_index();
    for (auto& pi : pis) {
        Poly g = detail::in_ring(r, pi.g), m = detail::in_ring(r, pi.m);
        rows.push_back(g);
        b.push_back(pi.kind == InverseRow::poly ? g * m - g.derivative(t) : m - g.derivative(t));
    }
    auto out = detail::cramer(r, rows, b);
    if (!out) return out;
    for (size_t k = 0; k < pis.size(); ++k) {
        Poly g = detail::in_ring(r, pis[k].g), m = detail::in_ring(r, pis[k].m);
        Poly lhs = detail::derive_rhs(r, out.rhs, g);
        Poly want = pis[k].kind == InverseRow::poly ? g * m : m;
        if (lhs != want) {
            detail::roundtrip_fail(out, k, lhs, want);
            return out;
        }
        detail::note_degree(out, m);
    }
    return out;
}

// Rows p and q; replacement column (p M - d_t p, h q M + p^h N - d_t q).
inline InverseResult inverse_from_multiple_pi(const Ring& r, const Poly& p, const Poly& m, int h, const Poly& q,
                                              const Poly& n) {
    if (h < 1) throw Error("multiplicity exponent must be >= 1");
    if (!r->time_index()) throw Error("ring needs the time variable t");
    Poly pp = detail::in_ring(r, p), mm = detail::in_ring(r, m), qq = detail::in_ring(r, q), nn = detail::in_ring(r, n);
    if (!coprime(pp, qq)) throw Error("p and q must be coprime");
    size_t t = *r->time_index();
    Poly ph = pp.pow(h);
    auto out = detail::cramer(r, {pp, qq},
                              {pp * mm - pp.derivative(t), qq * mm * Scalar(h) + ph * nn - qq.derivative(t)});
    if (!out) return out;
    Poly lp = detail::derive_rhs(r, out.rhs, pp), lq = detail::derive_rhs(r, out.rhs, qq);
    if (lp != pp * mm) {
        detail::roundtrip_fail(out, 0, lp, pp * mm);
        return out;
    }
    if (lq != qq * mm * Scalar(h) + ph * nn) {
        detail::roundtrip_fail(out, 1, lq, qq * mm * Scalar(h) + ph * nn);
        return out;
    }
    detail::note_degree(out, mm);
    detail::note_degree(out, nn);
    if (out.sys && out.degree_ok) {
        auto v = verify_exp_rational_pi(*out.sys, qq, pp, h);
        if (!v || v.report.primary != mm || *v.report.secondary != nn) {
            detail::roundtrip_fail(out, 1, lq, qq * mm * Scalar(h) + ph * nn);
            out.message = "exp-rational re-verification disagrees: " + v.message;
        }
    }
    return out;
}

// Complex partial integral u + i v with cofactor U + i V. For u = x, v = y
// the system is x' = x U - y V, y' = x V + y U directly.
inline InverseResult inverse_from_complex_pi(const Ring& r, const Poly& u, const Poly& v, const Poly& uu,
                                             const Poly& vv) {
    if (!r->time_index()) throw Error("ring needs the time variable t");
    if (r->num_states() != 2) throw Error("complex partial integrals need two state variables");
    Poly pu = detail::in_ring(r, u), pv = detail::in_ring(r, v), cu = detail::in_ring(r, uu), cv = detail::in_ring(r, vv);
    auto st = r->indices(Role::state);
    Poly x = Poly::var(r, st[0]), y = Poly::var(r, st[1]);
    size_t t = *r->time_index();
    Poly bu = pu * cu - pv * cv, bv = pu * cv + pv * cu;
    InverseResult out;
    if (pu == x && pv == y) {
        out.delta = Poly(r, Scalar(1));
        out.rhs = {bu, bv};
        out.numerators = out.rhs;
        int d = std::max(bu.deg_x(), bv.deg_x());
        if (d >= 1) out.sys = SystemDef(r, out.rhs);
    } else {
        out = detail::cramer(r, {pu, pv}, {bu - pu.derivative(t), bv - pv.derivative(t)});
        if (!out) return out;
    }
    Poly lu = detail::derive_rhs(r, out.rhs, pu), lv = detail::derive_rhs(r, out.rhs, pv);
    if (lu != bu) {
        detail::roundtrip_fail(out, 0, lu, bu);
        return out;
    }
    if (lv != bv) {
        detail::roundtrip_fail(out, 1, lv, bv);
        return out;
    }
    detail::note_degree(out, cu);
    detail::note_degree(out, cv);
    if (out.sys && out.degree_ok && coprime(pu, pv)) {
        auto c = verify_complex_pi(*out.sys, pu, pv);
        if (!c || c.report.primary != cu || *c.report.secondary != cv) {
            detail::roundtrip_fail(out, 0, lu, bu);
            out.message = "complex re-verification disagrees: " + c.message;
        }
    }
    return out;
}

}  // namespace darboux

#endif
