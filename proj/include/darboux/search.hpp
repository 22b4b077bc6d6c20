#ifndef DARBOUX_SEARCH_HPP
#define DARBOUX_SEARCH_HPP

#include "ansatz.hpp"
#include "factor.hpp"
#include "verify.hpp"

#include <cstdlib>
#include <future>
#include <map>

namespace darboux {

class SearchUnsupported : public Error {
public:
    using Error::Error;
};

class CandidateCapExceeded : public Error {
public:
    CandidateCapExceeded(size_t count, size_t cap)
        : Error("candidate count " + std::to_string(count) + " exceeds cap " + std::to_string(cap)), count(count), cap(cap) {}
    size_t count, cap;
};

struct SearchOptions {
    size_t candidate_cap = 10000;
    unsigned jobs = 1;

    // Cap from DARBOUX_CANDIDATE_CAP when set.
    static SearchOptions from_env() {
        SearchOptions o;
        if (const char* s = std::getenv("DARBOUX_CANDIDATE_CAP")) o.candidate_cap = std::stoul(s);
        return o;
    }
};

struct DarbouxHit {
    Poly p;
    Poly cofactor;
};

namespace detail {

inline std::vector<size_t> ansatz_vars(const SystemDef& sys, bool with_params) {
    std::vector<size_t> v = sys.states();
    if (!sys.autonomous()) v.push_back(sys.time());
    if (with_params)
        for (size_t i : sys.params()) v.push_back(i);
    return v;
}

inline bool only_params(const SystemDef& sys, const Monomial& m) {
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] && (*sys.ring())[i].role != Role::parameter) return false;
    return true;
}

}  // namespace detail

// Basis of {p : deg p <= k, d p = p M} for a fixed cofactor M.
inline std::vector<Poly> search_fixed_cofactor(const SystemDef& sys, const Poly& m, int k) {
    auto monos = monomials_up_to(sys.ring(), detail::ansatz_vars(sys, true), k);
    auto basis = monomial_polys(sys.ring(), monos);
    std::vector<Poly> cols;
    for (auto& e : basis) cols.push_back(derive(sys, e) - e * m);
    auto sol = solve_ansatz(cols, Poly(sys.ring()));
    std::vector<Poly> out;
    for (auto& v : sol.nullspace) out.push_back(combine_basis(sys.ring(), basis, v));
    return echelon_basis(sys.ring(), out);
}

// Basis (modulo constants) of {p : deg p <= k, deg_x d p <= d - 1}.
inline std::vector<Poly> search_conditional(const SystemDef& sys, int k) {
    std::vector<Poly> basis;
    for (auto& mo : monomials_up_to(sys.ring(), detail::ansatz_vars(sys, true), k))
        if (!detail::only_params(sys, mo)) basis.push_back(Poly::monomial(sys.ring(), mo, Scalar(1)));
    std::vector<Poly> cols;
    for (auto& e : basis) cols.push_back(derive(sys, e));
    auto st = sys.states();
    int d = sys.degree();
    auto sol = solve_ansatz(cols, Poly(sys.ring()), [&](const Monomial& mo) {
        int s = 0;
        for (size_t i : st) s += mo[i];
        return s >= d;
    });
    std::vector<Poly> out;
    for (auto& v : sol.nullspace) out.push_back(combine_basis(sys.ring(), basis, v));
    return echelon_basis(sys.ring(), out);
}

struct ExpFactorHit {
    Poly q;
    Poly n;
};

// Pairs (q, N) with d q - h q M = p^h N, deg q <= deg_q, excluding the
// subspace where p divides q.
inline std::vector<ExpFactorHit> search_exp_factor(const SystemDef& sys, const Poly& p, const Poly& m, int h, int deg_q) {
    const Ring& r = sys.ring();
    auto vars = detail::ansatz_vars(sys, true);
    auto qmon = monomial_polys(r, monomials_up_to(r, vars, deg_q));
    int extra = 0;
    for (auto& x : sys.rhs()) extra = std::max(extra, x.total_degree());
    std::vector<Poly> nmon;
    auto st = sys.states();
    for (auto& mo : monomials_up_to(r, vars, std::max(sys.degree() - 1, deg_q + extra))) {
        int s = 0;
        for (size_t i : st) s += mo[i];
        if (s <= sys.degree() - 1) nmon.push_back(Poly::monomial(r, mo, Scalar(1)));
    }
    Poly ph = p.pow(h);
    std::vector<Poly> cols;
    for (auto& e : qmon) cols.push_back(derive(sys, e) - e * m * Scalar(h));
    for (auto& e : nmon) cols.push_back(-(ph * e));
    auto sol = solve_ansatz(cols, Poly(r));

    size_t nq = qmon.size();
    auto split = [&](const Vec& v) {
        Poly q(r), n(r);
        for (size_t j = 0; j < nq; ++j)
            if (!v[j].is_zero()) q += qmon[j] * v[j];
        for (size_t j = 0; j < nmon.size(); ++j)
            if (!v[nq + j].is_zero()) n += nmon[j] * v[nq + j];
        return ExpFactorHit{q, n};
    };

    // trivial subspace: q = p s
    std::vector<Vec> trivial;
    int ds = deg_q - p.total_degree();
    if (ds >= 0) {
        auto smon = monomial_polys(r, monomials_up_to(r, vars, ds));
        std::vector<Poly> tcols;
        for (auto& e : smon) tcols.push_back(derive(sys, p * e) - p * e * m * Scalar(h));
        for (auto& e : nmon) tcols.push_back(-(ph * e));
        auto ts = solve_ansatz(tcols, Poly(r));
        for (auto& v : ts.nullspace) {
            Poly q(r);
            for (size_t j = 0; j < smon.size(); ++j) q += p * smon[j] * v[j];
            Vec full(cols.size());
            for (size_t j = 0; j < nq; ++j) full[j] = q.coeff(qmon[j].leading_monomial());
            for (size_t j = 0; j < nmon.size(); ++j) full[nq + j] = v[smon.size() + j];
            trivial.push_back(full);
        }
    }
    // reduce the solution space modulo the trivial subspace
    size_t nc = cols.size();
    SMatrix tm(trivial.size(), nc);
    for (size_t i = 0; i < trivial.size(); ++i)
        for (size_t j = 0; j < nc; ++j) tm(i, j) = trivial[i][j];
    auto tr = rref(tm);
    std::vector<Vec> reduced;
    for (auto v : sol.nullspace) {
        for (size_t i = 0; i < tr.pivots.size(); ++i) {
            Scalar c = v[tr.pivots[i]];
            if (c.is_zero()) continue;
            for (size_t j = 0; j < nc; ++j) v[j] -= c * tr.matrix(i, j);
        }
        if (!is_zero_vec(v)) reduced.push_back(v);
    }
    SMatrix rm(reduced.size(), nc);
    for (size_t i = 0; i < reduced.size(); ++i)
        for (size_t j = 0; j < nc; ++j) rm(i, j) = reduced[i][j];
    auto rr = rref(rm);
    std::vector<ExpFactorHit> out;
    for (size_t i = 0; i < rr.pivots.size(); ++i) {
        Vec v(nc);
        for (size_t j = 0; j < nc; ++j) v[j] = rr.matrix(i, j);
        auto hit = split(v);
        if (hit.q.is_zero()) continue;
        Poly pq = hit.q.primitive();
        Scalar f = pq.leading_coeff() / hit.q.leading_coeff();
        hit.q = pq;
        hit.n = hit.n * f;
        if (verify_exp_rational_pi(sys, hit.q, p, h)) out.push_back(hit);
    }
    return out;
}

struct MultiplicityReport {
    int kappa = 1;
    std::vector<std::pair<int, std::vector<ExpFactorHit>>> levels;  // (h, basis)
};

// Exponential factors exp(q / p^h), h = 1..h_max; kappa = 1 + sum of dims.
inline MultiplicityReport multiplicity(const SystemDef& sys, const Poly& p, const Poly& m, int h_max, int deg_q) {
    MultiplicityReport rep;
    for (int h = 1; h <= h_max; ++h) {
        auto hits = search_exp_factor(sys, p, m, h, deg_q);
        rep.kappa += static_cast<int>(hits.size());
        rep.levels.push_back({h, std::move(hits)});
    }
    return rep;
}

namespace detail {

struct Family {
    Poly cofactor;
    std::vector<Poly> basis;
};

inline Vec coords(const Poly& p, const std::map<Monomial, size_t, GrlexLess>& index) {
    Vec v(index.size());
    for (auto& [m, c] : p.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw Error("polynomial outside the coordinate space");
        v[it->second] = c;
    }
    return v;
}

inline SMatrix columns_matrix(const std::vector<Vec>& cols, size_t rows) {
    SMatrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

// Rows selecting an invertible square block of a full-column-rank matrix,
// plus a basis of its left nullspace.
inline std::pair<std::vector<size_t>, SMatrix> row_split(const SMatrix& b) {
    auto rr = rref(b.transpose());
    auto ln = nullspace(b.transpose());
    SMatrix c(ln.size(), b.rows());
    for (size_t i = 0; i < ln.size(); ++i)
        for (size_t j = 0; j < b.rows(); ++j) c(i, j) = ln[i][j];
    return {rr.pivots, c};
}

inline SMatrix select_rows(const SMatrix& m, const std::vector<size_t>& rows) {
    SMatrix s(rows.size(), m.cols());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) s(i, j) = m(rows[i], j);
    return s;
}

inline SMatrix solve_square(const SMatrix& a, const SMatrix& b) {
    SMatrix x(a.cols(), b.cols());
    for (size_t j = 0; j < b.cols(); ++j) {
        Vec col(b.rows());
        for (size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        auto s = solve_linear(a, col);
        if (!s.particular || !s.nullspace.empty()) throw Error("singular block in row selection");
        for (size_t i = 0; i < a.cols(); ++i) x(i, j) = (*s.particular)[i];
    }
    return x;
}

inline SMatrix basis_matrix(const std::vector<Vec>& vs, size_t n) { return columns_matrix(vs, n); }

// Solve Lambda p = m p for p in span(w) and rational m, where Lambda maps
// span(w) into polynomials over the coordinate index.
inline std::vector<Family> eigen_families(const SystemDef& sys, const std::vector<Poly>& w, const Poly& m_top,
                                          const std::map<Monomial, size_t, GrlexLess>& index) {
    size_t nrow = index.size(), k = w.size();
    std::vector<Vec> acol, bcol;
    for (auto& x : w) {
        acol.push_back(coords(derive(sys, x) - x * m_top, index));
        bcol.push_back(coords(x, index));
    }
    SMatrix a = columns_matrix(acol, nrow), b = columns_matrix(bcol, nrow);
    auto [rows, c] = row_split(b);
    SMatrix phi = solve_square(select_rows(b, rows), select_rows(a, rows));
    // U0 = ker(C A)
    std::vector<Vec> z;
    if (c.rows() == 0) {
        for (size_t j = 0; j < k; ++j) {
            Vec e(k);
            e[j] = Scalar(1);
            z.push_back(e);
        }
    } else {
        z = nullspace(c * a);
    }
    // shrink to the largest phi-invariant subspace
    while (!z.empty()) {
        SMatrix zm = basis_matrix(z, k);
        auto ln = nullspace(zm.transpose());
        if (ln.empty()) break;
        SMatrix cz(ln.size(), k);
        for (size_t i = 0; i < ln.size(); ++i)
            for (size_t j = 0; j < k; ++j) cz(i, j) = ln[i][j];
        auto ker = nullspace(cz * phi * zm);
        if (ker.size() == z.size()) break;
        std::vector<Vec> nz;
        for (auto& y : ker) nz.push_back(zm * y);
        z = nz;
    }
    std::vector<Family> out;
    if (z.empty()) return out;
    SMatrix zm = basis_matrix(z, k);
    auto [zrows, zc] = row_split(zm);
    (void)zc;
    SMatrix g = solve_square(select_rows(zm, zrows), select_rows(phi * zm, zrows));
    auto cp = char_poly(g);
    UPoly u;
    for (auto& s : cp) u.push_back(s.rational());
    for (auto& f : factor_upoly(u).factors) {
        if (upoly::deg(f.poly) != 1) continue;
        Rational mval = -f.poly[0] / f.poly[1];
        SMatrix gm = g;
        for (size_t i = 0; i < gm.rows(); ++i) gm(i, i) -= Scalar(mval);
        Family fam;
        fam.cofactor = m_top + Poly(sys.ring(), Scalar(mval));
        for (auto& y : nullspace(gm)) fam.basis.push_back(combine_basis(sys.ring(), w, zm * y));
        out.push_back(fam);
    }
    return out;
}

// Kernel of Lambda on span(w) (cofactor fully known).
inline std::vector<Family> kernel_family(const SystemDef& sys, const std::vector<Poly>& w, const Poly& m) {
    std::vector<Poly> cols;
    for (auto& x : w) cols.push_back(derive(sys, x) - x * m);
    auto sol = solve_ansatz(cols, Poly(sys.ring()));
    Family fam{m, {}};
    for (auto& v : sol.nullspace) fam.basis.push_back(combine_basis(sys.ring(), w, v));
    if (fam.basis.empty()) return {};
    return {fam};
}

// Degree-graded solve with a known top part p_k and top cofactor.
inline std::vector<Family> graded_family(const SystemDef& sys, const Poly& pk, const Poly& m_top, int k) {
    const Ring& r = sys.ring();
    auto st = sys.states();
    int d = sys.degree();
    Poly p = pk, m = m_top;
    auto comp = [&](const Poly& f, int deg) { return f.homogeneous_part(st, deg); };
    auto homog = [&](int deg) {
        std::vector<Poly> out;
        if (deg < 0) return out;
        for (auto& mo : monomials_up_to(r, st, deg))
            if (mono_degree(mo) == deg) out.push_back(Poly::monomial(r, mo, Scalar(1)));
        return out;
    };
    for (int j = 1; j <= k + d - 1; ++j) {
        int level = k + d - 1 - j;
        auto pb = homog(k - j), mb = homog(d - 1 - j);
        std::vector<Poly> cols;
        for (auto& e : pb) cols.push_back(comp(derive(sys, e) - e * m, level));
        for (auto& e : mb) cols.push_back(comp(-(p * e), level));
        Poly rhs = -comp(derive(sys, p) - p * m, level);
        if (cols.empty()) {
            if (!rhs.is_zero()) return {};
            continue;
        }
        auto sol = solve_ansatz(cols, rhs);
        if (!sol.particular) return {};
        if (!sol.nullspace.empty())
            throw SearchUnsupported("degenerate graded level; use search_fixed_cofactor with an explicit cofactor");
        for (size_t i = 0; i < pb.size(); ++i) p += pb[i] * (*sol.particular)[i];
        for (size_t i = 0; i < mb.size(); ++i) m += mb[i] * (*sol.particular)[pb.size() + i];
    }
    if (derive(sys, p) != p * m) return {};
    return {Family{m, {p}}};
}

inline std::vector<std::vector<int>> multisets(const std::vector<int>& degrees, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(degrees.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (i == degrees.size()) return;
        for (int e = 0; e * degrees[i] <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e * degrees[i]);
        }
        cur[i] = 0;
    };
    rec(0, k);
    return out;
}

inline std::vector<DarbouxHit> search_planar_raw(const SystemDef& sys, int k, const SearchOptions& opt,
                                                 std::map<int, std::vector<DarbouxHit>>& memo);

}  // namespace detail

// Darboux polynomials of degree exactly k for a planar autonomous system,
// excluding products of lower-degree ones. Families are returned as bases.
inline std::vector<DarbouxHit> search_planar(const SystemDef& sys, int k, const SearchOptions& opt = SearchOptions()) {
    std::map<int, std::vector<DarbouxHit>> memo;
    return detail::search_planar_raw(sys, k, opt, memo);
}

namespace detail {

inline std::vector<DarbouxHit> search_planar_raw(const SystemDef& sys, int k, const SearchOptions& opt,
                                                 std::map<int, std::vector<DarbouxHit>>& memo) {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    if (sys.n() != 2) throw SearchUnsupported("search_planar needs a planar system");
    if (!sys.autonomous()) throw SearchUnsupported("search_planar needs an autonomous system");
    if (!sys.params().empty()) throw SearchUnsupported("search_planar needs numeric coefficients");
    if (k < 1) throw Error("degree must be at least 1");
    const Ring& r = sys.ring();
    auto st = sys.states();
    size_t ix = st[0], iy = st[1];
    int d = sys.degree();
    Poly x = Poly::var(r, ix), y = Poly::var(r, iy);
    Poly pd = sys.rhs(0).homogeneous_part(st, d), qd = sys.rhs(1).homogeneous_part(st, d);
    Poly rr = x * qd - y * pd;
    bool radial = rr.is_zero();

    std::vector<Poly> low;  // monomials of degree <= k-1
    for (auto& mo : monomials_up_to(r, st, k - 1)) low.push_back(Poly::monomial(r, mo, Scalar(1)));
    std::map<Monomial, size_t, GrlexLess> index;
    for (auto& mo : monomials_up_to(r, st, k)) index.emplace(mo, index.size());
    int unknown_m = d * (d - 1) / 2;  // coefficients of M below the top degree

    std::vector<Family> fams;
    auto solve_top = [&](const Poly& pk, const Poly& m_top, bool top_free) -> std::vector<Family> {
        std::vector<Poly> w;
        if (top_free) {
            for (auto& mo : monomials_up_to(r, st, k)) w.push_back(Poly::monomial(r, mo, Scalar(1)));
        } else {
            w.push_back(pk);
            w.insert(w.end(), low.begin(), low.end());
        }
        if (unknown_m == 0) return kernel_family(sys, w, m_top);
        if (unknown_m == 1) return eigen_families(sys, w, m_top, index);
        if (top_free) throw SearchUnsupported("radial top part with system degree >= 3");
        return graded_family(sys, pk, m_top, k);
    };

    if (radial) {
        Poly s = exact_div(pd, x);
        fams = solve_top(Poly(r), s * Scalar(k), true);
    } else {
        // irreducible factors of the homogeneous R via R(x, 1)
        Poly r1 = rr.substitute(iy, Poly(r, Scalar(1)));
        std::vector<Poly> factors;
        std::vector<int> degrees;
        int found = 0;
        if (!r1.is_constant()) {
            auto fac = factor_univariate(r1);
            for (auto& f : fac.factors) {
                int df = f.factor.degree_in(ix);
                Poly h(r);
                for (auto& [mo, c] : f.factor.terms()) {
                    Monomial hm(mo);
                    hm[iy] = df - mo[ix];
                    h.add_term(hm, c);
                }
                factors.push_back(h);
                degrees.push_back(df);
                found += df * f.multiplicity;
            }
        }
        if (found < d + 1) {
            factors.push_back(y);
            degrees.push_back(1);
        }
        auto combos = multisets(degrees, k);
        if (combos.size() > opt.candidate_cap) throw CandidateCapExceeded(combos.size(), opt.candidate_cap);
        auto run = [&](const std::vector<int>& e) {
            Poly pk(r, Scalar(1));
            for (size_t i = 0; i < e.size(); ++i) pk *= factors[i].pow(e[i]);
            auto top = try_exact_div(pd * pk.derivative(ix) + qd * pk.derivative(iy), pk);
            if (!top) return std::vector<Family>{};
            return solve_top(pk, top->ring() ? *top : Poly(r), false);
        };
        std::vector<std::vector<Family>> per(combos.size());
        if (opt.jobs > 1 && combos.size() > 1) {
            std::vector<std::future<std::vector<Family>>> futs;
            for (size_t i = 0; i < combos.size(); ++i)
                futs.push_back(std::async(std::launch::async, run, combos[i]));
            for (size_t i = 0; i < combos.size(); ++i) per[i] = futs[i].get();
        } else {
            for (size_t i = 0; i < combos.size(); ++i) per[i] = run(combos[i]);
        }
        for (auto& v : per) fams.insert(fams.end(), v.begin(), v.end());
    }

    // merge families by cofactor
    std::vector<Family> merged;
    for (auto& f : fams) {
        bool done = false;
        for (auto& g : merged)
            if (g.cofactor == f.cofactor) {
                g.basis.insert(g.basis.end(), f.basis.begin(), f.basis.end());
                done = true;
            }
        if (!done) merged.push_back(f);
    }

    // products of lower-degree results, grouped by cofactor
    std::vector<DarbouxHit> lower;
    std::vector<int> ldeg;
    for (int j = 1; j < k; ++j)
        for (auto& h : search_planar_raw(sys, j, opt, memo)) {
            lower.push_back(h);
            ldeg.push_back(j);
        }
    std::vector<DarbouxHit> products;
    for (auto& e : multisets(ldeg, k)) {
        Poly p(r, Scalar(1)), m(r);
        for (size_t i = 0; i < e.size(); ++i) {
            p *= lower[i].p.pow(e[i]);
            m += lower[i].cofactor * Scalar(e[i]);
        }
        products.push_back({p, m});
    }

    std::vector<DarbouxHit> out;
    for (auto& f : merged) {
        std::vector<Poly> sub;
        for (auto& pr : products)
            if (pr.cofactor == f.cofactor) sub.push_back(pr.p);
        for (auto& p : complement_basis(r, f.basis, sub)) {
            if (p.deg_x() != k) continue;
            auto v = verify_poly_pi(sys, p);
            if (!v) throw Error("internal: search result failed re-verification");
            out.push_back({p, v.report.primary});
        }
    }
    memo[k] = out;
    return out;
}

}  // namespace detail

}  // namespace darboux

#endif
