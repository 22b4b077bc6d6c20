#ifndef DARBOUX_ANSATZ_HPP
#define DARBOUX_ANSATZ_HPP

#include "linalg.hpp"

#include <functional>
#include <map>

namespace darboux {

// Coefficient matching for sum c_j columns[j] == rhs over the monomials
// accepted by `keep` (all monomials by default).
struct Ansatz {
    std::vector<Monomial> rows;
    SMatrix matrix;
    Vec rhs;
};

using MonomialFilter = std::function<bool(const Monomial&)>;

inline Ansatz build_ansatz(const std::vector<Poly>& columns, const Poly& rhs, const MonomialFilter& keep = nullptr) {
    std::map<Monomial, size_t, GrlexLess> index;
    auto note = [&](const Poly& p) {
        for (auto& [m, c] : p.terms())
            if (!keep || keep(m)) index.try_emplace(m, 0);
    };
    for (auto& c : columns) note(c);
    note(rhs);
    Ansatz a;
    size_t i = 0;
    for (auto& [m, pos] : index) {
        pos = i++;
        a.rows.push_back(m);
    }
    a.matrix = SMatrix(a.rows.size(), columns.size());
    a.rhs = Vec(a.rows.size());
    for (size_t j = 0; j < columns.size(); ++j)
        for (auto& [m, c] : columns[j].terms()) {
            auto it = index.find(m);
            if (it != index.end()) a.matrix(it->second, j) = c;
        }
    for (auto& [m, c] : rhs.terms()) {
        auto it = index.find(m);
        if (it != index.end()) a.rhs[it->second] = c;
    }
    return a;
}

inline LinearSolution solve_ansatz(const std::vector<Poly>& columns, const Poly& rhs, const MonomialFilter& keep = nullptr) {
    auto a = build_ansatz(columns, rhs, keep);
    if (a.rows.empty()) {
        LinearSolution s;
        s.particular = Vec(columns.size());
        for (size_t j = 0; j < columns.size(); ++j) {
            Vec v(columns.size());
            v[j] = Scalar(1);
            s.nullspace.push_back(v);
        }
        return s;
    }
    return solve_linear(a.matrix, a.rhs);
}

inline Poly combine_basis(const Ring& r, const std::vector<Poly>& basis, const Vec& c) {
    Poly p(r);
    for (size_t j = 0; j < basis.size(); ++j)
        if (!c[j].is_zero()) p += basis[j] * c[j];
    return p;
}

inline std::vector<Poly> monomial_polys(const Ring& r, const std::vector<Monomial>& ms) {
    std::vector<Poly> out;
    for (auto& m : ms) out.push_back(Poly::monomial(r, m, Scalar(1)));
    return out;
}

// Reduced echelon basis of span(polys): pivots at the leading monomials
// (graded lex, largest first), each element primitive.
inline std::vector<Poly> echelon_basis(const Ring& r, const std::vector<Poly>& polys) {
    std::map<Monomial, size_t, GrlexLess> index;
    for (auto& p : polys)
        for (auto& [m, c] : p.terms()) index.try_emplace(m, 0);
    std::vector<Monomial> cols;
    for (auto it = index.rbegin(); it != index.rend(); ++it) {
        it->second = cols.size();
        cols.push_back(it->first);
    }
    SMatrix m(polys.size(), cols.size());
    for (size_t i = 0; i < polys.size(); ++i)
        for (auto& [mono, c] : polys[i].terms()) m(i, index[mono]) = c;
    auto red = rref(m);
    std::vector<Poly> out;
    for (size_t i = 0; i < red.pivots.size(); ++i) {
        Poly p(r);
        for (size_t j = 0; j < cols.size(); ++j) p.add_term(cols[j], red.matrix(i, j));
        out.push_back(p.primitive());
    }
    return out;
}

// Elements of span(polys) reduced modulo span(sub): an echelon basis of a
// complement whose members vanish at the pivot monomials of sub.
inline std::vector<Poly> complement_basis(const Ring& r, const std::vector<Poly>& polys, const std::vector<Poly>& sub) {
    auto sb = echelon_basis(r, sub);
    std::vector<Poly> reduced;
    for (auto p : polys) {
        for (auto& s : sb) {
            Scalar c = p.coeff(s.leading_monomial());
            if (!c.is_zero()) p -= s * (c / s.leading_coeff());
        }
        if (!p.is_zero()) reduced.push_back(p);
    }
    auto eb = echelon_basis(r, reduced);
    // re-reduce: echelon combination may reintroduce sub pivots
    std::vector<Poly> out;
    for (auto p : eb) {
        for (auto& s : sb) {
            Scalar c = p.coeff(s.leading_monomial());
            if (!c.is_zero()) p -= s * (c / s.leading_coeff());
        }
        if (!p.is_zero()) out.push_back(p.primitive());
    }
    return out;
}

}  // namespace darboux

#endif
