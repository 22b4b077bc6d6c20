#ifndef DARBOUX_EIGEN_HPP
#define DARBOUX_EIGEN_HPP

#include "factor.hpp"
#include "linalg.hpp"

#include <algorithm>

namespace darboux {

// One eigenvalue with its elementary-divisor degrees and Jordan chains.
// chains[k] = {theta, theta1, theta2, ...} with (A - lambda E) theta = 0,
// (A - lambda E) theta1 = theta, (A - lambda E) theta2 = 2 theta1.
struct EigenBlock {
    Scalar lambda;
    int algebraic = 0;
    std::vector<int> divisor_degrees;
    std::vector<std::vector<Vec>> chains;
};

struct EigenStructure {
    std::vector<EigenBlock> blocks;
    bool has_complex() const {
        for (auto& b : blocks)
            if (!b.lambda.is_real()) return true;
        return false;
    }
};

class IrreducibleCubic : public Error {
public:
    IrreducibleCubic() : Error("characteristic cubic is irreducible over Q") {}
};

namespace detail {

inline SMatrix shifted(const SMatrix& a, const Scalar& l) {
    SMatrix n = a;
    for (size_t i = 0; i < n.rows(); ++i) n(i, i) -= l;
    return n;
}

inline Vec normalized_vector(Vec v) { return clear_denominators(normalize_first(std::move(v))); }

inline bool parallel(const Vec& a, const Vec& b) {
    SMatrix m(2, a.size());
    for (size_t j = 0; j < a.size(); ++j) {
        m(0, j) = a[j];
        m(1, j) = b[j];
    }
    return rank(m) < 2;
}

inline Vec solve_particular(const SMatrix& n, const Vec& rhs) {
    auto s = solve_linear(n, rhs);
    if (!s.particular) throw Error("Jordan chain equation has no solution");
    return *s.particular;
}

inline EigenBlock eigen_block(const SMatrix& a, const Scalar& lambda, int alg) {
    EigenBlock blk;
    blk.lambda = lambda;
    blk.algebraic = alg;
    size_t n = a.rows();
    SMatrix nm = shifted(a, lambda);
    std::vector<SMatrix> pw{identity(n), nm};
    std::vector<size_t> rk{n, rank(nm)};
    for (int j = 2; j <= alg; ++j) {
        pw.push_back(pw.back() * nm);
        rk.push_back(rank(pw.back()));
    }
    // blocks of size >= j: rk[j-1] - rk[j]
    for (int j = alg; j >= 1; --j) {
        size_t ge = rk[j - 1] - rk[j];
        size_t gt = j < alg ? rk[j] - rk[j + 1] : 0;
        for (size_t k = 0; k < ge - gt; ++k) blk.divisor_degrees.push_back(j);
    }
    int top = blk.divisor_degrees.empty() ? 0 : blk.divisor_degrees.front();
    if (top <= 1) {
        for (auto& v : nullspace(nm)) blk.chains.push_back({normalized_vector(v)});
        return blk;
    }
    Vec theta;
    for (auto& w : nullspace(pw[top])) {
        Vec img = pw[top - 1] * w;
        if (!is_zero_vec(img)) {
            theta = normalized_vector(img);
            break;
        }
    }
    std::vector<Vec> chain{theta};
    for (int j = 1; j < top; ++j) {
        Vec rhs = chain.back();
        for (auto& s : rhs) s *= Scalar(j);
        chain.push_back(solve_particular(nm, rhs));
    }
    blk.chains.push_back(chain);
    for (size_t k = 1; k < blk.divisor_degrees.size(); ++k) {
        for (auto& v : nullspace(nm)) {
            bool fresh = true;
            for (auto& c : blk.chains)
                if (parallel(c.front(), v)) fresh = false;
            if (fresh) {
                blk.chains.push_back({normalized_vector(v)});
                break;
            }
        }
    }
    return blk;
}

}  // namespace detail

// Eigen-structure of a rational 3x3 matrix whose characteristic cubic has a
// rational root; a residual quadratic is solved in Q(sqrt m).
inline EigenStructure eigen_3x3(const SMatrix& a) {
    if (a.rows() != 3 || a.cols() != 3) throw Error("eigen_3x3 needs a 3x3 matrix");
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (!a(i, j).is_rational()) throw Error("eigen_3x3 needs rational entries");
    auto cp = char_poly(a);
    UPoly u;
    for (auto& c : cp) u.push_back(c.rational());
    auto fac = factor_upoly(u);
    std::vector<std::pair<Scalar, int>> roots;
    for (auto& f : fac.factors) {
        int d = upoly::deg(f.poly);
        if (d == 3) throw IrreducibleCubic();
        if (d == 1) {
            roots.push_back({Scalar(-f.poly[0] / f.poly[1]), f.multiplicity});
        } else {
            const Rational &c = f.poly[0], &b = f.poly[1], &aa = f.poly[2];
            Scalar root = Scalar::sqrt_of(b * b - 4 * aa * c);
            Scalar base(-b / (2 * aa));
            Scalar half(Rational(1) / (2 * aa));
            Scalar r1 = base + half * root, r2 = base - half * root;
            if (!r1.is_real() && r1.b() < 0) std::swap(r1, r2);
            roots.push_back({r1, f.multiplicity});
            roots.push_back({r2, f.multiplicity});
        }
    }
    std::stable_sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
        bool rx = x.first.is_real(), ry = y.first.is_real();
        if (rx != ry) return !rx;  // complex pair first
        if (!rx) return false;
        return (x.first - y.first).sign() < 0;
    });
    EigenStructure out;
    for (auto& [l, m] : roots) out.blocks.push_back(detail::eigen_block(a, l, m));
    return out;
}

}  // namespace darboux

#endif
