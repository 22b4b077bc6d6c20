#include "support.hpp"

#include <gtest/gtest.h>

using namespace darboux;
using namespace testing_support;

namespace {

SMatrix m(const std::string& s) { return parse_matrix(s); }

Poly xyp(const std::string& s) { return parse_poly(s, detail::jacobi_ring()); }

// Exponent attached to the factor whose polynomial is a scalar multiple of p.
std::optional<Scalar> exponent_of(const IntegralExpr& e, const Poly& p) {
    for (auto& f : e.factors)
        if (auto* q = std::get_if<PolyPI>(&f.pi))
            if (q->p.primitive() == p.primitive()) return f.gamma;
    return std::nullopt;
}

// u2 + i v2 = c (u1 +- i v1) for a constant c.
bool same_complex_line(const Poly& u1, const Poly& v1, const Poly& u2, const Poly& v2) {
    Poly norm = u1 * u1 + v1 * v1;
    for (long s : {1L, -1L}) {
        Poly w = v1 * Scalar(s);
        Poly re = u2 * u1 + v2 * w, im = v2 * u1 - u2 * w;
        auto a = divmod(re, norm), b = divmod(im, norm);
        if (a.remainder.is_zero() && b.remainder.is_zero() && (a.quotient.is_zero() || a.quotient.is_constant()) &&
            (b.quotient.is_zero() || b.quotient.is_constant()))
            return true;
    }
    return false;
}

}  // namespace

TEST(JacobiBuild, SystemFromMatrix) {
    auto b = jacobi_build(m("3,-1,1; -1,5,-1; 1,-1,3"));
    ASSERT_TRUE(b.sys.has_value());
    EXPECT_EQ(b.sys->rhs(0), xyp("3*x - y + 1 - x*(x - y + 3)"));
    EXPECT_EQ(b.sys->rhs(1), xyp("-x + 5*y - 1 - y*(x - y + 3)"));
    EXPECT_TRUE(jacobi_build(m("2,0,0; 0,2,0; 0,0,2")).degenerate);
}

TEST(JacobiBuild, MatrixParsingErrors) {
    EXPECT_THROW(parse_matrix("1,2; 3,4"), ParseError);
    EXPECT_THROW(parse_matrix("1,2,x; 1,2,3; 1,2,3"), ParseError);
}

TEST(JacobiLinear, EigenvectorsGiveLinearPartialIntegrals) {
    auto a = m("3,-1,1; -1,5,-1; 1,-1,3");
    auto es = eigen_3x3(a);
    ASSERT_EQ(es.blocks.size(), 3u);
    auto sys = *jacobi_build(a).sys;
    for (auto& b : es.blocks) {
        auto& v = b.chains[0][0];
        EXPECT_EQ(a * v, (Vec{b.lambda * v[0], b.lambda * v[1], b.lambda * v[2]}));
        auto pi = jacobi_linear_pi(a, b.lambda, v);
        EXPECT_EQ(verify_poly_pi(sys, pi.p).report.primary, pi.cofactor);
    }
}

TEST(JacobiGeneral, ThreeSimpleRealEigenvalues) {
    auto j = jacobi_general_integral(m("3,-1,1; -1,5,-1; 1,-1,3"));
    EXPECT_EQ(j.kind, JacobiCase::three_simple_real);
    ASSERT_TRUE(j.general);
    auto g1 = exponent_of(*j.general, xyp("x + y + 1")), g2 = exponent_of(*j.general, xyp("x - 1")),
         g3 = exponent_of(*j.general, xyp("x - 2*y + 1"));
    ASSERT_TRUE(g1 && g2 && g3);
    // (4, -3, -1) up to a common factor
    EXPECT_EQ(*g1 * Scalar(-3), *g2 * Scalar(4));
    EXPECT_EQ(*g1 * Scalar(-1), *g3 * Scalar(4));
}

TEST(JacobiGeneral, RepeatedEigenvalueWithSingularLine) {
    auto j = jacobi_general_integral(m("-1,1,1; 1,-1,1; 1,1,-1"));
    EXPECT_EQ(j.kind, JacobiCase::repeated_simple);
    ASSERT_EQ(j.singular_factors.size(), 1u);
    EXPECT_EQ(j.singular_factors[0].primitive(), xyp("x + y + 1"));
    ASSERT_TRUE(j.general);
    // a ratio of two lines through (1, 1), like (y - 1)/(x - 1)
    ASSERT_EQ(j.general->factors.size(), 2u);
    for (auto& f : j.general->factors) {
        auto& p = std::get<PolyPI>(f.pi).p;
        EXPECT_TRUE(p.eval(std::vector<Scalar>{1, 1, 0}).is_zero());
    }
    EXPECT_EQ(j.general->factors[0].gamma, -j.general->factors[1].gamma);
}

TEST(JacobiGeneral, ComplexEigenvaluesWithIrrationalExponent) {
    auto j = jacobi_general_integral(m("4,6,-2; -3,-2,1; -1,1,0"));
    EXPECT_EQ(j.kind, JacobiCase::complex);
    ASSERT_TRUE(j.general);
    bool sqrt6 = false, arctan = false;
    for (auto& f : j.general->factors) {
        sqrt6 = sqrt6 || (f.gamma.radicand() == 6 && f.gamma.a() == 0);
        if (auto* at = std::get_if<ExpArctanPI>(&f.pi)) {
            arctan = true;
            // same complex line as (4x - 5y - 3) + i sqrt(6)(2x + 1), up to a complex constant
            Poly s6 = xyp("1") * Scalar::sqrt_of(6);
            EXPECT_TRUE(same_complex_line(at->u, at->v, xyp("4*x - 5*y - 3"), s6 * xyp("2*x + 1")));
        }
    }
    EXPECT_TRUE(sqrt6);
    EXPECT_TRUE(arctan);
    EXPECT_TRUE(verify_integral_expr(*j.sys, *j.general, Target::zero()).ok);
}

TEST(JacobiGeneral, DoubleDivisor) {
    auto j = jacobi_general_integral(m("-1,1,-1; 1,-1,1; 0,-1,0"));
    EXPECT_EQ(j.kind, JacobiCase::double_divisor);
    ASSERT_TRUE(j.general);
    bool has_exp = false;
    for (auto& f : j.general->factors) has_exp = has_exp || std::holds_alternative<ExpRationalPI>(f.pi);
    EXPECT_TRUE(has_exp);
    EXPECT_EQ(render_integral(*j.general), "(-1 + x - y) * exp((-x + y)/(-1 + x - y)) * (-1 + x)^-1");
}

TEST(JacobiGeneral, DoubleDivisorWithSharedEigenvalue) {
    auto j = jacobi_general_integral(m("1,0,0; 0,1,1; 0,0,1"));
    EXPECT_EQ(j.kind, JacobiCase::double_divisor);
    EXPECT_EQ(render_integral(*j.general), "(y) * (x)^-1");
    ASSERT_EQ(j.singular_factors.size(), 1u);
    EXPECT_EQ(j.singular_factors[0].primitive(), xyp("y"));
}

TEST(JacobiGeneral, TripleDivisor) {
    auto j = jacobi_general_integral(m("1,1,1; -1,3,1; -1,1,2"));
    EXPECT_EQ(j.kind, JacobiCase::triple_divisor);
    EXPECT_EQ(render_integral(*j.general), "(1 + 2*x + 2*y + 2*x^2 + 2*x*y) * (x + y)^-2");
}

TEST(JacobiGeneral, ScalarMatrixIsDegenerate) {
    auto j = jacobi_general_integral(m("2,0,0; 0,2,0; 0,0,2"));
    EXPECT_EQ(j.kind, JacobiCase::degenerate);
    EXPECT_FALSE(j.general.has_value());
}

TEST(JacobiGeneral, IrreducibleCubicIsReported) {
    EXPECT_THROW(jacobi_general_integral(m("0,0,2; 1,0,0; 0,1,0")), IrreducibleCubic);
}

TEST(JacobiNonautonomous, EveryIntegralVerifies) {
    for (auto s : {"3,-1,1; -1,5,-1; 1,-1,3", "-1,1,1; 1,-1,1; 1,1,-1", "1,1,1; 2,1,2; 3,-3,1", "-1,1,-1; 1,-1,1; 0,-1,0",
                   "1,0,0; 0,1,1; 0,0,1", "1,1,1; -1,3,1; -1,1,2"}) {
        auto a = m(s);
        auto sys = *jacobi_build(a).sys;
        auto psi = jacobi_nonautonomous_integral(a);
        EXPECT_FALSE(psi.empty()) << s;
        for (auto& e : psi) {
            EXPECT_FALSE(e.time_antiderivative.is_zero());
            EXPECT_TRUE(verify_integral_expr(sys, e, Target::zero()).ok) << s << ": " << render_integral(e);
        }
    }
}

// Random matrices with three distinct rational eigenvalues: the general
// integral always verifies.
TEST(JacobiProperty, RandomDiagonalizableMatrices) {
    Rng rng(71);
    int ran = 0;
    while (ran < kCases) {
        SMatrix d{{rng.integer(-4, 4), 0, 0}, {0, rng.integer(-4, 4), 0}, {0, 0, rng.integer(-4, 4)}};
        SMatrix p(3, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t k = 0; k < 3; ++k) p(i, k) = Scalar(rng.integer(-2, 2));
        Scalar det = determinant(p);
        if (det.is_zero()) continue;
        // p^-1 by adjugate
        SMatrix inv(3, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t k = 0; k < 3; ++k) {
                SMatrix minor(2, 2);
                for (size_t a = 0, ra = 0; a < 3; ++a) {
                    if (a == k) continue;
                    for (size_t b = 0, cb = 0; b < 3; ++b) {
                        if (b == i) continue;
                        minor(ra, cb++) = p(a, b);
                    }
                    ++ra;
                }
                inv(i, k) = determinant(minor) * Scalar((i + k) % 2 ? -1 : 1) / det;
            }
        SMatrix a = p * d * inv;
        auto j = jacobi_general_integral(a);
        if (j.kind == JacobiCase::degenerate) continue;
        ++ran;
        if (j.general) {
            EXPECT_TRUE(verify_integral_expr(*j.sys, *j.general, Target::zero()).ok);
        }
        for (auto& e : jacobi_nonautonomous_integral(a)) EXPECT_TRUE(verify_integral_expr(*j.sys, e, Target::zero()).ok);
    }
}
