#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace darboux;
using namespace testing_support;

namespace {

SystemDef fixture(const std::string& id) { return parse_system(find_fixture(id).system); }

IntegralExpr focus_integral(const SystemDef& sys) {
    return {{{PolyPI{sys.parse("x^2 + y^2")}, Scalar(1)}, {ExpArctanPI{sys.parse("y"), sys.parse("x")}, Scalar(-2)}},
            Poly(sys.ring())};
}

}  // namespace

TEST(Rk4, LinearDecayMatchesExponential) {
    auto sys = parse_system("vars x y\nsystem\nx' = x\ny' = -2*y\n");
    auto tr = integrate_rk4(sys, {1.0, 1.0}, 0, 1, 1e-2);
    EXPECT_EQ(tr.times.size(), 101u);
    EXPECT_NEAR(tr.states.back()[0], std::exp(1.0), 1e-9);
    EXPECT_NEAR(tr.states.back()[1], std::exp(-2.0), 1e-9);
}

TEST(Rk4, FourthOrderConvergence) {
    auto sys = parse_system("vars x y\nsystem\nx' = x\ny' = -2*y\n");
    auto err = [&](double h) { return std::abs(integrate_rk4(sys, {1.0, 1.0}, 0, 1, h).states.back()[0] - std::exp(1.0)); };
    double ratio = err(0.1) / err(0.05);
    EXPECT_GT(ratio, 14.0);
    EXPECT_LT(ratio, 18.0);
}

TEST(Rk4, BlowUpIsReported) {
    auto sys = parse_system("vars x y\nsystem\nx' = x^2\ny' = 0\n");
    EXPECT_THROW(integrate_rk4(sys, {1.0, 0.0}, 0, 2, 1e-3), BlowUp);
}

TEST(Rk4, ParametersNeedValues) {
    auto sys = fixture("ex12_9");
    EXPECT_THROW(integrate_rk4(sys, {0.1, 0.2}, 0, 0.1, 1e-2), Error);
    EXPECT_NO_THROW(integrate_rk4(sys, {0.1, 0.2}, 0, 0.1, 1e-2, {{"a", 1.0}}));
}

TEST(Conservation, FocusIntegralIsConserved) {
    auto sys = fixture("ex12_27");
    auto f = make_evaluator(sys, focus_integral(sys));
    auto tr = integrate_rk4(sys, {1.0, 0.0}, 0, 1, 1e-3);
    auto rep = check_conservation(f, tr, 1e-6);
    EXPECT_TRUE(rep.ok) << rep.max_drift;
    // x = e^t cos t stays positive on [0, 1]
    EXPECT_EQ(rep.segments, 1u);
}

TEST(Conservation, WrongSignDrifts) {
    auto sys = fixture("ex12_27");
    auto e = focus_integral(sys);
    e.factors[1].gamma = Scalar(2);
    auto rep = check_conservation(make_evaluator(sys, e), integrate_rk4(sys, {1.0, 0.0}, 0, 1, 1e-3), 1e-6);
    EXPECT_FALSE(rep.ok);
    EXPECT_GT(rep.max_drift, 1.0);
}

TEST(Conservation, ArctanBranchesAreSegmented) {
    // from (0.1, 1) the orbit crosses x = 0 twice within t in [0, 4]
    auto sys = fixture("ex12_27");
    auto f = make_evaluator(sys, focus_integral(sys));
    auto rep = check_conservation(f, integrate_rk4(sys, {1.0, 0.2}, 0, 4, 1e-3), 1e-6);
    EXPECT_TRUE(rep.ok) << rep.max_drift;
    EXPECT_GE(rep.segments, 2u);
}

TEST(Conservation, TimeDependentIntegral) {
    auto sys = fixture("ex12_6");
    IntegralExpr e{{{ExpRationalPI{sys.parse("x + y"), sys.parse("2 + 2*x + y"), 1}, Scalar(1)}}, sys.parse("t")};
    auto rep = check_conservation(make_evaluator(sys, e), integrate_rk4(sys, {0.1, 0.1}, 0, 0.5, 1e-3), 1e-6);
    EXPECT_TRUE(rep.ok) << rep.max_drift;
}

TEST(Evaluator, SingularLocusIsGuarded) {
    auto sys = fixture("sec12_3");
    IntegralExpr e{{{PolyPI{sys.parse("x^2 + y^2")}, Scalar(-1)}}, Poly(sys.ring())};
    auto f = make_evaluator(sys, e);
    EXPECT_THROW(f.value(0, {0.0, 0.0}), SingularLocus);
    EXPECT_NEAR(f.value(0, {1.0, 1.0}), 0.5, 1e-15);
}

TEST(Evaluator, ComplexFactorsAreRejected) {
    auto sys = fixture("ex12_27");
    IntegralExpr e{{{ComplexPI{sys.parse("x"), sys.parse("y")}, Scalar(1)}}, Poly(sys.ring())};
    EXPECT_THROW(make_evaluator(sys, e), Error);
}

TEST(Multiplier, LastMultiplierSatisfiesLiouville) {
    auto sys = fixture("ex12_9");
    IntegralExpr mu{{{PolyPI{sys.parse("x^2 - y^2 + a")}, Scalar(-1)}}, Poly(sys.ring())};
    ParamValues a{{"a", 1.0}};
    auto tr = integrate_rk4(sys, {0.1, 0.3}, 0, 0.3, 1e-3, a);
    auto rep = check_multiplier_numeric(sys, make_evaluator(sys, mu, a), tr, 1e-5, a);
    EXPECT_TRUE(rep.ok) << rep.max_residual;
}

TEST(CofactorNumeric, WrongCofactorIsCaught) {
    auto sys = fixture("ex11_1");
    auto pts = random_points(10, 3, -1, 1, 5);
    EXPECT_TRUE(check_cofactor_numeric(sys, sys.parse("z"), sys.parse("-2*x"), pts).ok);
    EXPECT_FALSE(check_cofactor_numeric(sys, sys.parse("z"), sys.parse("2*x"), pts).ok);
}

TEST(NumericExpression, ParsesRenderedIntegrals) {
    auto sys = fixture("ex12_27");
    auto f = parse_numeric_function("(x^2 + y^2) * exp(-2*atan((y)/(x)))", sys);
    EXPECT_NEAR(f.value(0, {1.0, 1.0}), 2 * std::exp(-2 * std::atan(1.0)), 1e-14);
    EXPECT_THROW(parse_numeric_function("x + w", sys), ParseError);
    EXPECT_THROW(parse_numeric_function("exp(x", sys), ParseError);
}

// The text evaluator and the structured evaluator agree on rendered output.
TEST(NumericExpressionProperty, AgreesWithStructuredEvaluator) {
    auto sys = fixture("ex12_29");
    IntegralExpr e{{{PolyPI{sys.parse("x^2 + y^2 - 1")}, Scalar(2)},
                    {PolyPI{sys.parse("x^2 + y^2")}, Scalar(-1)},
                    {ExpArctanPI{sys.parse("y"), sys.parse("x")}, Scalar(-2)}},
                   Poly(sys.ring())};
    auto structured = make_evaluator(sys, e);
    auto text = parse_numeric_function(render_integral(e), sys);
    Rng rng(91);
    for (int k = 0; k < kCases; ++k) {
        double x = 0.2 + 2.0 * (rng.integer(0, 1000) / 1000.0), y = -1.5 + 3.0 * (rng.integer(0, 1000) / 1000.0);
        double a = structured.value(0, {x, y}), b = text.value(0, {x, y});
        EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a)));
    }
}
