// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failed criteria.
#include "support.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace darboux;
using namespace testing_support;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<bool(std::vector<std::string>&)> body;
};

SystemDef fixture(const std::string& id) { return parse_system(find_fixture(id).system); }

Poly cofactor_of(const SystemDef& sys, const std::string& p) {
    auto v = verify_poly_pi(sys, sys.parse(p));
    return v ? v.report.primary : Poly();
}

bool proportional(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return !is_zero_vec(a);
}

bool verifies(const SystemDef& sys, const IntegralExpr& e, const Target& t = Target::zero()) {
    return verify_integral_expr(sys, e, t).ok;
}

Poly jac(const std::string& s) { return parse_poly(s, detail::jacobi_ring()); }

// u2 + i v2 = c (u1 +- i v1) for a complex constant c; returns the sign.
int complex_line_sign(const Poly& u1, const Poly& v1, const Poly& u2, const Poly& v2) {
    Poly norm = u1 * u1 + v1 * v1;
    for (long s : {1L, -1L}) {
        Poly w = v1 * Scalar(s);
        auto a = divmod(u2 * u1 + v2 * w, norm), b = divmod(v2 * u1 - u2 * w, norm);
        auto constant = [](const Poly& p) { return p.is_zero() || p.is_constant(); };
        if (a.remainder.is_zero() && b.remainder.is_zero() && constant(a.quotient) && constant(b.quotient))
            return static_cast<int>(s);
    }
    return 0;
}

// log|F1| - c log|F2| is constant near a generic point for some c != 0:
// F1 is a constant multiple of a power of F2.
bool power_equivalent(const SystemDef& sys, const IntegralExpr& e1, const IntegralExpr& e2, double x0, double y0) {
    auto f1 = make_evaluator(sys, e1), f2 = make_evaluator(sys, e2);
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> d(-0.05, 0.05), dt(0.0, 1.0);
    std::vector<double> l1, l2;
    for (int k = 0; k < 12; ++k) {
        double t = dt(gen);
        std::vector<double> x{x0 + d(gen), y0 + d(gen)};
        l1.push_back(std::log(std::abs(f1.value(t, x))));
        l2.push_back(std::log(std::abs(f2.value(t, x))));
    }
    double c = (l1[0] - l1[1]) / (l2[0] - l2[1]);
    if (!std::isfinite(c) || std::abs(c) < 1e-9) return false;
    double k0 = l1[0] - c * l2[0];
    for (size_t k = 1; k < l1.size(); ++k)
        if (std::abs(l1[k] - c * l2[k] - k0) > 1e-7 * std::max(1.0, std::abs(k0))) return false;
    return true;
}

// Fixture integral by name, built as in the corpus runner.
IntegralExpr fixture_integral(const std::string& id, const std::string& name) {
    auto& f = find_fixture(id);
    auto sys = parse_system(f.system);
    for (auto& in : f.integrals)
        if (in.name == name) {
            IntegralExpr e;
            for (auto& [cand, g] : in.factors) e.factors.push_back({parse_candidate(cand, sys.ring()), Scalar(parse_rational(g))});
            e.time_antiderivative = in.phi.empty() ? Poly(sys.ring()) : sys.parse(in.phi);
            return e;
        }
    throw Error("no integral " + name + " in " + id);
}

// Jacobi fixtures use a ring without parameters; re-home a fixture integral there.
IntegralExpr rehome(const IntegralExpr& e, const Ring& r) {
    IntegralExpr out;
    out.time_antiderivative = parse_poly(to_string(e.time_antiderivative), r);
    for (auto& f : e.factors) out.factors.push_back({parse_candidate(candidate_string(f.pi), r), f.gamma});
    return out;
}

bool c1(std::vector<std::string>& log) {
    bool ok = true;
    auto check = [&](const SystemDef& s, const std::string& p, const std::string& m, const std::string& where) {
        Poly got = cofactor_of(s, p);
        bool good = got.ring() && got == s.parse(m);
        log.push_back(where + ": " + p + " -> " + (got.ring() ? to_string(got) : "not a partial integral"));
        ok = ok && good;
    };
    check(fixture("ex11_1"), "z", "-2*x", "ex11_1");
    auto s3 = fixture("sec12_3");
    check(s3, "y + 1", "x", "sec12_3");
    check(s3, "x^2 + y^2", "x", "sec12_3");
    auto s6 = fixture("ex12_6");
    check(s6, "2 + 2*x + y", "x + y", "ex12_6");
    check(s6, "12 + 8*x + 4*y + 4*x*y + 3*y^2", "2*(x + y)", "ex12_6");
    check(fixture("ex12_24"), "x^2 + y^2 - 1", "x*y", "ex12_24");
    return ok;
}

bool c2(std::vector<std::string>& log) {
    auto s6 = fixture("ex12_6");
    auto a = verify_exp_rational_pi(s6, s6.parse("x + y"), s6.parse("2 + 2*x + y"), 1);
    auto s24 = fixture("ex12_24");
    auto b = verify_exp_rational_pi(s24, s24.parse("x^2 - y^2 - 1"), s24.parse("x^2 + y^2 - 1"), 1);
    log.push_back("exp((x + y)/(2 + 2x + y)): N = " + (a ? to_string(*a.report.secondary) : a.message));
    log.push_back("exp((x^2 - y^2 - 1)/(x^2 + y^2 - 1)): N = " + (b ? to_string(*b.report.secondary) : b.message));
    return a && b && *a.report.secondary == s6.parse("1") && *b.report.secondary == s24.parse("-x*y");
}

bool c3(std::vector<std::string>& log) {
    bool ok = true;
    struct Case {
        const char *id, *u, *v, *uu, *vv;
    };
    for (auto c : {Case{"ex12_28", "x", "y", "x - y", "x + y"}, Case{"ex12_8", "x", "y^2", "y", "-2*y"}}) {
        auto s = fixture(c.id);
        Poly u = s.parse(c.u), v = s.parse(c.v);
        auto r = verify_complex_pi(s, u, v);
        bool good = r && r.report.primary == s.parse(c.uu) && *r.report.secondary == s.parse(c.vv);
        // routes: |w|^2 has cofactor 2U, exp(arctan(v/u)) has cofactor V with companion U
        auto norm = verify_poly_pi(s, u * u + v * v);
        auto at = verify_exp_arctan_pi(s, v, u);
        bool routes = norm && at && norm.report.primary == s.parse(c.uu) * Scalar(2) && at.report.primary == s.parse(c.vv) &&
                      *at.report.secondary == s.parse(c.uu);
        log.push_back(std::string(c.id) + ": (U, V) = " +
                      (r ? "(" + to_string(r.report.primary) + ", " + to_string(*r.report.secondary) + ")" : r.message) +
                      (routes ? ", routes agree" : ", routes DISAGREE"));
        ok = ok && good && routes;
    }
    return ok;
}

bool c4(std::vector<std::string>& log) {
    auto s = fixture("ex12_6");
    auto res = combine(s, {PolyPI{s.parse("2 + 2*x + y")}, PolyPI{s.parse("12 + 8*x + 4*y + 4*x*y + 3*y^2")}}, Target::zero());
    auto tres = combine(s, {ExpRationalPI{s.parse("x + y"), s.parse("2 + 2*x + y"), 1}}, Target::zero(), true);
    if (res.size() != 1 || tres.size() != 1) return false;
    log.push_back("F  = " + render_integral(res[0].expr));
    log.push_back("F1 = " + render_integral(tres[0].expr));
    return proportional(res[0].gamma, {-2, 1}) &&
           render_integral(res[0].expr) == "(12 + 8*x + 4*y + 4*x*y + 3*y^2) * (2 + 2*x + y)^-2" &&
           render_integral(tres[0].expr) == "exp((x + y)/(2 + 2*x + y)) * exp(-t)" && verifies(s, res[0].expr) &&
           verifies(s, tres[0].expr);
}

bool c5(std::vector<std::string>& log) {
    auto s = parse_system("vars x y\nsystem\nx' = y + x^2 - y^2 + 1\ny' = x + x^2 - y^2 + 1\n");
    std::vector<PartialIntegral> pis{PolyPI{s.parse("x^2 - y^2 + 1")}, ConditionalPI{s.parse("x - y")}};
    auto res = combine(s, pis, Target::neg_div());
    bool mu1 = false, mu2 = false;
    for (auto& r : res) {
        log.push_back("mu = " + render_integral(r.expr));
        mu1 = mu1 || render_integral(r.expr) == "(1 + x^2 - y^2)^-1";
        mu2 = mu2 || render_integral(r.expr) == "exp(2*(x - y))";
    }
    IntegralExpr ratio{{{pis[0], Scalar(1)}, {pis[1], Scalar(2)}}, Poly(s.ring())};
    bool r = verifies(s, ratio);
    log.push_back(std::string("mu2 / mu1 = ") + render_integral(ratio) + (r ? " is a first integral" : " FAILS"));
    return mu1 && mu2 && r;
}

bool c6(std::vector<std::string>& log) {
    auto strs = [](const std::vector<DarbouxHit>& hs) {
        std::vector<std::string> out;
        for (auto& h : hs) out.push_back(to_string(h.p.primitive()));
        return out;
    };
    auto s6 = fixture("ex12_6");
    auto s27 = fixture("ex12_27");
    auto a = strs(search_planar(s6, 1)), b = strs(search_planar(s6, 2));
    auto c = strs(search_planar(s27, 1)), d = strs(search_planar(s27, 2));
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (auto& x : v) s += (s.empty() ? "" : ", ") + x;
        return "{" + s + "}";
    };
    log.push_back("ex12_6: k=1 " + join(a) + ", k=2 " + join(b));
    log.push_back("ex12_27: k=1 " + join(c) + ", k=2 " + join(d));
    return a == std::vector<std::string>{"2*x + y + 2"} && b == std::vector<std::string>{"4*x*y + 3*y^2 + 8*x + 4*y + 12"} &&
           c.empty() && d == std::vector<std::string>{"x^2 + y^2"};
}

bool c7(std::vector<std::string>& log) {
    bool ok = true;
    auto note = [&](bool good, const std::string& s) {
        log.push_back(std::string(good ? "" : "MISMATCH ") + s);
        ok = ok && good;
    };
    auto general = [](const char* m) { return jacobi_general_integral(parse_matrix(m)); };
    Ring r = detail::jacobi_ring();

    auto j1 = general("3,-1,1; -1,5,-1; 1,-1,3");
    auto p1 = rehome(fixture_integral("ex12_42", "general"), r);
    note(j1.general && verifies(*j1.sys, *j1.general) && verifies(*j1.sys, p1) && power_equivalent(*j1.sys, p1, *j1.general, 0.31, 0.17),
         "three simple eigenvalues: " + render_integral(*j1.general));

    auto j2 = general("-1,1,1; 1,-1,1; 1,1,-1");
    auto p2 = rehome(fixture_integral("ex12_45", "general"), r);
    bool lines = j2.general && j2.general->factors.size() == 2;
    if (lines)
        for (auto& f : j2.general->factors) lines = lines && std::get<PolyPI>(f.pi).p.eval(std::vector<Scalar>{1, 1, 0}).is_zero();
    bool sing = j2.singular_factors.size() == 1 && j2.singular_factors[0].primitive() == jac("x + y + 1");
    note(lines && sing && verifies(*j2.sys, *j2.general) && verifies(*j2.sys, p2),
         "repeated eigenvalue: " + render_integral(*j2.general) + ", singular factor " + to_string(j2.singular_factors.at(0)));

    auto j3 = general("4,6,-2; -3,-2,1; -1,1,0");
    bool root6 = false;
    int orient = 0;
    Poly s6 = jac("1") * Scalar::sqrt_of(6);
    for (auto& f : j3.general->factors) {
        if (std::holds_alternative<PolyPI>(f.pi) && f.gamma.radicand() == 6 && f.gamma.a() == 0) root6 = true;
        if (auto* at = std::get_if<ExpArctanPI>(&f.pi)) orient = complex_line_sign(at->u, at->v, jac("4*x - 5*y - 3"), s6 * jac("2*x + 1"));
    }
    note(root6 && orient != 0 && verifies(*j3.sys, *j3.general), "complex pair 1 +- i sqrt(6): " + render_integral(*j3.general));

    auto j5 = general("-1,1,-1; 1,-1,1; 0,-1,0");
    auto p5 = rehome(fixture_integral("ex12_56", "general"), r);
    note(verifies(*j5.sys, *j5.general) && verifies(*j5.sys, p5) && power_equivalent(*j5.sys, p5, *j5.general, 0.31, 0.17),
         "double divisor: " + render_integral(*j5.general));

    auto j6 = general("1,0,0; 0,1,1; 0,0,1");
    note(render_integral(*j6.general) == "(y) * (x)^-1" && verifies(*j6.sys, *j6.general), "double plus simple divisor: " + render_integral(*j6.general));

    auto j7 = general("1,1,1; -1,3,1; -1,1,2");
    IntegralExpr p7{{{PolyPI{jac("2*(x + y)*(x + 1) + 1")}, Scalar(1)}, {PolyPI{jac("x + y")}, Scalar(-2)}}, Poly(r)};
    auto sd = fixture("ex12_66");
    bool symbolic = verifies(sd, fixture_integral("ex12_66", "general"));
    note(verifies(*j7.sys, *j7.general) && power_equivalent(*j7.sys, p7, *j7.general, 0.31, 0.17) && symbolic,
         "triple divisor (delta = 1): " + render_integral(*j7.general) + (symbolic ? "; symbolic delta verifies" : ""));
    return ok;
}

bool c8(std::vector<std::string>& log) {
    bool ok = true;
    Ring r = detail::jacobi_ring();
    // the reference integral must verify and match some Jacobi output up to power and constant
    auto match = [&](const char* m, const std::string& id, const std::string& name) {
        auto a = parse_matrix(m);
        auto sys = *jacobi_build(a).sys;
        auto reference = rehome(fixture_integral(id, name), r);
        bool good = verifies(sys, reference), found = false;
        for (auto& e : jacobi_nonautonomous_integral(a)) {
            if (!verifies(sys, e)) continue;
            if (power_equivalent(sys, reference, e, 0.31, 0.17)) found = true;
            // same time factor, and the quotient is a time-free first integral
            if (e.time_antiderivative == reference.time_antiderivative) {
                IntegralExpr quotient{reference.factors, Poly(r)};
                for (auto& f : e.factors) quotient.factors.push_back({f.pi, -f.gamma});
                if (verifies(sys, quotient)) found = true;
            }
        }
        log.push_back(std::string(good && found ? "" : "MISMATCH ") + name + ": " + render_integral(reference));
        ok = ok && good && found;
    };
    match("3,-1,1; -1,5,-1; 1,-1,3", "ex12_42", "Psi12");
    match("3,-1,1; -1,5,-1; 1,-1,3", "ex12_42", "Psi13");
    match("3,-1,1; -1,5,-1; 1,-1,3", "ex12_42", "Psi23");
    match("-1,1,-1; 1,-1,1; 0,-1,0", "ex12_56", "nonautonomous-exp");
    match("1,0,0; 0,1,1; 0,0,1", "ex12_58", "nonautonomous");
    match("1,1,1; -1,3,1; -1,1,2", "ex12_66", "nonautonomous");

    // arctan sqrt(6)(2x + 1)/(4x - 5y - 3) - sqrt(6) t, in exponentiated form
    auto a = parse_matrix("4,6,-2; -3,-2,1; -1,1,0");
    auto sys = *jacobi_build(a).sys;
    Poly s6 = jac("1") * Scalar::sqrt_of(6);
    IntegralExpr atan6{{{ExpArctanPI{s6 * jac("2*x + 1"), jac("4*x - 5*y - 3")}, Scalar(1)}}, parse_poly("t", r) * Scalar::sqrt_of(6)};
    bool found = false;
    for (auto& e : jacobi_nonautonomous_integral(a))
        if (auto* at = std::get_if<ExpArctanPI>(&e.factors[0].pi))
            found = found || (complex_line_sign(at->u, at->v, jac("4*x - 5*y - 3"), s6 * jac("2*x + 1")) == 1 &&
                              e.time_antiderivative == atan6.time_antiderivative);
    bool atan6_ok = verifies(sys, atan6);
    log.push_back(std::string(atan6_ok && found ? "" : "MISMATCH ") + "arctan, complex pair with sqrt(6): " + render_integral(atan6));
    ok = ok && atan6_ok && found;

    // arctan (-x + 3)/(3x + 4y - 3) - t
    auto a4 = parse_matrix("1,1,1; 2,1,2; 3,-3,1");
    auto sys4 = *jacobi_build(a4).sys;
    IntegralExpr atan1{{{ExpArctanPI{jac("-x + 3"), jac("3*x + 4*y - 3")}, Scalar(1)}}, parse_poly("t", r)};
    bool atan1_found = false;
    for (auto& e : jacobi_nonautonomous_integral(a4))
        if (auto* at = std::get_if<ExpArctanPI>(&e.factors[0].pi))
            atan1_found = atan1_found || (complex_line_sign(at->u, at->v, jac("3*x + 4*y - 3"), jac("-x + 3")) == 1 &&
                          e.time_antiderivative == atan1.time_antiderivative);
    bool atan1_ok = verifies(sys4, atan1);
    log.push_back(std::string(atan1_ok && atan1_found ? "" : "MISMATCH ") + "arctan, complex pair 1 +- i: " + render_integral(atan1));
    return ok && atan1_ok && atan1_found;
}

bool c9(std::vector<std::string>& log) {
    Ring r = make_ring({"x", "y"}, {"a"});
    auto res = inverse_system(r, {{InverseRow::poly, parse_poly("x^2 + y^2 + a", r), parse_poly("2*(x + y)", r)},
                                  {InverseRow::exponential, parse_poly("x - y", r), parse_poly("-(x + y)", r)}});
    Ring q = xy();
    auto mul = inverse_from_multiple_pi(q, parse_poly("x^2 + y^2 - 1", q), parse_poly("x*y", q), 1, parse_poly("x^2 - y^2 - 1", q),
                                        parse_poly("-x*y", q));
    if (!res || !mul) {
        log.push_back(res.message + " " + mul.message);
        return false;
    }
    std::string a = "x' = " + to_string(res.rhs[0]) + "; y' = " + to_string(res.rhs[1]);
    std::string b = "x' = " + to_string(mul.rhs[0]) + "; y' = " + to_string(mul.rhs[1]);
    log.push_back("ex12_21: " + a);
    log.push_back("ex12_24: " + b);
    // round trip: the prescribed cofactors come back from the constructed systems
    bool rt = verify_poly_pi(*res.sys, parse_poly("x^2 + y^2 + a", r)).report.primary == parse_poly("2*(x + y)", r) &&
              verify_conditional_pi(*res.sys, parse_poly("x - y", r)).report.primary == parse_poly("-(x + y)", r) &&
              verify_exp_rational_pi(*mul.sys, parse_poly("x^2 - y^2 - 1", q), parse_poly("x^2 + y^2 - 1", q), 1).report.secondary ==
                  parse_poly("-x*y", q);
    return a == "x' = x^2 + y^2 - y + a; y' = x^2 + y^2 + x + a" &&
           b == "x' = 1/4*x^2*y - 1/4*y^3 - 1/4*y; y' = 1/4*x^3 + 3/4*x*y^2 - 1/4*x" && rt;
}

bool c10(std::vector<std::string>& log) {
    std::vector<std::vector<Integer>> pascal(12);
    for (size_t i = 0; i < pascal.size(); ++i) {
        pascal[i].assign(i + 1, 1);
        for (size_t j = 1; j < i; ++j) pascal[i][j] = pascal[i - 1][j - 1] + pascal[i - 1][j];
    }
    bool ok = true;
    for (unsigned long d = 1; d <= 10; ++d) ok = ok && darboux_capacity(2, d) == Integer(d * (d + 1) / 2);
    for (unsigned long n = 1; n <= 4; ++n)
        for (unsigned long d = 1; d <= 4; ++d) ok = ok && darboux_capacity(n, d) == pascal[n + d - 1][n];
    log.push_back("capacity(2, 2) = " + darboux_capacity(2, 2).get_str() + ", capacity(3, 4) = " + darboux_capacity(3, 4).get_str());
    return ok;
}

bool c11(std::vector<std::string>& log) {
    auto s = fixture("ex12_27");
    IntegralExpr e{{{PolyPI{s.parse("x^2 + y^2")}, Scalar(1)}, {ExpArctanPI{s.parse("y"), s.parse("x")}, Scalar(-2)}}, Poly(s.ring())};
    auto f = make_evaluator(s, e);
    auto rep = check_conservation(f, integrate_rk4(s, {1.0, 0.0}, 0, 1, 1e-3), 1e-6);
    // endpoint error against the exact solution e^t (cos t, sin t)
    auto endpoint = [&](double h) {
        auto tr = integrate_rk4(s, {1.0, 0.0}, 0, 1, h);
        auto& z = tr.states.back();
        return std::hypot(z[0] - std::exp(1.0) * std::cos(1.0), z[1] - std::exp(1.0) * std::sin(1.0));
    };
    double ratio = endpoint(0.1) / endpoint(0.05);
    double fine = endpoint(1e-3) / endpoint(5e-4);
    char buf[200];
    std::snprintf(buf, sizeof buf, "max relative drift %.2e at h = 1e-3; endpoint error ratio %.2f (h = 0.1 -> 0.05)", rep.max_drift,
                  ratio);
    log.push_back(buf);
    std::snprintf(buf, sizeof buf, "for reference, ratio at h = 1e-3 -> 5e-4 is %.2f (errors near roundoff)", fine);
    log.push_back(buf);
    return rep.ok && rep.max_drift < 1e-6 && ratio >= 12 && ratio <= 20;
}

bool c12(std::vector<std::string>& log) {
    Ring r = xy();
    Rng rng(2024);
    int failures = 0, cases = 0;
    std::vector<int> per(5, 0);
    int suite = 0;
    auto expect = [&](bool b) {
        ++cases;
        failures += !b;
        per[suite] += !b;
    };
    // cofactor additivity under products
    for (int k = 0; k < kCases;) {
        auto pl = planted_pair(r, rng.poly(r, {0}, 2), rng.poly(r, {0, 1}, 1), rng.poly(r, {0, 1}, 1));
        if (!pl) continue;
        ++k;
        unsigned a = rng.integer(1, 3), b = rng.integer(1, 3);
        auto v = verify_poly_pi(pl->sys, pl->p.pow(a) * pl->q.pow(b));
        expect(v.ok && v.report.primary == pl->m1 * Scalar(long(a)) + pl->m2 * Scalar(long(b)));
    }
    suite = 1;
    // sum closure for a shared cofactor
    for (int k = 0; k < kCases;) {
        Poly m = rng.poly(r, {0, 1}, 1);
        auto pl = planted_pair(r, rng.poly(r, {0}, 1), m, m);
        if (!pl) continue;
        ++k;
        auto v = verify_poly_pi(pl->sys, pl->p * Scalar(rng.nonzero_rational()) + pl->q * Scalar(rng.nonzero_rational()));
        expect(v.ok && v.report.primary == m);
    }
    suite = 2;
    // combine's gamma under rescaled partial integrals
    for (int k = 0; k < kCases;) {
        Poly m = rng.nonzero_poly(r, {0, 1}, 1);
        Rational q = rng.nonzero_rational();
        auto pl = planted_pair(r, rng.poly(r, {0}, 2), m, m * Scalar(q));
        if (!pl) continue;
        ++k;
        auto a = combine(pl->sys, {PolyPI{pl->p}, PolyPI{pl->q}}, Target::zero());
        auto b = combine(pl->sys, {PolyPI{pl->p * Scalar(rng.nonzero_rational())}, PolyPI{pl->q * Scalar(rng.nonzero_rational())}},
                         Target::zero());
        expect(a.size() == 1 && b.size() == 1 && a[0].gamma == b[0].gamma && proportional(a[0].gamma, {Scalar(q), -1}));
    }
    suite = 3;
    // ring and linear-algebra exactness
    for (int k = 0; k < kCases; ++k) {
        Poly a = rng.poly(r, {0, 1, 2}, 3), b = rng.poly(r, {0, 1, 2}, 2), c = rng.nonzero_poly(r, {0, 1, 2}, 2);
        bool ring = a * (b + c) == a * b + a * c && exact_div(a * c, c) == a && (a * b) * c == a * (b * c);
        SMatrix m(3, 4);
        Vec x(4);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 4; ++j) m(i, j) = Scalar(rng.rational());
        for (auto& v : x) v = Scalar(rng.rational());
        auto sol = solve_linear(m, m * x);
        bool lin = sol.particular && m * *sol.particular == m * x;
        for (auto& n : sol.nullspace) lin = lin && is_zero_vec(m * n);
        expect(ring && lin);
    }
    suite = 4;
    // parse/print round trip
    Ring rp = make_ring({"x", "y"}, {"a"});
    for (int k = 0; k < kCases; ++k) {
        Poly p = rng.poly(rp, {0, 1, 2, 3}, 4, 6);
        expect(parse_poly(to_string(p), rp) == p);
    }
    log.push_back(std::to_string(cases) + " randomized cases over 5 suites, " + std::to_string(failures) + " failures (" +
                  std::to_string(per[0]) + "/" + std::to_string(per[1]) + "/" + std::to_string(per[2]) + "/" + std::to_string(per[3]) + "/" +
                  std::to_string(per[4]) + ")");
    return failures == 0;
}

}  // namespace

int main() {
    std::vector<Criterion> all{
        {1, "cofactor extraction", c1},
        {2, "multiple partial integral cofactor N", c2},
        {3, "complex partial integrals", c3},
        {4, "first-integral assembly", c4},
        {5, "last multipliers", c5},
        {6, "planar search", c6},
        {7, "Jacobi general integrals", c7},
        {8, "Jacobi nonautonomous integrals", c8},
        {9, "inverse problem", c9},
        {10, "capacity", c10},
        {11, "numeric cross-check", c11},
        {12, "property suites", c12},
    };
    int failed = 0;
    for (auto& c : all) {
        std::vector<std::string> log;
        bool ok = false;
        try {
            ok = c.body(log);
        } catch (const std::exception& e) {
            log.push_back(std::string("exception: ") + e.what());
        }
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n";
        for (auto& l : log) std::cout << "     " << l << "\n";
    }
    return failed;
}
