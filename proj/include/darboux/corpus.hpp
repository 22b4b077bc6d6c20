#ifndef DARBOUX_CORPUS_HPP
#define DARBOUX_CORPUS_HPP

#include "candidate.hpp"
#include "integral.hpp"
#include "inverse.hpp"
#include "jacobi.hpp"
#include "search.hpp"

#include <future>
#include <sstream>

namespace darboux {

// `cofactor` is the primary cofactor reported by verify_pi (M, dp, N, V or U
// by kind); `secondary` is M for expfrac, U for arctan, V for complex.
struct FixtureCheck {
    std::string candidate;
    std::string cofactor;
    std::string secondary;
};

// prod factor^gamma * exp(-phi(t)) satisfying the target identity.
struct FixtureIntegral {
    std::string name;
    std::string target = "first-integral";
    std::vector<std::pair<std::string, std::string>> factors;  // candidate, gamma
    std::string phi;
};

struct FixtureSearch {
    int degree;
    std::vector<std::string> expected;
};

struct Fixture {
    std::string id;
    std::string title;
    std::string system;
    std::vector<FixtureCheck> checks;
    std::vector<FixtureIntegral> integrals;
    std::vector<FixtureSearch> searches;
    std::string jacobi_matrix;                // empty: no Jacobi run
    std::string jacobi_case;
    std::vector<std::string> inverse_rows;    // "poly: g, cofactor: M" / "exp: w, cofactor: M"
    std::string inverse_multiple;             // "p, M, h, q, N"
    std::string inverse_complex;              // "u, v, U, V"
};

inline const std::vector<Fixture>& corpus() {
    static const std::vector<Fixture> fx = {
        {"ex11_1", "three-dimensional system with z and exp(x^2)",
         "vars x y z\nsystem\nx' = 1\ny' = -2*x*y + z^2\nz' = -2*x*z\n",
         {{"poly: z", "-2*x", ""}, {"exp: x^2", "2*x", ""}},
         {{"z*exp(x^2)", "first-integral", {{"poly: z", "1"}, {"exp: x^2", "1"}}, ""}}},
        {"sec12_2", "two cubic partial integrals, parameter a",
         "vars x y\nparam a\nsystem\n"
         "x' = -y - a*x^2 - (3 + a^2)*x*y + a*y^2\n"
         "y' = x + a^2*x^2 + 2*a*x*y - (1 + 2*a^2)*y^2\n",
         {{"poly: 1 + (1 + a^2)*(3*x + 3*a*x*(y + a*x) + a*(y + a*x)^3)", "-3*(1 + a^2)*y", ""},
          {"poly: 1 + (1 + a^2)*(2*x + (y + a*x)^2)", "-2*(1 + a^2)*y", ""}},
         {{"p1^2/p2^3", "first-integral",
           {{"poly: 1 + (1 + a^2)*(3*x + 3*a*x*(y + a*x) + a*(y + a*x)^3)", "2"},
            {"poly: 1 + (1 + a^2)*(2*x + (y + a*x)^2)", "-3"}},
           ""}}},
        {"sec12_3", "quadratic system with y + 1 and x^2 + y^2",
         "vars x y\nsystem\nx' = -y + 1/2*x^2 - 1/2*y^2\ny' = x*(1 + y)\n",
         {{"poly: y + 1", "x", ""}, {"poly: x^2 + y^2", "x", ""}},
         {{"(y+1)/(x^2+y^2)", "first-integral", {{"poly: y + 1", "1"}, {"poly: x^2 + y^2", "-1"}}, ""}}},
        {"ex12_6", "double partial integral 2 + 2x + y",
         "vars x y\nsystem\nx' = -2 + y + x^2 + x*y\ny' = 4 + 2*x + x*y + y^2\n",
         {{"poly: 2 + 2*x + y", "x + y", ""},
          {"expfrac: x + y / 2 + 2*x + y", "1", "x + y"},
          {"poly: 12 + 8*x + 4*y + 4*x*y + 3*y^2", "2*(x + y)", ""}},
         {{"F", "first-integral", {{"poly: 2 + 2*x + y", "-2"}, {"poly: 12 + 8*x + 4*y + 4*x*y + 3*y^2", "1"}}, ""},
          {"F1", "first-integral", {{"expfrac: x + y / 2 + 2*x + y", "1"}}, "t"}},
         {{1, {"2 + 2*x + y"}}, {2, {"12 + 8*x + 4*y + 4*x*y + 3*y^2"}}}},
        {"ex12_7", "quintic system with an aliquant partial integral",
         "vars x y\nsystem\nx' = -y*(2*x^2 + y^2 + (x^2 + y^2)^2)\ny' = x*(2*x^2 + y^2 + 2*(x^2 + y^2)^2)\n",
         {{"poly: 2*x^2 + y^2", "-2*x*y", ""},
          {"poly: x^2 + y^2", "2*x*y*(x^2 + y^2)", ""},
          {"expfrac: 1 / x^2 + y^2", "-2*x*y", "2*x*y*(x^2 + y^2)"}},
         {{"F", "first-integral", {{"poly: 2*x^2 + y^2", "1"}, {"expfrac: 1 / x^2 + y^2", "-1"}}, ""}}},
        {"sec12_6", "complex partial integral x + iy with a line pencil",
         "vars x y\nsystem\nx' = x + x*y + y^2\ny' = y + x^2 - x*y + 2*y^2\n",
         {{"complex: x + i*y", "1 + 2*y", "x - y"},
          {"poly: x^2 + y^2", "2*(1 + 2*y)", ""},
          {"arctan: y / x", "x - y", "1 + 2*y"},
          {"poly: x - y", "-(x - y - 1)", ""},
          {"poly: x - y - 1", "-(x - y)", ""}},
         {{"(x-y-1)exp(atan)", "first-integral", {{"poly: x - y - 1", "1"}, {"arctan: y / x", "1"}}, ""},
          {"(x-y-1)/(x-y) e^t", "first-integral", {{"poly: x - y - 1", "1"}, {"poly: x - y", "-1"}}, "-t"}}},
        {"ex12_8", "complex partial integral x + iy^2",
         "vars x y\nsystem\nx' = x*y + 2*y^3\ny' = -x + 1/2*y^2\n",
         {{"complex: x + i*y^2", "y", "-2*y"}, {"poly: x^2 + y^4", "2*y", ""}, {"arctan: y^2 / x", "-2*y", "y"}},
         {{"F", "first-integral", {{"poly: x^2 + y^4", "1"}, {"arctan: y^2 / x", "1"}}, ""}}},
        {"ex12_9", "conditional partial integral exp(x - y), parameter a",
         "vars x y\nparam a\nsystem\nx' = y + x^2 - y^2 + a\ny' = x + x^2 - y^2 + a\n",
         {{"poly: x^2 - y^2 + a", "2*(x - y)", ""}, {"exp: x - y", "-(x - y)", ""}},
         {{"F", "first-integral", {{"poly: x^2 - y^2 + a", "1"}, {"exp: x - y", "2"}}, ""},
          {"mu1", "last-multiplier", {{"poly: x^2 - y^2 + a", "-1"}}, ""},
          {"mu2", "last-multiplier", {{"exp: x - y", "2"}}, ""}}},
        {"ex12_21", "system built from x^2 + y^2 + a and exp(x - y)",
         "vars x y\nparam a\nsystem\nx' = -y + x^2 + y^2 + a\ny' = x + x^2 + y^2 + a\n",
         {{"poly: x^2 + y^2 + a", "2*(x + y)", ""}, {"exp: x - y", "-(x + y)", ""}},
         {{"F", "first-integral", {{"poly: x^2 + y^2 + a", "1"}, {"exp: x - y", "2"}}, ""}},
         {},
         "",
         "",
         {"poly: x^2 + y^2 + a, cofactor: 2*(x + y)", "exp: x - y, cofactor: -(x + y)"}},
        {"ex12_24", "system built from a double partial integral",
         "vars x y\nsystem\nx' = 1/4*y*(x^2 - y^2 - 1)\ny' = 1/4*x*(x^2 + 3*y^2 - 1)\n",
         {{"poly: x^2 + y^2 - 1", "x*y", ""}, {"expfrac: x^2 - y^2 - 1 / x^2 + y^2 - 1", "-x*y", "x*y"}},
         {{"F", "first-integral", {{"poly: x^2 + y^2 - 1", "1"}, {"expfrac: x^2 - y^2 - 1 / x^2 + y^2 - 1", "1"}}, ""}},
         {},
         "",
         "",
         {},
         "x^2 + y^2 - 1, x*y, 1, x^2 - y^2 - 1, -x*y"},
        {"ex12_27", "linear focus from x + iy with cofactor 1 + i",
         "vars x y\nsystem\nx' = x - y\ny' = x + y\n",
         {{"complex: x + i*y", "1", "1"}, {"poly: x^2 + y^2", "2", ""}, {"arctan: y / x", "1", "1"}},
         {{"F", "first-integral", {{"poly: x^2 + y^2", "1"}, {"arctan: y / x", "-2"}}, ""},
          {"F1", "first-integral", {{"poly: x^2 + y^2", "1"}}, "2*t"},
          {"F2", "first-integral", {{"arctan: y / x", "1"}}, "t"}},
         {{1, {}}, {2, {"x^2 + y^2"}}},
         "",
         "",
         {},
         "",
         "x, y, 1, 1"},
        {"ex12_28", "quadratic system from x + iy with cofactor x - y + i(x + y)",
         "vars x y\nsystem\nx' = x^2 - 2*x*y - y^2\ny' = x^2 + 2*x*y - y^2\n",
         {{"complex: x + i*y", "x - y", "x + y"}, {"poly: x^2 + y^2", "2*(x - y)", ""}, {"poly: x + y", "2*(x - y)", ""}},
         {{"F", "first-integral", {{"poly: x + y", "1"}, {"poly: x^2 + y^2", "-1"}}, ""}},
         {},
         "",
         "",
         {},
         "",
         "x, y, x - y, x + y"},
        {"ex12_29", "cubic family with lambda = -1, eta = 1",
         "vars x y\nsystem\nx' = x*(x^2 + y^2 - 1) - y*(x^2 + y^2 + 1)\ny' = x*(x^2 + y^2 + 1) + y*(x^2 + y^2 - 1)\n",
         {{"complex: x + i*y", "x^2 + y^2 - 1", "x^2 + y^2 + 1"},
          {"poly: x^2 + y^2", "2*(x^2 + y^2 - 1)", ""},
          {"poly: x^2 + y^2 - 1", "2*(x^2 + y^2)", ""},
          {"arctan: y / x", "x^2 + y^2 + 1", "x^2 + y^2 - 1"}},
         {{"F", "first-integral", {{"poly: x^2 + y^2 - 1", "2"}, {"poly: x^2 + y^2", "-1"}, {"arctan: y / x", "-2"}}, ""},
          {"F1", "first-integral", {{"poly: x^2 + y^2 - 1", "1"}, {"poly: x^2 + y^2", "-1"}}, "2*t"},
          {"F2", "first-integral", {{"poly: x^2 + y^2 - 1", "1"}, {"arctan: y / x", "-2"}}, "-2*t"},
          {"F3", "first-integral", {{"poly: x^2 + y^2", "1"}, {"arctan: y / x", "-2"}}, "-4*t"}},
         {},
         "",
         "",
         {},
         "",
         "x, y, x^2 + y^2 - 1, x^2 + y^2 + 1"},
        {"ex12_30", "cubic family with lambda = 0, eta = 1",
         "vars x y\nsystem\nx' = x*(x^2 + y^2) - y*(x^2 + y^2 + 1)\ny' = x*(x^2 + y^2 + 1) + y*(x^2 + y^2)\n",
         {{"poly: x^2 + y^2", "2*(x^2 + y^2)", ""}, {"expfrac: 1 / x^2 + y^2", "-2", "2*(x^2 + y^2)"}},
         {{"F4", "first-integral", {{"poly: x^2 + y^2", "-1"}, {"expfrac: 1 / x^2 + y^2", "1"}, {"arctan: y / x", "2"}}, ""},
          {"F5", "first-integral", {{"poly: x^2 + y^2", "1"}, {"arctan: y / x", "-2"}}, "-2*t"},
          {"F6", "first-integral", {{"expfrac: 1 / x^2 + y^2", "1"}}, "-2*t"}}},
        {"ex12_32", "Darboux system with lambda = 1, eta = 2",
         "vars x y\nsystem\nx' = x - 2*y + x*(x^2 + y^2)\ny' = 2*x + y + y*(x^2 + y^2)\n",
         {{"poly: x^2 + y^2", "2*(x^2 + y^2 + 1)", ""}, {"poly: x^2 + y^2 + 1", "2*(x^2 + y^2)", ""}, {"arctan: y / x", "2", "x^2 + y^2 + 1"}},
         {{"F", "first-integral", {{"poly: x^2 + y^2 + 1", "1"}, {"poly: x^2 + y^2", "-1"}, {"arctan: y / x", "1"}}, ""},
          {"Psi", "first-integral", {{"arctan: y / x", "1"}}, "2*t"}}},
        {"ex12_33", "Darboux system with lambda = 0, eta = 1",
         "vars x y\nsystem\nx' = -y + x*(x^2 + y^2)\ny' = x + y*(x^2 + y^2)\n",
         {{"poly: x^2 + y^2", "2*(x^2 + y^2)", ""}, {"expfrac: 1 / x^2 + y^2", "-2", "2*(x^2 + y^2)"}},
         {{"Psi1", "first-integral", {{"expfrac: 1 / x^2 + y^2", "1"}, {"arctan: y / x", "2"}}, ""}}},
        {"ex12_34", "Darboux system with P = y^2(x^2 + y^2 - 1), eta = 1",
         "vars x y\nsystem\nx' = -y + x*y^2*(x^2 + y^2 - 1)\ny' = x + y^3*(x^2 + y^2 - 1)\n",
         {{"poly: x^2 + y^2", "2*y^2*(x^2 + y^2 - 1)", ""}, {"poly: x^2 + y^2 - 1", "2*y^2*(x^2 + y^2)", ""}},
         {{"mu", "last-multiplier", {{"poly: x^2 + y^2", "-2"}, {"poly: x^2 + y^2 - 1", "-1"}}, ""}}},
        {"ex12_35", "cubic system from x + iy with cofactor 1 - x^2 + i(x^2 + y^2)",
         "vars x y\nsystem\nx' = x - x^3 - x^2*y - y^3\ny' = y + x^3 - x^2*y + x*y^2\n",
         {{"complex: x + i*y", "1 - x^2", "x^2 + y^2"},
          {"expfrac: x*y / x^2 + y^2", "x^2 - y^2", "2*(1 - x^2)"},
          {"expfrac: -y^2 / x^2 + y^2", "-2*x*y", "2*(1 - x^2)"}},
         {{"F", "first-integral", {{"poly: x^2 + y^2", "1"}, {"expfrac: x*y / x^2 + y^2", "1"}, {"arctan: y / x", "1"}}, "2*t"},
          {"mu", "last-multiplier", {{"poly: x^2 + y^2", "-1"}, {"expfrac: x*y / x^2 + y^2", "1"}, {"arctan: y / x", "1"}}, ""}},
         {},
         "",
         "",
         {},
         "",
         "x, y, 1 - x^2, x^2 + y^2"},
        {"ex12_42", "Jacobi: three simple real eigenvalues",
         "vars x y\nsystem\nx' = 3*x - y + 1 - x*(x - y + 3)\ny' = -x + 5*y - 1 - y*(x - y + 3)\n",
         {{"poly: x + y + 1", "-x + y", ""}, {"poly: x - 1", "-1 - x + y", ""}, {"poly: x - 2*y + 1", "3 - x + y", ""}},
         {{"general", "first-integral", {{"poly: x + y + 1", "4"}, {"poly: x - 1", "-3"}, {"poly: x - 2*y + 1", "-1"}}, ""},
          {"Psi12", "first-integral", {{"poly: x - 1", "1"}, {"poly: x + y + 1", "-1"}}, "-t"},
          {"Psi13", "first-integral", {{"poly: x - 1", "1"}, {"poly: x - 2*y + 1", "-1"}}, "-4*t"},
          {"Psi23", "first-integral", {{"poly: x + y + 1", "1"}, {"poly: x - 2*y + 1", "-1"}}, "-3*t"}},
         {},
         "3,-1,1; -1,5,-1; 1,-1,3",
         "three-simple-real"},
        {"ex12_45", "Jacobi: repeated eigenvalue with two eigenvectors",
         "vars x y\nsystem\nx' = -x + y + 1 - x*(x + y - 1)\ny' = x - y + 1 - y*(x + y - 1)\n",
         {{"poly: x + y + 1", "2 - x - y", ""}, {"poly: y - 1", "-1 - x - y", ""}, {"poly: x - 1", "-1 - x - y", ""}},
         {{"general", "first-integral", {{"poly: y - 1", "1"}, {"poly: x - 1", "-1"}}, ""},
          {"Psi1", "first-integral", {{"poly: y - 1", "1"}, {"poly: x + y + 1", "-1"}}, "-3*t"},
          {"Psi2", "first-integral", {{"poly: x - 1", "1"}, {"poly: x + y + 1", "-1"}}, "-3*t"}},
         {},
         "-1,1,1; 1,-1,1; 1,1,-1",
         "repeated-simple"},
        {"ex12_48", "Jacobi: complex eigenvalues 1 +- sqrt(6) i",
         "vars x y\nsystem\nx' = 4*x - 3*y - 1 - x*(-2*x + y)\ny' = 6*x - 2*y + 1 - y*(-2*x + y)\n",
         {{"poly: x + y + 5", "2*x - y", ""}, {"poly: (4*x - 5*y - 3)^2 + 6*(2*x + 1)^2", "2*(1 + 2*x - y)", ""}},
         {},
         {},
         "4,6,-2; -3,-2,1; -1,1,0",
         "complex"},
        {"ex12_50", "Jacobi: complex eigenvalues 1 +- i",
         "vars x y\nsystem\nx' = x + 2*y + 3 - x*(x + 2*y + 1)\ny' = x + y - 3 - y*(x + 2*y + 1)\n",
         {{"poly: x + y - 1", "-x - 2*y", ""}, {"arctan: -x + 3 / 3*x + 4*y - 3", "1", "-x - 2*y"}},
         {{"general", "first-integral", {{"poly: (3*x + 4*y - 3)^2 + (x - 3)^2", "1"}, {"poly: x + y - 1", "-2"}}, ""},
          {"nonautonomous", "first-integral", {{"arctan: -x + 3 / 3*x + 4*y - 3", "1"}}, "t"}},
         {},
         "1,1,1; 2,1,2; 3,-3,1",
         "complex"},
        {"ex12_56", "Jacobi: double elementary divisor",
         "vars x y\nsystem\nx' = -x + y - x*(-x + y)\ny' = x - y - 1 - y*(-x + y)\n",
         {{"poly: x - y - 1", "-1 + x - y", ""}, {"poly: x - 1", "x - y", ""}, {"expfrac: x - y - 2 / x - y - 1", "1", "-1 + x - y"}},
         {{"general", "first-integral", {{"poly: x - y - 1", "1"}, {"poly: x - 1", "-1"}, {"expfrac: x - y - 2 / x - y - 1", "1"}}, ""},
          {"nonautonomous-lines", "first-integral", {{"poly: x - y - 1", "1"}, {"poly: x - 1", "-1"}}, "-t"},
          {"nonautonomous-exp", "first-integral", {{"expfrac: x - y - 2 / x - y - 1", "1"}}, "t"}},
         {},
         "-1,1,-1; 1,-1,1; 0,-1,0",
         "double-divisor"},
        {"ex12_58", "Jacobi: double divisor with a simple divisor of the same eigenvalue",
         "vars x y\nsystem\nx' = x - x*(y + 1)\ny' = y - y*(y + 1)\n",
         {{"poly: y", "-y", ""}, {"poly: x", "-y", ""}, {"expfrac: x + y + 1 / y", "1", "-y"}},
         {{"general", "first-integral", {{"poly: y", "1"}, {"poly: x", "-1"}}, ""},
          {"nonautonomous", "first-integral", {{"expfrac: x + y + 1 / y", "1"}}, "t"}},
         {},
         "1,0,0; 0,1,1; 0,0,1",
         "double-divisor"},
        {"ex12_66", "Jacobi: triple elementary divisor, parameter delta",
         "vars x y\nparam delta\nsystem\nx' = x - y - delta - x*(x + y + 2)\ny' = x + 3*y + delta - y*(x + y + 2)\n",
         {{"poly: x + y", "-x - y", ""}, {"expfrac: 1 / x + y", "1", "-x - y"}},
         {{"general", "first-integral", {{"poly: 2*(x + y)*(x + 1) + delta", "1"}, {"poly: x + y", "-2"}}, ""},
          {"nonautonomous", "first-integral", {{"expfrac: 1 / x + y", "1"}}, "t"}},
         {},
         "1,1,1; -1,3,1; -1,1,2",
         "triple-divisor"},
    };
    return fx;
}

inline const Fixture& find_fixture(const std::string& id) {
    for (auto& f : corpus())
        if (f.id == id) return f;
    throw Error("no fixture named '" + id + "'");
}

struct FixtureReport {
    std::string id;
    bool ok = true;
    std::vector<std::string> lines;
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

// gamma lies in the affine span of the combine output.
inline bool gamma_reachable(const std::vector<CombineResult>& res, const Vec& gamma, bool homogeneous) {
    if (res.empty()) return false;
    std::vector<Vec> dirs;
    Vec base(gamma.size());
    if (homogeneous) {
        for (auto& r : res) dirs.push_back(r.gamma);
    } else {
        base = res[0].gamma;
        for (size_t i = 1; i < res.size(); ++i) {
            Vec d = res[i].gamma;
            for (size_t j = 0; j < d.size(); ++j) d[j] -= base[j];
            dirs.push_back(d);
        }
    }
    Vec target = gamma;
    for (size_t j = 0; j < target.size(); ++j) target[j] -= base[j];
    if (is_zero_vec(target)) return true;
    if (dirs.empty()) return false;
    SMatrix a(gamma.size(), dirs.size()), b(gamma.size(), dirs.size() + 1);
    for (size_t j = 0; j < gamma.size(); ++j) {
        for (size_t k = 0; k < dirs.size(); ++k) a(j, k) = b(j, k) = dirs[k][j];
        b(j, dirs.size()) = target[j];
    }
    return rank(a) == rank(b);
}

}  // namespace detail

inline FixtureReport run_fixture(const Fixture& f) {
    FixtureReport rep;
    rep.id = f.id;
    auto note = [&](bool ok, const std::string& s) {
        rep.lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + s);
        if (!ok) rep.ok = false;
    };
    try {
        SystemDef sys = parse_system(f.system);
        for (auto& c : f.checks) {
            auto pi = parse_candidate(c.candidate, sys.ring());
            auto v = verify_pi(sys, pi);
            bool ok = v && v.report.primary == sys.parse(c.cofactor);
            if (ok && !c.secondary.empty())
                ok = v.report.secondary && *v.report.secondary == sys.parse(c.secondary);
            note(ok, "verify " + c.candidate + " -> " + (v ? to_string(v.report.primary) : v.message));
        }
        for (auto& in : f.integrals) {
            IntegralExpr e;
            Target target = parse_target(in.target, sys);
            e.kind = target.kind;
            std::vector<PartialIntegral> pis;
            Vec gamma;
            for (auto& [cand, g] : in.factors) {
                pis.push_back(parse_candidate(cand, sys.ring()));
                gamma.push_back(Scalar(parse_rational(g)));
                e.factors.push_back({pis.back(), gamma.back()});
            }
            e.time_antiderivative = in.phi.empty() ? Poly(sys.ring()) : sys.parse(in.phi);
            auto chk = verify_integral_expr(sys, e, target);
            std::string msg = in.name + " = " + render_integral(e);
            if (!chk) msg += "  [" + chk.message + "]";
            bool ok = static_cast<bool>(chk);
            if (ok && in.phi.empty()) {
                auto res = combine(sys, pis, target);
                ok = detail::gamma_reachable(res, gamma, target.polynomial(sys).is_zero());
                if (!ok) msg += "  [combine does not reach these exponents]";
            }
            note(ok, "integral " + msg);
        }
        for (auto& s : f.searches) {
            auto hits = search_planar(sys, s.degree);
            std::vector<Poly> want;
            for (auto& e : s.expected) want.push_back(sys.parse(e).primitive());
            bool ok = hits.size() == want.size();
            for (auto& h : hits)
                ok = ok && std::find(want.begin(), want.end(), h.p.primitive()) != want.end();
            std::string found;
            for (auto& h : hits) found += (found.empty() ? "" : ", ") + to_string(h.p);
            note(ok, "search degree " + std::to_string(s.degree) + ": {" + found + "}");
        }
        if (!f.jacobi_matrix.empty()) {
            auto a = parse_matrix(f.jacobi_matrix);
            auto j = jacobi_general_integral(a);
            note(case_name(j.kind) == f.jacobi_case,
                 std::string("jacobi ") + case_name(j.kind) + ": F = " + (j.general ? render_integral(*j.general) : "-"));
            bool same = j.sys.has_value();
            if (same && sys.params().empty()) {
                for (size_t i = 0; i < 2; ++i)
                    same = same && to_string(j.sys->rhs(i)) == to_string(sys.rhs(i));
                note(same, "jacobi system matches the fixture");
            }
            auto na = jacobi_nonautonomous_integral(a);
            for (auto& e : na) note(true, "jacobi nonautonomous " + render_integral(e));
            for (auto& s : j.singular_factors) note(true, "singular factor " + to_string(s));
        }
        auto inverse_note = [&](const InverseResult& r, const std::string& what) {
            bool ok = static_cast<bool>(r) && r.rhs.size() == sys.n();
            for (size_t i = 0; ok && i < sys.n(); ++i) ok = r.rhs[i] == sys.rhs(i);
            note(ok, what + ": " + status_name(r.status) + (r.message.empty() ? "" : " " + r.message));
        };
        if (!f.inverse_rows.empty()) {
            std::vector<InverseRow> rows;
            for (auto& text : f.inverse_rows) {
                auto pos = text.find(", cofactor:");
                auto pi = parse_candidate(text.substr(0, pos), sys.ring());
                Poly m = sys.parse(text.substr(pos + 11));
                if (auto* p = std::get_if<PolyPI>(&pi)) rows.push_back({InverseRow::poly, p->p, m});
                else rows.push_back({InverseRow::exponential, std::get<ConditionalPI>(pi).p, m});
            }
            inverse_note(inverse_system(sys.ring(), rows), "inverse from partial integrals");
        }
        if (!f.inverse_multiple.empty()) {
            auto p = detail::split_commas(f.inverse_multiple);
            inverse_note(inverse_from_multiple_pi(sys.ring(), sys.parse(p[0]), sys.parse(p[1]), std::stoi(p[2]),
                                                  sys.parse(p[3]), sys.parse(p[4])),
                         "inverse from multiple partial integral");
        }
        if (!f.inverse_complex.empty()) {
            auto p = detail::split_commas(f.inverse_complex);
            inverse_note(inverse_from_complex_pi(sys.ring(), sys.parse(p[0]), sys.parse(p[1]), sys.parse(p[2]),
                                                 sys.parse(p[3])),
                         "inverse from complex partial integral");
        }
    } catch (const std::exception& e) {
        note(false, std::string("error: ") + e.what());
    }
    return rep;
}

// Fixtures in corpus order; with jobs > 1 they run concurrently and the
// reports are merged back into that order.
inline std::vector<FixtureReport> run_corpus(unsigned jobs = 1) {
    const auto& fx = corpus();
    std::vector<FixtureReport> out(fx.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < fx.size(); ++i) out[i] = run_fixture(fx[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < jobs; ++w)
        workers.push_back(std::async(std::launch::async, [&] {
            for (size_t i; (i = next++) < fx.size();) out[i] = run_fixture(fx[i]);
        }));
    for (auto& w : workers) w.get();
    return out;
}

inline std::string format_corpus(const std::vector<FixtureReport>& reps) {
    std::ostringstream os;
    size_t passed = 0;
    for (auto& r : reps) {
        os << (r.ok ? "PASS " : "FAIL ") << r.id << "\n";
        for (auto& l : r.lines) os << "  " << l << "\n";
        passed += r.ok;
    }
    os << passed << "/" << reps.size() << " fixtures passed\n";
    return os.str();
}

}  // namespace darboux

#endif
