#ifndef DARBOUX_CLI_HPP
#define DARBOUX_CLI_HPP

#include "corpus.hpp"
#include "numeric_expr.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace darboux::cli {

using json = nlohmann::ordered_json;

enum ExitCode { success = 0, failure = 1, usage = 2 };

class UsageError : public Error {
public:
    using Error::Error;
};

// Collects one command's report; prints either text or the JSON envelope.
struct Report {
    std::string command;
    bool ok = true;
    json results = json::array();
    json diagnostics = json::array();
    std::vector<std::string> text;

    void line(const std::string& s) { text.push_back(s); }
    void diag(const std::string& s) { diagnostics.push_back(s); }

    int emit(std::ostream& out, std::ostream& err, bool as_json) const {
        if (as_json) {
            json j;
            j["command"] = command;
            j["status"] = ok ? "ok" : "failed";
            j["results"] = results;
            j["diagnostics"] = diagnostics;
            out << j.dump(2) << "\n";
        } else {
            for (auto& s : text) out << s << "\n";
            for (auto& d : diagnostics) err << "note: " << d.get<std::string>() << "\n";
        }
        return ok ? success : failure;
    }
};

namespace detail {

// A path on disk, or the name of a bundled fixture ("ex11_1.sys").
inline std::string load_system_text(const std::string& path, Report& rep) {
    std::ifstream in(path);
    if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::string stem = std::filesystem::path(path).stem().string();
    for (auto& f : corpus())
        if (f.id == stem) {
            rep.diag("'" + path + "' not found; using the bundled fixture " + stem);
            return f.system;
        }
    throw UsageError("cannot read system file '" + path + "'");
}

inline SystemDef load_system(const std::string& path, Report& rep) { return parse_system(load_system_text(path, rep)); }

inline json poly_json(const Poly& p) { return p.ring() ? json(to_string(p)) : json("0"); }

inline json vec_json(const Vec& v) {
    json out = json::array();
    for (auto& s : v) out.push_back(s.str());
    return out;
}

inline std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

inline const char* candidate_kind(const PartialIntegral& pi) {
    switch (pi.index()) {
        case 0: return "poly";
        case 1: return "exp";
        case 2: return "expfrac";
        case 3: return "arctan";
        default: return "complex";
    }
}

// Names of the primary / secondary cofactors reported by verify_pi.
inline std::pair<const char*, const char*> cofactor_names(const PartialIntegral& pi) {
    if (std::holds_alternative<ExpRationalPI>(pi)) return {"N", "M"};
    if (std::holds_alternative<ExpArctanPI>(pi)) return {"V", "U"};
    if (std::holds_alternative<ComplexPI>(pi)) return {"U", "V"};
    return {"M", nullptr};
}

inline json integral_json(const IntegralExpr& e) {
    json j;
    j["rendered"] = render_integral(e);
    json fs = json::array();
    for (auto& f : e.factors)
        fs.push_back({{"kind", candidate_kind(f.pi)}, {"candidate", candidate_string(f.pi)}, {"gamma", f.gamma.str()}});
    j["factors"] = fs;
    j["time_factor"] = poly_json(e.time_antiderivative);
    return j;
}

inline std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (auto& part : darboux::detail::split_commas(s)) {
        try {
            size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + part + "'");
        }
    }
    return out;
}

inline ParamValues parse_params(const std::vector<std::string>& items) {
    ParamValues out;
    for (auto& it : items) {
        auto eq = it.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects NAME=VALUE, got '" + it + "'");
        auto v = parse_doubles(it.substr(eq + 1));
        if (v.size() != 1) throw UsageError("--param expects one value");
        out[darboux::detail::trim(it.substr(0, eq))] = v[0];
    }
    return out;
}

}  // namespace detail

struct Options {
    bool json = false;
    std::string system;
    std::vector<std::string> candidates;
    int degree = -1;
    std::string cofactor;
    bool conditional = false;
    std::string exp_base;
    int h = 1;
    int deg_q = -1;
    unsigned jobs = 1;
    std::string target = "first-integral";
    bool time_completion = false;
    std::string matrix;
    bool print_system = false;
    std::string vars;
    std::vector<std::string> params;
    std::string multiple;
    std::string complex;
    std::string integral;
    std::string x0;
    double t0 = 0, t1 = 1, step = 1e-3, tol = 1e-6;
    unsigned long n = 0, d = 0;
    std::string fixture;
};

inline Report cmd_verify(const Options& o) {
    Report rep{"verify"};
    auto sys = detail::load_system(o.system, rep);
    for (auto& text : o.candidates) {
        auto pi = parse_candidate(text, sys.ring());
        auto v = verify_pi(sys, pi);
        auto [pn, sn] = detail::cofactor_names(pi);
        json r{{"candidate", text}, {"kind", detail::candidate_kind(pi)}, {"verified", v.ok}};
        if (v) {
            r[pn] = detail::poly_json(v.report.primary);
            std::string s = to_string(v.report.primary);
            if (sn && v.report.secondary) {
                r[sn] = detail::poly_json(*v.report.secondary);
                s = std::string(sn) + " = " + to_string(*v.report.secondary) + ", " + pn + " = " + s;
            }
            r["rendered"] = s;
            rep.line(s);
        } else {
            rep.ok = false;
            r["reason"] = reason_name(v.reason);
            r["message"] = v.message;
            if (v.remainder.ring()) r["remainder"] = to_string(v.remainder);
            rep.line(std::string("not a partial integral (") + reason_name(v.reason) + "): " + v.message);
            if (v.remainder.ring() && !v.remainder.is_zero()) rep.line("remainder: " + to_string(v.remainder));
        }
        rep.results.push_back(r);
    }
    return rep;
}

inline Report cmd_search(const Options& o) {
    Report rep{"search"};
    auto sys = detail::load_system(o.system, rep);
    auto opt = SearchOptions::from_env();
    opt.jobs = o.jobs;
    auto add = [&](const Poly& p, const std::string& extra, json r) {
        r["rendered"] = to_string(p);
        rep.results.push_back(r);
        rep.line(to_string(p) + extra);
    };
    if (o.deg_q >= 0) {
        if (o.exp_base.empty() || o.cofactor.empty()) throw UsageError("--deg-q needs --base and --cofactor");
        auto hits = search_exp_factor(sys, sys.parse(o.exp_base), sys.parse(o.cofactor), o.h, o.deg_q);
        for (auto& hit : hits)
            add(hit.q, "    [N = " + to_string(hit.n) + "]", {{"q", to_string(hit.q)}, {"N", detail::poly_json(hit.n)}});
    } else {
        if (o.degree < 1) throw UsageError("--degree K (K >= 1) is required");
        if (o.conditional) {
            for (auto& p : search_conditional(sys, o.degree)) add(p, "", {{"q", to_string(p)}});
        } else if (!o.cofactor.empty()) {
            for (auto& p : search_fixed_cofactor(sys, sys.parse(o.cofactor), o.degree))
                add(p, "", {{"p", to_string(p)}, {"M", o.cofactor}});
        } else {
            for (auto& hit : search_planar(sys, o.degree, opt))
                add(hit.p, "    [M = " + to_string(hit.cofactor) + "]",
                    {{"p", to_string(hit.p)}, {"M", detail::poly_json(hit.cofactor)}});
        }
    }
    if (rep.results.empty()) rep.line("(none)");
    return rep;
}

inline Report cmd_combine(const Options& o) {
    Report rep{"combine"};
    auto sys = detail::load_system(o.system, rep);
    if (o.candidates.empty()) throw UsageError("at least one --pi is required");
    std::vector<PartialIntegral> pis;
    for (auto& c : o.candidates) pis.push_back(parse_candidate(c, sys.ring()));
    Target target = parse_target(o.target, sys);
    auto res = combine(sys, pis, target, o.time_completion);
    if (res.empty()) {
        rep.ok = false;
        rep.line("no combination of the given partial integrals meets the target");
    }
    for (auto& r : res) {
        auto chk = verify_integral_expr(sys, r.expr, target);
        json j = detail::integral_json(r.expr);
        j["gamma"] = detail::vec_json(r.gamma);
        j["verified"] = chk.ok;
        rep.results.push_back(j);
        rep.line("gamma = " + detail::vec_str(r.gamma));
        rep.line("F = " + render_integral(r.expr));
        if (!chk) {
            rep.ok = false;
            rep.line("identity check failed: " + chk.message);
        }
    }
    return rep;
}

inline Report cmd_jacobi(const Options& o) {
    Report rep{"jacobi"};
    auto a = parse_matrix(o.matrix);
    auto j = jacobi_general_integral(a);
    json r;
    r["case"] = case_name(j.kind);
    json ev = json::array();
    for (auto& b : j.eigen.blocks) ev.push_back(b.lambda.str());
    r["eigenvalues"] = ev;
    rep.line(std::string("case: ") + case_name(j.kind));
    std::string evs;
    for (auto& e : ev) evs += (evs.empty() ? "" : ", ") + e.get<std::string>();
    rep.line("eigenvalues: " + evs);
    if (o.print_system && j.sys) {
        r["system"] = print_system(*j.sys);
        rep.line(print_system(*j.sys));
    }
    json ints = json::array();
    if (j.general) {
        auto gj = detail::integral_json(*j.general);
        gj["autonomous"] = true;
        ints.push_back(gj);
        rep.line("F = " + render_integral(*j.general));
    }
    if (j.kind != JacobiCase::degenerate)
        for (auto& e : jacobi_nonautonomous_integral(a)) {
            auto nj = detail::integral_json(e);
            nj["autonomous"] = false;
            ints.push_back(nj);
            rep.line("Psi = " + render_integral(e));
        }
    r["integrals"] = ints;
    json sf = json::array();
    for (auto& s : j.singular_factors) {
        sf.push_back(to_string(s));
        rep.line("singular factor: " + to_string(s));
    }
    r["singular_factors"] = sf;
    if (!j.note.empty()) rep.diag(j.note);
    rep.results.push_back(r);
    return rep;
}

inline Report cmd_inverse(const Options& o) {
    Report rep{"inverse"};
    std::istringstream vs(o.vars);
    std::vector<std::string> vars, params;
    for (std::string v; vs >> v;) vars.push_back(v);
    if (vars.empty()) throw UsageError("--vars is required");
    for (auto& p : o.params) params.push_back(p);
    Ring r = make_ring(vars, params);
    InverseResult res;
    if (!o.multiple.empty()) {
        auto p = darboux::detail::split_commas(o.multiple);
        if (p.size() != 5) throw UsageError("--multiple expects p,M,h,q,N");
        res = inverse_from_multiple_pi(r, parse_poly(p[0], r), parse_poly(p[1], r), std::stoi(p[2]),
                                       parse_poly(p[3], r), parse_poly(p[4], r));
    } else if (!o.complex.empty()) {
        auto p = darboux::detail::split_commas(o.complex);
        if (p.size() != 4) throw UsageError("--complex expects u,v,U,V");
        res = inverse_from_complex_pi(r, parse_poly(p[0], r), parse_poly(p[1], r), parse_poly(p[2], r),
                                      parse_poly(p[3], r));
    } else {
        std::vector<InverseRow> rows;
        for (auto& text : o.candidates) {
            auto pos = text.find(", cofactor:");
            if (pos == std::string::npos) throw UsageError("--pi expects \"poly: G, cofactor: M\"");
            auto pi = parse_candidate(text.substr(0, pos), r);
            Poly m = parse_poly(text.substr(pos + 11), r);
            if (auto* g = std::get_if<PolyPI>(&pi)) rows.push_back({InverseRow::poly, g->p, m});
            else if (auto* w = std::get_if<ConditionalPI>(&pi)) rows.push_back({InverseRow::exponential, w->p, m});
            else throw UsageError("inverse rows are poly: or exp: candidates");
        }
        res = inverse_system(r, rows);
    }
    json j{{"status", status_name(res.status)}};
    if (res) {
        json rhs = json::array();
        auto st = r->indices(Role::state);
        for (size_t i = 0; i < res.rhs.size(); ++i) {
            std::string line = r->vars()[st[i]].name + "' = " + to_string(res.rhs[i]);
            rhs.push_back(line);
            rep.line(line);
        }
        j["system"] = rhs;
        j["delta"] = detail::poly_json(res.delta);
        j["degree_ok"] = res.degree_ok;
        if (!res.degree_ok) rep.diag("a prescribed cofactor exceeds deg_x <= d - 1 for the constructed system");
        if (!res.sys) rep.diag("every right-hand side is constant");
    } else {
        rep.ok = false;
        rep.line(std::string("inverse construction failed (") + status_name(res.status) + "): " + res.message);
        if (res.remainder.ring() && !res.remainder.is_zero()) {
            j["remainder"] = to_string(res.remainder);
            rep.line("remainder: " + to_string(res.remainder));
        }
    }
    if (!res.message.empty()) j["message"] = res.message;
    rep.results.push_back(j);
    return rep;
}

inline Report cmd_check(const Options& o) {
    Report rep{"check"};
    auto sys = detail::load_system(o.system, rep);
    auto params = detail::parse_params(o.params);
    auto x0 = detail::parse_doubles(o.x0);
    if (x0.size() != sys.n()) throw UsageError("--x0 needs " + std::to_string(sys.n()) + " values");
    auto f = parse_numeric_function(o.integral, sys, params);
    json j{{"integral", o.integral}, {"step", o.step}, {"t1", o.t1}};
    try {
        auto tr = integrate_rk4(sys, x0, o.t0, o.t1, o.step, params);
        auto c = check_conservation(f, tr, o.tol);
        rep.ok = c.ok;
        j["max_drift"] = c.max_drift;
        j["segments"] = c.segments;
        j["conserved"] = c.ok;
        std::ostringstream os;
        os << (c.ok ? "conserved" : "NOT conserved") << ": max relative drift " << c.max_drift << " (tol " << o.tol
           << ", " << tr.times.size() - 1 << " RK4 steps, " << c.segments << " segment(s))";
        rep.line(os.str());
    } catch (const BlowUp& e) {
        rep.ok = false;
        j["error"] = e.what();
        rep.line(std::string("trajectory blew up: ") + e.what());
    } catch (const SingularLocus& e) {
        rep.ok = false;
        j["error"] = e.what();
        rep.line(std::string("trajectory reached the singular locus: ") + e.what());
    }
    rep.results.push_back(j);
    return rep;
}

inline Report cmd_capacity(const Options& o) {
    Report rep{"capacity"};
    auto c = darboux_capacity(o.n, o.d);
    rep.results.push_back({{"n", o.n}, {"d", o.d}, {"capacity", c.get_str()}});
    rep.line(c.get_str());
    return rep;
}

inline Report cmd_corpus(const Options& o) {
    Report rep{"corpus"};
    std::vector<FixtureReport> reps;
    if (!o.fixture.empty()) reps.push_back(run_fixture(find_fixture(o.fixture)));
    else reps = run_corpus(o.jobs);
    for (auto& r : reps) {
        rep.ok = rep.ok && r.ok;
        rep.results.push_back({{"id", r.id}, {"ok", r.ok}, {"lines", r.lines}});
    }
    std::istringstream text(format_corpus(reps));
    for (std::string l; std::getline(text, l);) rep.line(l);
    return rep;
}

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Partial integrals, first integrals and last multipliers of polynomial ODE systems", "darboux"};
    app.require_subcommand(1);
    Options o;
    auto add_json = [&](CLI::App* s) { s->add_flag("--json", o.json, "Machine-readable report"); };
    auto add_system = [&](CLI::App* s) { s->add_option("--system", o.system, "System file")->required(); };

    auto* verify = app.add_subcommand("verify", "Verify a candidate partial integral and print its cofactor");
    add_system(verify);
    verify->add_option("--candidate", o.candidates, "poly: P | exp: P | expfrac: Q / P | arctan: V / U | complex: U + i*V")
        ->required();
    add_json(verify);

    auto* search = app.add_subcommand("search", "Search for partial integrals");
    search->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    add_system(search);
    search->add_option("--degree", o.degree, "Degree of the searched polynomial");
    search->add_option("--cofactor", o.cofactor, "Prescribed cofactor");
    search->add_flag("--conditional", o.conditional, "Search exp(q) factors with deg q <= K");
    search->add_option("--base", o.exp_base, "Base polynomial p for exp(q / p^h)");
    search->add_option("--h", o.h, "Exponent h for exp(q / p^h)")->check(CLI::PositiveNumber);
    search->add_option("--deg-q", o.deg_q, "Degree bound on q for exp(q / p^h)");
    search->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_json(search);

    auto* comb = app.add_subcommand("combine", "Assemble first integrals or multipliers from partial integrals");
    add_system(comb);
    comb->add_option("--pi", o.candidates, "Partial integral (repeatable)")->required();
    comb->add_option("--target", o.target, "first-integral | last-multiplier | pseudo:RHO | custom:EXPR");
    comb->add_flag("--time", o.time_completion, "Allow an exp(-Phi(t)) completion");
    add_json(comb);

    auto* jac = app.add_subcommand("jacobi", "Closed-form integrals of the Jacobi system");
    jac->add_option("--matrix", o.matrix, "\"a1,a2,a3; b1,b2,b3; c1,c2,c3\"")->required();
    jac->add_flag("--system", o.print_system, "Print the system");
    add_json(jac);

    auto* inv = app.add_subcommand("inverse", "Build the system with prescribed partial integrals");
    inv->add_option("--vars", o.vars, "State variables, e.g. \"x y\"")->required();
    inv->add_option("--param", o.params, "Parameter name (repeatable)");
    inv->add_option("--pi", o.candidates, "\"poly: G, cofactor: M\" or \"exp: W, cofactor: M\" (repeatable)");
    inv->add_option("--multiple", o.multiple, "p,M,h,q,N");
    inv->add_option("--complex", o.complex, "u,v,U,V");
    add_json(inv);

    auto* chk = app.add_subcommand("check", "Numerical conservation check along an RK4 trajectory");
    add_system(chk);
    chk->add_option("--integral", o.integral, "Expression, e.g. \"(x^2 + y^2)*exp(-2*atan(y/x))\"")->required();
    chk->add_option("--x0", o.x0, "Initial state, comma separated")->required();
    chk->add_option("--t0", o.t0, "Start time");
    chk->add_option("--t1", o.t1, "End time");
    chk->add_option("--step", o.step, "RK4 step")->check(CLI::PositiveNumber);
    chk->add_option("--tol", o.tol, "Relative drift tolerance");
    chk->add_option("--param", o.params, "NAME=VALUE (repeatable)");
    add_json(chk);

    auto* cap = app.add_subcommand("capacity", "Number of partial integrals that guarantees a first integral");
    cap->add_option("--n", o.n, "Number of state variables")->required()->check(CLI::PositiveNumber);
    cap->add_option("--d", o.d, "System degree")->required()->check(CLI::PositiveNumber);
    add_json(cap);

    auto* corp = app.add_subcommand("corpus", "Run the bundled example fixtures");
    corp->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    corp->add_option("--fixture", o.fixture, "Run a single fixture");
    add_json(corp);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs[0]->help());
        return usage;
    }

    auto* sub = app.get_subcommands()[0];
    const std::string name = sub->get_name();
    try {
        Report rep;
        if (name == "verify") rep = cmd_verify(o);
        else if (name == "search") rep = cmd_search(o);
        else if (name == "combine") rep = cmd_combine(o);
        else if (name == "jacobi") rep = cmd_jacobi(o);
        else if (name == "inverse") rep = cmd_inverse(o);
        else if (name == "check") rep = cmd_check(o);
        else if (name == "capacity") rep = cmd_capacity(o);
        else rep = cmd_corpus(o);
        return rep.emit(out, err, o.json);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << sub->help();
        return usage;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        Report rep{name};
        rep.ok = false;
        rep.diag(e.what());
        if (!o.json) err << "error: " << e.what() << "\n";
        else rep.emit(out, err, true);
        return failure;
    }
}

}  // namespace darboux::cli

#endif
