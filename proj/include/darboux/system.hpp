#ifndef DARBOUX_SYSTEM_HPP
#define DARBOUX_SYSTEM_HPP

#include "parser.hpp"

#include <sstream>

namespace darboux {

// dx_i/dt = X_i(t, x) with polynomial right-hand sides.
class SystemDef {
public:
    SystemDef() = default;
    SystemDef(Ring ring, std::vector<Poly> rhs) : ring_(std::move(ring)), rhs_(std::move(rhs)) {
        if (rhs_.size() != ring_->num_states()) throw Error("one right-hand side per state variable");
        if (!ring_->time_index()) throw Error("system ring needs the time variable t");
        for (auto& p : rhs_) {
            if (p.is_zero()) p = Poly(ring_);
            Poly::check_rings(p, Poly(ring_));
        }
        d_ = 0;
        for (auto& p : rhs_) d_ = std::max(d_, p.deg_x());
        if (d_ < 1) throw Error("system degree must be at least 1");
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& rhs() const { return rhs_; }
    const Poly& rhs(size_t i) const { return rhs_[i]; }
    size_t n() const { return rhs_.size(); }
    int degree() const { return d_; }
    std::vector<size_t> states() const { return ring_->indices(Role::state); }
    std::vector<size_t> params() const { return ring_->indices(Role::parameter); }
    size_t time() const { return *ring_->time_index(); }
    bool autonomous() const {
        for (auto& p : rhs_)
            if (p.depends_on(time())) return false;
        return true;
    }

    Poly var(const std::string& name) const { return Poly::var(ring_, name); }
    Poly constant(const Scalar& c) const { return Poly(ring_, c); }
    Poly parse(const std::string& text) const { return parse_poly(text, ring_); }

private:
    Ring ring_;
    std::vector<Poly> rhs_;
    int d_ = 0;
};

// Derivative along the flow: d_t f + sum X_i d_{x_i} f.
inline Poly derive(const SystemDef& sys, const Poly& f) {
    Poly out = f.derivative(sys.time());
    auto st = sys.states();
    for (size_t i = 0; i < st.size(); ++i) out += sys.rhs(i) * f.derivative(st[i]);
    if (!out.ring()) out = Poly(sys.ring());
    return out;
}

inline Poly divergence(const SystemDef& sys) {
    Poly out(sys.ring());
    auto st = sys.states();
    for (size_t i = 0; i < st.size(); ++i) out += sys.rhs(i).derivative(st[i]);
    return out;
}

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

struct Statement {
    std::string text;
    int line;
    int column;
};

inline std::vector<Statement> split_statements(const std::string& doc) {
    std::vector<Statement> out;
    std::istringstream in(doc);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        size_t start = 0;
        while (start <= raw.size()) {
            size_t semi = raw.find(';', start);
            std::string piece = raw.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
            size_t lead = piece.find_first_not_of(" \t\r");
            if (lead != std::string::npos)
                out.push_back({trim(piece), line, static_cast<int>(start + lead) + 1});
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
    }
    return out;
}

}  // namespace detail

// Line-oriented system grammar: "vars", "param", "system", "x' = expr",
// '#' comments; ';' also separates statements.
inline SystemDef parse_system(const std::string& doc) {
    auto stmts = detail::split_statements(doc);
    std::vector<std::string> vars, params;
    std::vector<detail::Statement> assigns;
    for (auto& s : stmts) {
        std::istringstream ws(s.text);
        std::string head;
        ws >> head;
        if (head == "vars" || head == "param" || head == "params") {
            std::string name;
            int col = s.column + static_cast<int>(head.size());
            while (ws >> name) {
                if (!detail::valid_name(name)) throw ParseError(s.line, col, "invalid name '" + name + "'");
                if (name == "t") throw ParseError(s.line, col, "'t' is reserved for time");
                (head == "vars" ? vars : params).push_back(name);
            }
            if (head == "vars" && vars.empty()) throw ParseError(s.line, s.column, "vars needs at least one name");
        } else if (head == "system") {
            if (s.text != "system") throw ParseError(s.line, s.column, "unexpected text after 'system'");
        } else {
            assigns.push_back(s);
        }
    }
    if (vars.empty()) throw ParseError(1, 1, "missing 'vars' declaration");
    Ring ring;
    try {
        ring = make_ring(vars, params);
    } catch (const Error& e) {
        throw ParseError(1, 1, e.what());
    }
    std::vector<std::optional<Poly>> rhs(vars.size());
    for (auto& s : assigns) {
        size_t q = s.text.find('\'');
        size_t eq = s.text.find('=');
        if (q == std::string::npos || eq == std::string::npos || eq < q)
            throw ParseError(s.line, s.column, "expected \"name' = expr\"");
        std::string name = detail::trim(s.text.substr(0, q));
        if (detail::trim(s.text.substr(q + 1, eq - q - 1)) != "")
            throw ParseError(s.line, s.column + static_cast<int>(q) + 1, "expected '=' after \"'\"");
        auto idx = ring->find(name);
        if (!idx || (*ring)[*idx].role != Role::state)
            throw ParseError(s.line, s.column, "'" + name + "' is not a state variable");
        if (rhs[*idx]) throw ParseError(s.line, s.column, "duplicate equation for '" + name + "'");
        rhs[*idx] = parse_poly(s.text.substr(eq + 1), ring, s.line, s.column + static_cast<int>(eq) + 1);
    }
    std::vector<Poly> out;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (!rhs[i]) throw ParseError(1, 1, "missing equation for '" + vars[i] + "'");
        out.push_back(*rhs[i]);
    }
    try {
        return SystemDef(ring, out);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(1, 1, e.what());
    }
}

inline std::string print_system(const SystemDef& sys) {
    std::string out = "vars";
    for (size_t i : sys.states()) out += " " + (*sys.ring())[i].name;
    out += "\n";
    auto ps = sys.params();
    if (!ps.empty()) {
        out += "param";
        for (size_t i : ps) out += " " + (*sys.ring())[i].name;
        out += "\n";
    }
    out += "system\n";
    auto st = sys.states();
    for (size_t i = 0; i < st.size(); ++i)
        out += (*sys.ring())[st[i]].name + "' = " + to_string(sys.rhs(i)) + "\n";
    return out;
}

}  // namespace darboux

#endif
