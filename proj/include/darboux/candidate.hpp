#ifndef DARBOUX_CANDIDATE_HPP
#define DARBOUX_CANDIDATE_HPP

#include "partial_integral.hpp"

#include <algorithm>
#include <cctype>

namespace darboux {

// Candidate strings:
//   poly: P            exp: P              expfrac: Q / P    expfrac: Q / (P)^H
//   arctan: V / U      complex: U + i*V
namespace detail {

// Positions of `c` outside parentheses.
inline std::vector<size_t> top_level(const std::string& s, char c) {
    std::vector<size_t> out;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (depth == 0 && s[i] == c) out.push_back(i);
    }
    return out;
}

inline bool wrapped(const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')' && --depth == 0 && i + 1 != s.size()) return false;
    }
    return true;
}

inline std::pair<std::string, std::string> split_once(const std::string& body, char c, const std::string& what) {
    auto pos = top_level(body, c);
    if (pos.size() != 1) throw ParseError(1, 1, what + " expects exactly one top-level '" + std::string(1, c) + "'");
    return {trim(body.substr(0, pos[0])), trim(body.substr(pos[0] + 1))};
}

}  // namespace detail

inline PartialIntegral parse_candidate(const std::string& text, const Ring& r) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError(1, 1, "candidate needs a kind prefix such as 'poly:'");
    std::string kind = detail::trim(text.substr(0, colon)), body = detail::trim(text.substr(colon + 1));
    int col = static_cast<int>(colon) + 2;
    if (kind == "poly") return PolyPI{parse_poly(body, r, 1, col)};
    if (kind == "exp") return ConditionalPI{parse_poly(body, r, 1, col)};
    if (kind == "expfrac") {
        auto [q, rest] = detail::split_once(body, '/', "expfrac");
        int h = 1;
        auto carets = detail::top_level(rest, '^');
        if (!carets.empty()) {
            std::string base = detail::trim(rest.substr(0, carets.back()));
            std::string ex = detail::trim(rest.substr(carets.back() + 1));
            bool digits = !ex.empty() && std::all_of(ex.begin(), ex.end(), ::isdigit);
            if (digits && detail::wrapped(base)) {
                h = std::stoi(ex);
                rest = base;
            }
        }
        return ExpRationalPI{parse_poly(q, r), parse_poly(rest, r), h};
    }
    if (kind == "arctan") {
        auto [v, u] = detail::split_once(body, '/', "arctan");
        return ExpArctanPI{parse_poly(v, r), parse_poly(u, r)};
    }
    if (kind == "complex") {
        if (r->find("i")) throw ParseError(1, col, "'i' is a declared variable; complex candidates need it free");
        // last top-level "i*" preceded by a sign
        int depth = 0;
        std::optional<size_t> at;
        for (size_t k = 0; k + 1 < body.size(); ++k) {
            if (body[k] == '(') ++depth;
            else if (body[k] == ')') --depth;
            else if (depth == 0 && body[k] == 'i' && (k == 0 || !std::isalnum(static_cast<unsigned char>(body[k - 1]))) &&
                     body[k + 1] == '*')
                at = k;
        }
        if (!at) throw ParseError(1, col, "complex candidate must read U + i*V");
        size_t s = body.find_last_not_of(' ', *at == 0 ? 0 : *at - 1);
        if (*at == 0 || s == std::string::npos || (body[s] != '+' && body[s] != '-'))
            throw ParseError(1, col, "complex candidate must read U + i*V");
        Poly u = parse_poly(detail::trim(body.substr(0, s)), r);
        Poly v = parse_poly(detail::trim(body.substr(*at + 2)), r);
        if (body[s] == '-') v = -v;
        return ComplexPI{u, v};
    }
    throw ParseError(1, 1, "unknown candidate kind '" + kind + "'");
}

// first-integral | last-multiplier | pseudo:RHO | custom:EXPR
inline Target parse_target(const std::string& text, const SystemDef& sys) {
    std::string t = detail::trim(text);
    if (t == "first-integral") return Target::zero();
    if (t == "last-multiplier") return Target::neg_div();
    if (t.rfind("pseudo:", 0) == 0) return Target::pseudo(parse_rational(detail::trim(t.substr(7))));
    if (t.rfind("custom:", 0) == 0) return Target::custom_poly(sys.parse(detail::trim(t.substr(7))));
    throw ParseError(1, 1, "unknown target '" + t + "'");
}

inline std::string candidate_string(const PartialIntegral& pi) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PolyPI>) return "poly: " + to_string(x.p);
            else if constexpr (std::is_same_v<T, ConditionalPI>) return "exp: " + to_string(x.p);
            else if constexpr (std::is_same_v<T, ExpRationalPI>) {
                std::string s = "expfrac: (" + to_string(x.q) + ") / (" + to_string(x.p) + ")";
                return x.h > 1 ? s + "^" + std::to_string(x.h) : s;
            } else if constexpr (std::is_same_v<T, ExpArctanPI>)
                return "arctan: (" + to_string(x.v) + ") / (" + to_string(x.u) + ")";
            else
                return "complex: " + to_string(x.u) + " + i*(" + to_string(x.v) + ")";
        },
        pi);
}

}  // namespace darboux

#endif
