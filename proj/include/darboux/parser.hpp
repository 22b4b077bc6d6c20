#ifndef DARBOUX_PARSER_HPP
#define DARBOUX_PARSER_HPP

#include "poly.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace darboux {

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& msg)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line(line),
          column(column),
          message(msg) {}
    int line;
    int column;
    std::string message;
};

namespace detail {

struct Token {
    enum Kind { integer, name, op, end } kind;
    std::string text;
    int column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& s, int line, int col0) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        int col = col0 + static_cast<int>(i);
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E'))
                throw ParseError(line, col, "non-rational literal");
            out.push_back({Token::integer, s.substr(i, j - i), col});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::name, s.substr(i, j - i), col});
            i = j;
        } else if (std::string("+-*/^()'=").find(c) != std::string::npos) {
            out.push_back({Token::op, std::string(1, c), col});
            ++i;
        } else if (c == '.') {
            throw ParseError(line, col, "non-rational literal");
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::end, "", col0 + static_cast<int>(s.size())});
    return out;
}

class ExprParser {
public:
    ExprParser(std::vector<Token> toks, Ring ring, int line)
        : toks_(std::move(toks)), ring_(std::move(ring)), line_(line) {}

    Poly parse_all() {
        Poly p = expr();
        if (peek().kind != Token::end) fail("unexpected '" + peek().text + "'");
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool is_op(const char* s) const { return peek().kind == Token::op && peek().text == s; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, peek().column, msg); }

    Poly expr() {
        Poly p = term();
        while (is_op("+") || is_op("-")) {
            bool minus = peek().text == "-";
            ++pos_;
            Poly t = term();
            p = minus ? p - t : p + t;
        }
        return p;
    }
    Poly term() {
        Poly p = factor();
        while (is_op("*")) {
            ++pos_;
            p = p * factor();
        }
        return p;
    }
    // unary minus binds looser than '^': -x^2 is -(x^2)
    Poly factor() {
        if (is_op("-")) {
            ++pos_;
            return -factor();
        }
        Poly b = base();
        if (is_op("^")) {
            ++pos_;
            if (peek().kind != Token::integer) fail("expected natural exponent");
            unsigned long e = std::stoul(peek().text);
            ++pos_;
            return b.pow(static_cast<unsigned>(e));
        }
        return b;
    }
    Poly base() {
        const Token& t = peek();
        if (t.kind == Token::integer) {
            Rational q(t.text);
            ++pos_;
            if (is_op("/")) {
                ++pos_;
                if (peek().kind != Token::integer) fail("expected positive integer denominator");
                Integer d(peek().text);
                if (d == 0) fail("zero denominator");
                ++pos_;
                q /= Rational(d);
            }
            return Poly(ring_, Scalar(q));
        }
        if (t.kind == Token::name) {
            auto idx = ring_->find(t.text);
            if (!idx) fail("unknown identifier '" + t.text + "'");
            ++pos_;
            return Poly::var(ring_, *idx);
        }
        if (is_op("(")) {
            ++pos_;
            Poly p = expr();
            if (!is_op(")")) fail("expected ')'");
            ++pos_;
            return p;
        }
        if (t.kind == Token::end) fail("unexpected end of expression");
        fail("unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    Ring ring_;
    int line_;
};

}  // namespace detail

// Parse an expression over the ring; no implicit multiplication.
inline Poly parse_poly(const std::string& text, const Ring& ring, int line = 1, int col0 = 1) {
    detail::ExprParser p(detail::tokenize(text, line, col0), ring, line);
    return p.parse_all();
}

}  // namespace darboux

#endif
