#ifndef DARBOUX_NUMERIC_EXPR_HPP
#define DARBOUX_NUMERIC_EXPR_HPP

#include "numeric.hpp"
#include "parser.hpp"

#include <cctype>
#include <memory>

namespace darboux {

// Real-valued expressions over the system variables with exp, log, atan,
// sqrt and abs; accepts the text produced by render_integral.
namespace detail {

struct NumNode {
    enum Op { num, var, add, sub, mul, div, pow, neg, fn } op;
    double value = 0;
    size_t index = 0;
    std::string fname;
    std::shared_ptr<NumNode> a, b;

    double eval(const std::vector<double>& z) const {
        switch (op) {
            case num: return value;
            case var: return z[index];
            case add: return a->eval(z) + b->eval(z);
            case sub: return a->eval(z) - b->eval(z);
            case mul: return a->eval(z) * b->eval(z);
            case div: {
                double d = b->eval(z);
                if (std::abs(d) < singular_guard) throw SingularLocus(0);
                return a->eval(z) / d;
            }
            case pow: {
                double base = a->eval(z), e = b->eval(z);
                if (std::abs(base) < singular_guard && e < 0) throw SingularLocus(0);
                if (base < 0 && e != std::floor(e)) return std::pow(-base, e);
                return std::pow(base, e);
            }
            case neg: return -a->eval(z);
            case fn: {
                double v = a->eval(z);
                if (fname == "exp") return std::exp(v);
                if (fname == "log") return std::log(std::abs(v));
                if (fname == "atan") return std::atan(v);
                if (fname == "sqrt") return std::sqrt(v);
                return std::abs(v);
            }
        }
        return 0;
    }
};

using NumPtr = std::shared_ptr<NumNode>;

class NumParser {
public:
    NumParser(const std::string& s, const VarTable& vars) : s_(s), vars_(vars) {}

    NumPtr parse() {
        auto e = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }
    std::vector<NumPtr> branches;  // denominators of atan arguments

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& m) { throw ParseError(1, static_cast<int>(pos_) + 1, m); }
    static NumPtr node(NumNode::Op op, NumPtr a = nullptr, NumPtr b = nullptr) {
        auto n = std::make_shared<NumNode>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NumPtr expr() {
        auto l = term();
        for (;;) {
            if (eat('+')) l = node(NumNode::add, l, term());
            else if (eat('-')) l = node(NumNode::sub, l, term());
            else return l;
        }
    }
    NumPtr term() {
        auto l = unary();
        for (;;) {
            if (eat('*')) l = node(NumNode::mul, l, unary());
            else if (eat('/')) l = node(NumNode::div, l, unary());
            else return l;
        }
    }
    NumPtr unary() {
        if (eat('-')) return node(NumNode::neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    NumPtr power() {
        auto b = primary();
        if (eat('^')) return node(NumNode::pow, b, unary());
        return b;
    }
    NumPtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (eat('(')) {
            auto e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            auto n = node(NumNode::num);
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t st = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(st, pos_ - st);
            if (name == "exp" || name == "log" || name == "atan" || name == "sqrt" || name == "abs") {
                if (!eat('(')) fail("expected '(' after " + name);
                auto arg = expr();
                if (!eat(')')) fail("expected ')'");
                if (name == "atan" && arg->op == NumNode::div) branches.push_back(arg->b);
                auto n = node(NumNode::fn, arg);
                n->fname = name;
                return n;
            }
            auto idx = vars_.find(name);
            if (!idx) {
                pos_ = st;
                fail("unknown identifier '" + name + "'");
            }
            auto n = node(NumNode::var);
            n->index = *idx;
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    const VarTable& vars_;
    size_t pos_ = 0;
};

}  // namespace detail

inline NumericFunction parse_numeric_function(const std::string& text, const SystemDef& sys,
                                              const ParamValues& params = {}) {
    detail::NumParser p(text, *sys.ring());
    auto root = p.parse();
    auto branches = p.branches;
    auto pt = std::make_shared<PointBuilder>(sys, params);
    NumericFunction f;
    f.value = [root, pt](double t, const std::vector<double>& x) {
        try {
            return root->eval((*pt)(t, x));
        } catch (const SingularLocus&) {
            throw SingularLocus(t);
        }
    };
    f.branch = [branches, pt](double t, const std::vector<double>& x) {
        auto z = (*pt)(t, x);
        std::vector<double> out;
        for (auto& b : branches) out.push_back(b->eval(z));
        return out;
    };
    return f;
}

}  // namespace darboux

#endif
