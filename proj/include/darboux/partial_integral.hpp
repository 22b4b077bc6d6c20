#ifndef DARBOUX_PARTIAL_INTEGRAL_HPP
#define DARBOUX_PARTIAL_INTEGRAL_HPP

#include "system.hpp"

#include <optional>
#include <variant>

namespace darboux {

// p with d p = p M.
struct PolyPI {
    Poly p;
};
// exp(p) with d p = M.
struct ConditionalPI {
    Poly p;
};
// exp(q / p^h).
struct ExpRationalPI {
    Poly q;
    Poly p;
    int h = 1;
};
// exp(arctan(v / u)).
struct ExpArctanPI {
    Poly v;
    Poly u;
};
// u + i v.
struct ComplexPI {
    Poly u;
    Poly v;
};

using PartialIntegral = std::variant<PolyPI, ConditionalPI, ExpRationalPI, ExpArctanPI, ComplexPI>;

inline std::string kind_name(const PartialIntegral& pi) {
    static const char* names[] = {"poly", "conditional", "exp-rational", "exp-arctan", "complex"};
    return names[pi.index()];
}

struct CofactorReport {
    Poly primary;
    std::optional<Poly> secondary;
    bool degree_ok = false;
};

enum class FailReason { none, non_divisible, degree, not_coprime, zero_candidate, routes_disagree, component };

inline const char* reason_name(FailReason r) {
    switch (r) {
        case FailReason::none: return "ok";
        case FailReason::non_divisible: return "non-divisible";
        case FailReason::degree: return "cofactor-degree";
        case FailReason::not_coprime: return "not-coprime";
        case FailReason::zero_candidate: return "zero-candidate";
        case FailReason::routes_disagree: return "routes-disagree";
        case FailReason::component: return "component-not-partial-integral";
    }
    return "?";
}

struct Verification {
    bool ok = false;
    FailReason reason = FailReason::none;
    CofactorReport report;
    Poly remainder;
    std::string message;

    explicit operator bool() const { return ok; }

    static Verification success(Poly primary, std::optional<Poly> secondary = std::nullopt) {
        Verification v;
        v.ok = true;
        v.report = {std::move(primary), std::move(secondary), true};
        return v;
    }
    static Verification failure(FailReason r, std::string msg, Poly rem = Poly()) {
        Verification v;
        v.reason = r;
        v.message = std::move(msg);
        v.remainder = std::move(rem);
        return v;
    }
};

enum class IntegralKind { first_integral, last_multiplier, pseudo_multiplier, custom };

inline const char* kind_name(IntegralKind k) {
    switch (k) {
        case IntegralKind::first_integral: return "first-integral";
        case IntegralKind::last_multiplier: return "last-multiplier";
        case IntegralKind::pseudo_multiplier: return "pseudo-multiplier";
        case IntegralKind::custom: return "custom";
    }
    return "?";
}

// The identity sum(gamma_j M_j) - phi(t) must reach.
struct Target {
    IntegralKind kind = IntegralKind::first_integral;
    Rational rho = 0;
    Poly custom;

    static Target zero() { return {}; }
    static Target neg_div() { return {IntegralKind::last_multiplier, 0, Poly()}; }
    static Target pseudo(Rational r) { return {IntegralKind::pseudo_multiplier, std::move(r), Poly()}; }
    static Target custom_poly(Poly p) { return {IntegralKind::custom, 0, std::move(p)}; }

    Poly polynomial(const SystemDef& sys) const {
        switch (kind) {
            case IntegralKind::first_integral: return Poly(sys.ring());
            case IntegralKind::last_multiplier: return -divergence(sys);
            case IntegralKind::pseudo_multiplier: return divergence(sys) * Scalar(rho);
            case IntegralKind::custom: return custom.is_zero() ? Poly(sys.ring()) : custom;
        }
        return Poly(sys.ring());
    }
};

struct Factor {
    PartialIntegral pi;
    Scalar gamma;
};

// prod factor^gamma * exp(-Phi(t)); Phi is stored as a polynomial in t.
struct IntegralExpr {
    std::vector<Factor> factors;
    Poly time_antiderivative;
    IntegralKind kind = IntegralKind::first_integral;
    Rational rho = 0;
};

}  // namespace darboux

#endif
