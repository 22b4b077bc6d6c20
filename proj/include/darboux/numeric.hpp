#ifndef DARBOUX_NUMERIC_HPP
#define DARBOUX_NUMERIC_HPP

#include "partial_integral.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace darboux {

class BlowUp : public Error {
public:
    BlowUp(double t) : Error("non-finite state after t = " + std::to_string(t)), last_time(t) {}
    double last_time;
};

class SingularLocus : public Error {
public:
    SingularLocus(double t) : Error("trajectory meets the singular locus at t = " + std::to_string(t)), time(t) {}
    double time;
};

using ParamValues = std::map<std::string, double>;

// Polynomial flattened to double coefficients over the full variable table.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const Poly& p) {
        for (auto& [m, c] : p.terms()) terms_.push_back({m, c.to_double()});
    }
    double operator()(const std::vector<double>& point) const {
        double s = 0;
        for (auto& [m, c] : terms_) {
            double v = c;
            for (size_t i = 0; i < m.size(); ++i)
                for (int k = 0; k < m[i]; ++k) v *= point[i];
            s += v;
        }
        return s;
    }

private:
    std::vector<std::pair<Monomial, double>> terms_;
};

// Full variable vector (states, t, parameters) from a state vector.
class PointBuilder {
public:
    PointBuilder(const SystemDef& sys, const ParamValues& params) : base_(sys.ring()->size(), 0.0), time_(sys.time()) {
        for (size_t i : sys.params()) {
            auto it = params.find(sys.ring()->vars()[i].name);
            if (it == params.end()) throw Error("parameter " + sys.ring()->vars()[i].name + " needs a numeric value");
            base_[i] = it->second;
        }
        states_ = sys.states();
    }
    std::vector<double> operator()(double t, const std::vector<double>& x) const {
        std::vector<double> p = base_;
        for (size_t i = 0; i < states_.size(); ++i) p[states_[i]] = x[i];
        p[time_] = t;
        return p;
    }

private:
    std::vector<double> base_;
    size_t time_;
    std::vector<size_t> states_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    double step = 0;
    std::string method = "rk4";
};

// Classical fixed-step RK4; the step is shrunk slightly so it divides the span.
inline Trajectory integrate_rk4(const SystemDef& sys, const std::vector<double>& x0, double t0, double t1, double step,
                                const ParamValues& params = {}) {
    if (!(step > 0) || !(t1 > t0)) throw Error("need step > 0 and t1 > t0");
    if (x0.size() != sys.n()) throw Error("initial state has the wrong dimension");
    PointBuilder pt(sys, params);
    std::vector<CompiledPoly> f;
    for (auto& p : sys.rhs()) f.emplace_back(p);
    auto field = [&](double t, const std::vector<double>& x) {
        auto p = pt(t, x);
        std::vector<double> out(f.size());
        for (size_t i = 0; i < f.size(); ++i) out[i] = f[i](p);
        return out;
    };
    auto axpy = [](const std::vector<double>& x, double a, const std::vector<double>& k) {
        std::vector<double> out(x);
        for (size_t i = 0; i < x.size(); ++i) out[i] += a * k[i];
        return out;
    };
    long n = std::max(1L, static_cast<long>(std::ceil((t1 - t0) / step - 1e-9)));
    double h = (t1 - t0) / n;
    Trajectory tr;
    tr.step = h;
    tr.times.push_back(t0);
    tr.states.push_back(x0);
    std::vector<double> x = x0;
    for (long s = 0; s < n; ++s) {
        double t = t0 + s * h;
        auto k1 = field(t, x);
        auto k2 = field(t + h / 2, axpy(x, h / 2, k1));
        auto k3 = field(t + h / 2, axpy(x, h / 2, k2));
        auto k4 = field(t + h, axpy(x, h, k3));
        for (size_t i = 0; i < x.size(); ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        for (double v : x)
            if (!std::isfinite(v)) throw BlowUp(tr.times.back());
        tr.times.push_back(t0 + (s + 1) * h);
        tr.states.push_back(x);
    }
    return tr;
}

// Numeric function of (t, x) with the values whose sign changes split
// arctan branches.
struct NumericFunction {
    std::function<double(double, const std::vector<double>&)> value;
    std::function<std::vector<double>(double, const std::vector<double>&)> branch = nullptr;
};

inline constexpr double singular_guard = 1e-9;

// F = prod |p|^gamma * exp(...) * exp(-Phi(t)). Integer exponents keep the sign of p.
inline NumericFunction make_evaluator(const SystemDef& sys, const IntegralExpr& e, const ParamValues& params = {}) {
    struct Part {
        int kind;  // 0 poly, 1 exp(p), 2 exp(q/p^h), 3 exp(atan(v/u))
        CompiledPoly a, b;
        int h = 1;
        double gamma;
        bool integer_gamma;
    };
    auto parts = std::make_shared<std::vector<Part>>();
    for (auto& f : e.factors) {
        if (!f.gamma.is_real()) throw Error("numeric evaluation needs real exponents");
        Part p;
        p.gamma = f.gamma.to_double();
        p.integer_gamma = f.gamma.is_rational() && f.gamma.a().get_den() == 1;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, PolyPI>) {
                    p.kind = 0;
                    p.a = CompiledPoly(x.p);
                } else if constexpr (std::is_same_v<T, ConditionalPI>) {
                    p.kind = 1;
                    p.a = CompiledPoly(x.p);
                } else if constexpr (std::is_same_v<T, ExpRationalPI>) {
                    p.kind = 2;
                    p.a = CompiledPoly(x.q);
                    p.b = CompiledPoly(x.p);
                    p.h = x.h;
                } else if constexpr (std::is_same_v<T, ExpArctanPI>) {
                    p.kind = 3;
                    p.a = CompiledPoly(x.v);
                    p.b = CompiledPoly(x.u);
                } else {
                    throw Error("complex factors must be split before numeric evaluation");
                }
            },
            f.pi);
        parts->push_back(std::move(p));
    }
    auto pt = std::make_shared<PointBuilder>(sys, params);
    auto phi = std::make_shared<CompiledPoly>(e.time_antiderivative);
    NumericFunction out;
    out.value = [parts, pt, phi](double t, const std::vector<double>& x) {
        auto z = (*pt)(t, x);
        double logsum = -(*phi)(z), sign = 1;
        for (auto& p : *parts) {
            switch (p.kind) {
                case 0: {
                    double v = p.a(z);
                    if (std::abs(v) < singular_guard) throw SingularLocus(t);
                    if (v < 0 && p.integer_gamma && std::fmod(std::abs(p.gamma), 2.0) == 1.0) sign = -sign;
                    logsum += p.gamma * std::log(std::abs(v));
                    break;
                }
                case 1: logsum += p.gamma * p.a(z); break;
                case 2: {
                    double d = p.b(z);
                    if (std::abs(d) < singular_guard) throw SingularLocus(t);
                    logsum += p.gamma * p.a(z) / std::pow(d, p.h);
                    break;
                }
                default: {
                    double u = p.b(z);
                    if (std::abs(u) < singular_guard) throw SingularLocus(t);
                    logsum += p.gamma * std::atan(p.a(z) / u);
                }
            }
        }
        return sign * std::exp(logsum);
    };
    out.branch = [parts, pt](double t, const std::vector<double>& x) {
        auto z = (*pt)(t, x);
        std::vector<double> b;
        for (auto& p : *parts)
            if (p.kind == 3) b.push_back(p.b(z));
        return b;
    };
    return out;
}

struct ConservationReport {
    double max_drift = 0;
    bool ok = false;
    size_t segments = 1;
};

// Max relative drift |F - F_ref| / max(1, |F_ref|); the reference restarts
// whenever an arctan denominator changes sign.
inline ConservationReport check_conservation(const NumericFunction& f, const Trajectory& tr, double tol) {
    ConservationReport rep;
    if (tr.times.empty()) throw Error("empty trajectory");
    double ref = f.value(tr.times[0], tr.states[0]);
    std::vector<double> br = f.branch ? f.branch(tr.times[0], tr.states[0]) : std::vector<double>{};
    for (size_t k = 1; k < tr.times.size(); ++k) {
        double v = f.value(tr.times[k], tr.states[k]);
        if (f.branch) {
            auto nb = f.branch(tr.times[k], tr.states[k]);
            bool flip = false;
            for (size_t i = 0; i < nb.size(); ++i)
                if ((nb[i] > 0) != (br[i] > 0)) flip = true;
            br = nb;
            if (flip) {
                ref = v;
                ++rep.segments;
                continue;
            }
        }
        rep.max_drift = std::max(rep.max_drift, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
    }
    rep.ok = rep.max_drift <= tol;
    return rep;
}

struct CofactorNumericReport {
    double symbolic_residual = 0;   // |d g - g M| evaluated exactly-then-numerically
    double difference_residual = 0; // directional central difference vs g M
    bool ok = false;
};

// Sample d g - g M at the points and compare g M with
// (g(x + eps X) - g(x - eps X)) / (2 eps), eps = 1e-5.
inline CofactorNumericReport check_cofactor_numeric(const SystemDef& sys, const Poly& g, const Poly& m,
                                                    const std::vector<std::vector<double>>& points, double t = 0,
                                                    const ParamValues& params = {}, double tol = 1e-6) {
    const double eps = 1e-5;
    PointBuilder pt(sys, params);
    CompiledPoly cg(g), cm(m), res(derive(sys, g) - g * m);
    std::vector<CompiledPoly> f;
    for (auto& p : sys.rhs()) f.emplace_back(p);
    CofactorNumericReport rep;
    for (auto& x : points) {
        auto z = pt(t, x);
        double gm = cg(z) * cm(z);
        rep.symbolic_residual = std::max(rep.symbolic_residual, std::abs(res(z)) / std::max(1.0, std::abs(gm)));
        std::vector<double> xp(x), xm(x);
        for (size_t i = 0; i < f.size(); ++i) {
            double fi = f[i](z);
            xp[i] += eps * fi;
            xm[i] -= eps * fi;
        }
        double fd = (cg(pt(t + eps, xp)) - cg(pt(t - eps, xm))) / (2 * eps);
        rep.difference_residual = std::max(rep.difference_residual, std::abs(fd - gm) / std::max(1.0, std::abs(gm)));
    }
    rep.ok = rep.symbolic_residual <= tol && rep.difference_residual <= tol;
    return rep;
}

inline std::vector<std::vector<double>> random_points(size_t count, size_t dim, double lo, double hi, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<std::vector<double>> out(count, std::vector<double>(dim));
    for (auto& p : out)
        for (auto& v : p) v = u(rng);
    return out;
}

struct MultiplierReport {
    double max_residual = 0;
    bool ok = false;
};

// Centered differences of mu along the trajectory against -mu div.
inline MultiplierReport check_multiplier_numeric(const SystemDef& sys, const NumericFunction& mu, const Trajectory& tr,
                                                 double tol, const ParamValues& params = {}) {
    if (tr.times.size() < 3) throw Error("trajectory too short for centered differences");
    PointBuilder pt(sys, params);
    CompiledPoly div(divergence(sys));
    MultiplierReport rep;
    for (size_t k = 1; k + 1 < tr.times.size(); ++k) {
        double dm = (mu.value(tr.times[k + 1], tr.states[k + 1]) - mu.value(tr.times[k - 1], tr.states[k - 1])) /
                    (tr.times[k + 1] - tr.times[k - 1]);
        double m = mu.value(tr.times[k], tr.states[k]);
        double r = std::abs(dm + m * div(pt(tr.times[k], tr.states[k]))) / std::max(1.0, std::abs(m));
        rep.max_residual = std::max(rep.max_residual, r);
    }
    rep.ok = rep.max_residual <= tol;
    return rep;
}

}  // namespace darboux

#endif
