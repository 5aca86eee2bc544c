#include "pbdg/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "pbdg/special_functions.hpp"

namespace pbdg {
namespace {

// lambda(t) relaxing from lambda0 towards the equilibrium value linf
double relax_rate(double t, double l0, double linf) {
    const double th = std::tanh(t / linf);
    return linf * (l0 + linf * th) / (linf + l0 * th);
}

// e^{-x} sinh(a x) / a, continuous at a = 0 (limit x e^{-x}); both
// exponents are nonpositive for 0 <= a <= 1, so the form never overflows.
double scaled_sinh_ratio(double a, double x) {
    const double ax = a * x;
    if (ax < 1e-4) {
        const double corr = 1.0 + ax * ax / 6.0 * (1.0 + ax * ax / 20.0);
        return x * std::exp(-x) * corr;
    }
    return 0.5 * (std::exp((a - 1.0) * x) - std::exp(-(1.0 + a) * x)) / a;
}

}  // namespace

AnalyticCase make_analytic_case(const std::string& name, double v0, double lambda0,
                                double lambda_inf) {
    if (!(v0 > 0.0)) throw std::invalid_argument("analytic case: v0 must be positive");
    AnalyticCase c;
    c.name = name;
    c.v0 = v0;

    if (name == "const-agg") {
        c.n = [v0](double v, double t) {
            const double a = 2.0 / ((t + 2.0) * v0);
            return a * a * v0 * std::exp(-a * v);
        };
        c.boundary = [v0](double t) {
            const double a = 2.0 / ((t + 2.0) * v0);
            return a * a * v0;
        };
        c.m0 = [](double t) { return 2.0 / (2.0 + t); };
        c.m1 = [v0](double) { return v0; };
        return c;
    }

    if (name == "additive-agg") {
        // n = (1-T)/(v sqrt(T)) e^{-(1+T)v/v0} I_1(2 sqrt(T) v/v0), T = 1-e^{-v0 t},
        // regrouped around e^{-x} I_1(x)/x so that v -> 0 and t -> 0 are regular
        // and nothing overflows: the leftover exponent is -(v/v0)(1-sqrt(T))^2.
        c.n = [v0](double v, double t) {
            const double T = -std::expm1(-v0 * t);
            const double s = std::sqrt(T);
            const double x = 2.0 * s * v / v0;
            const double ex = (1.0 - s) * (1.0 - s) * v / v0;
            return 2.0 * (1.0 - T) / v0 * std::exp(-ex) * bessel_i1_scaled_over_x(x);
        };
        c.boundary = [v0](double t) { return std::exp(-v0 * t) / v0; };
        c.m0 = [v0](double t) { return std::exp(-v0 * t); };
        c.m1 = [v0](double) { return v0; };
        return c;
    }

    if (name == "linear-breakage") {
        c.n = [v0](double v, double t) {
            const double a = (1.0 + v0 * t) / v0;
            return a * a * v0 * std::exp(-a * v);
        };
        c.boundary = [v0](double t) {
            const double a = (1.0 + v0 * t) / v0;
            return a * a * v0;
        };
        c.m0 = [v0](double t) { return 1.0 + v0 * t; };
        c.m1 = [v0](double) { return v0; };
        return c;
    }

    if (name == "agg-breakage") {
        if (!(lambda0 > 0.0) || !(lambda_inf > 0.0))
            throw std::invalid_argument("agg-breakage: lambda0 and lambda_inf must be positive");
        c.lambda0 = lambda0;
        c.lambda_inf = lambda_inf;
        const double l0 = lambda0, li = lambda_inf;
        c.n = [l0, li](double v, double t) {
            const double l = relax_rate(t, l0, li);
            return 2.0 * (l / li) * (l / li) * std::exp(-l * v);
        };
        c.boundary = [l0, li](double t) {
            const double l = relax_rate(t, l0, li);
            return 2.0 * (l / li) * (l / li);
        };
        c.m0 = [l0, li](double t) { return 2.0 * relax_rate(t, l0, li) / (li * li); };
        c.m1 = [li](double) { return 2.0 / (li * li); };
        return c;
    }

    if (name == "growth-agg-1") {
        c.n = [v0](double v, double t) {
            const double m0 = 2.0 / (2.0 + t), m1 = v0 * std::exp(t);
            return m0 * m0 / m1 * std::exp(-m0 / m1 * v);
        };
        c.boundary = [v0](double t) {
            const double m0 = 2.0 / (2.0 + t);
            return m0 * m0 / (v0 * std::exp(t));
        };
        c.m0 = [](double t) { return 2.0 / (2.0 + t); };
        c.m1 = [v0](double t) { return v0 * std::exp(t); };
        return c;
    }

    if (name == "growth-agg-2") {
        // n = (2 M0^2/M1) e^{-x} sinh(a x)/a with a = sqrt(1-M0), x = 2v/M1;
        // a -> 0 at t = 0 where the profile degenerates to x e^{-x}.
        c.n = [v0](double v, double t) {
            const double m0 = 2.0 / (2.0 + t), m1 = 2.0 * v0 * std::exp(t);
            const double a = std::sqrt(1.0 - m0);
            const double x = 2.0 * v / m1;
            return 2.0 * m0 * m0 / m1 * scaled_sinh_ratio(a, x);
        };
        c.boundary = [](double) { return 0.0; };
        c.m0 = [](double t) { return 2.0 / (2.0 + t); };
        c.m1 = [v0](double t) { return 2.0 * v0 * std::exp(t); };
        return c;
    }

    if (name == "growth-agg-3") {
        // n = M0^2/M1 e^{-(2-M0)v/M1} I_1(2av/M1) / ((M0 v/M1) a), a = sqrt(1-M0);
        // same e^{-x} I_1(x)/x regrouping as the additive kernel, with residual
        // exponent -(v/M1)(1-a)^2 since 2 - M0 = 1 + a^2.
        c.n = [v0](double v, double t) {
            const double m0 = std::exp(v0 * (1.0 - std::exp(t)));
            const double m1 = v0 * std::exp(t);
            const double a = std::sqrt(1.0 - m0);
            const double x = 2.0 * a * v / m1;
            const double ex = (1.0 - a) * (1.0 - a) * v / m1;
            return 2.0 * m0 / m1 * std::exp(-ex) * bessel_i1_scaled_over_x(x);
        };
        c.boundary = [v0](double t) {
            return std::exp(v0 * (1.0 - std::exp(t))) / (v0 * std::exp(t));
        };
        c.m0 = [v0](double t) { return std::exp(v0 * (1.0 - std::exp(t))); };
        c.m1 = [v0](double t) { return v0 * std::exp(t); };
        return c;
    }

    throw std::invalid_argument("unknown analytic case: " + name);
}

}  // namespace pbdg
