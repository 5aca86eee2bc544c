#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

#include "pbdg/analytic.hpp"
#include "pbdg/quadrature.hpp"

using namespace pbdg;

namespace {

// composite Gauss-Legendre, plenty for smooth exponentially decaying tails
double integral(double a, double b, int panels, const std::function<double(double)>& f) {
    const LineRule& gl = gauss_legendre(20);
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        s += integrate_interval(gl, a + p * h, a + (p + 1) * h, f);
    return s;
}

double dt_fd(const AnalyticCase& ac, double v, double t, double h = 1e-4) {
    return (ac.n(v, t + h) - ac.n(v, t - h)) / (2.0 * h);
}

// d(v n)/dv for the growth cases
double dflux_fd(const AnalyticCase& ac, double v, double t, double h = 1e-5) {
    return ((v + h) * ac.n(v + h, t) - (v - h) * ac.n(v - h, t)) / (2.0 * h);
}

double agg_birth(const AnalyticCase& ac, double v, double t, bool additive) {
    return integral(0.0, v, 24, [&](double u) {
        const double b = additive ? v : 1.0;  // beta(u, v-u) = u + (v-u) = v
        return 0.5 * b * ac.n(u, t) * ac.n(v - u, t);
    });
}

}  // namespace

TEST_CASE("initial profiles and boundary traces") {
    auto c1 = make_analytic_case("const-agg");
    for (double v : {0.05, 0.3, 1.0})
        CHECK(c1.n(v, 0.0) == doctest::Approx(5.0 * std::exp(-v / 0.2)).epsilon(1e-12));
    // n(0, t) = 4 / (v0 (t+2)^2): value 20/9 at t = 1
    CHECK(c1.boundary(1.0) == doctest::Approx(20.0 / 9.0).epsilon(1e-12));
    CHECK(c1.boundary(0.0) == doctest::Approx(5.0).epsilon(1e-12));

    auto g1 = make_analytic_case("growth-agg-1");
    for (double v : {0.05, 0.3})
        CHECK(g1.n(v, 0.0) == doctest::Approx(5.0 * std::exp(-v / 0.2)).epsilon(1e-12));

    // v-weighted family vanishes at v = 0 for all times
    auto g2 = make_analytic_case("growth-agg-2");
    for (double v : {0.05, 0.3})
        CHECK(g2.n(v, 0.0) ==
              doctest::Approx(v / 0.04 * std::exp(-v / 0.2)).epsilon(1e-12));
    CHECK(g2.boundary(0.7) == 0.0);
    CHECK(g2.n(1e-14, 0.7) <= 1e-10);

    // Bessel-family profiles stay finite far into the tail
    auto c2 = make_analytic_case("additive-agg");
    CHECK(std::isfinite(c2.n(50.0, 1.0)));
    CHECK(c2.n(50.0, 1.0) >= 0.0);
    auto g3 = make_analytic_case("growth-agg-3");
    CHECK(std::isfinite(g3.n(20.0, 2.0)));
}

TEST_CASE("moments match the densities by quadrature") {
    struct Row {
        const char* name;
        double t, cutoff;
    };
    for (const Row& row : {Row{"const-agg", 0.7, 30.0}, Row{"additive-agg", 0.5, 60.0},
                           Row{"linear-breakage", 1.0, 12.0}, Row{"agg-breakage", 0.8, 15.0},
                           Row{"growth-agg-1", 1.0, 30.0}, Row{"growth-agg-2", 1.0, 30.0},
                           Row{"growth-agg-3", 0.5, 80.0}}) {
        auto ac = make_analytic_case(row.name);
        for (double t : {0.0, row.t}) {
            const double num =
                integral(0.0, row.cutoff, 48, [&](double v) { return ac.n(v, t); });
            const double mass =
                integral(0.0, row.cutoff, 48, [&](double v) { return v * ac.n(v, t); });
            CHECK(ac.m0(t) == doctest::Approx(num).epsilon(1e-8));
            CHECK(ac.m1(t) == doctest::Approx(mass).epsilon(1e-8));
        }
    }
}

TEST_CASE("moment values follow the moment ODEs") {
    // pure aggregation: M0' = -M0^2/2 (constant kernel), M0 = exp(-M1 t)
    // (additive kernel); mass constant in both
    auto c1 = make_analytic_case("const-agg");
    CHECK(c1.m0(0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(c1.m0(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(c1.m1(2.0) == doctest::Approx(c1.m1(0.0)).epsilon(1e-13));

    auto c2 = make_analytic_case("additive-agg");
    CHECK(c2.m1(1.5) == doctest::Approx(c2.m1(0.0)).epsilon(1e-13));
    for (double t : {0.5, 1.0})
        CHECK(c2.m0(t) == doctest::Approx(std::exp(-c2.m1(0.0) * t)).epsilon(1e-12));

    // binary uniform breakage: M0' = M1, so M0(t) = 1 + M1 t
    auto c3 = make_analytic_case("linear-breakage");
    CHECK(c3.m1(3.0) == doctest::Approx(c3.m1(0.0)).epsilon(1e-13));
    for (double t : {1.0, 3.0})
        CHECK(c3.m0(t) == doctest::Approx(1.0 + c3.m1(0.0) * t).epsilon(1e-12));

    // combined: M0' = -M0^2/2 + M1 with fixed mass 2/lambda_inf^2
    auto c4 = make_analytic_case("agg-breakage", 0.2, 3.0, 4.0);
    CHECK(c4.m1(0.0) == doctest::Approx(2.0 / 16.0).epsilon(1e-12));
    CHECK(c4.m1(2.0) == doctest::Approx(2.0 / 16.0).epsilon(1e-12));
    for (double t : {0.2, 1.0}) {
        const double h = 1e-5;
        const double lhs = (c4.m0(t + h) - c4.m0(t - h)) / (2.0 * h);
        const double m0 = c4.m0(t);
        CHECK(lhs == doctest::Approx(-0.5 * m0 * m0 + c4.m1(t)).epsilon(1e-7));
    }
    // relaxation toward the equilibrium number 2/lambda_inf
    CHECK(c4.m0(0.0) == doctest::Approx(2.0 * 3.0 / 16.0).epsilon(1e-12));
    CHECK(c4.m0(50.0) == doctest::Approx(0.5).epsilon(1e-8));

    // growth G = v doubles nothing in M0 but exponentiates the mass
    auto g1 = make_analytic_case("growth-agg-1");
    CHECK(g1.m0(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(g1.m1(1.0) == doctest::Approx(0.2 * std::exp(1.0)).epsilon(1e-13));
    auto g2 = make_analytic_case("growth-agg-2");
    CHECK(g2.m0(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(g2.m1(1.0) == doctest::Approx(0.4 * std::exp(1.0)).epsilon(1e-13));
    auto g3 = make_analytic_case("growth-agg-3");
    CHECK(g3.m1(1.0) == doctest::Approx(0.2 * std::exp(1.0)).epsilon(1e-13));
    for (double t : {0.5, 1.0})
        CHECK(g3.m0(t) ==
              doctest::Approx(std::exp(0.2 * (1.0 - std::exp(t)))).epsilon(1e-12));
}

TEST_CASE("densities satisfy the aggregation equations pointwise") {
    for (bool additive : {false, true}) {
        auto ac = make_analytic_case(additive ? "additive-agg" : "const-agg");
        for (double v : {0.07, 0.4, 1.3})
            for (double t : {0.4, 1.0}) {
                const double birth = agg_birth(ac, v, t, additive);
                // death integral in closed form: int beta(v,u) n(u) du
                const double death =
                    ac.n(v, t) * (additive ? v * ac.m0(t) + ac.m1(t) : ac.m0(t));
                const double lhs = dt_fd(ac, v, t);
                const double scale =
                    std::abs(lhs) + std::abs(birth) + std::abs(death) + 1e-6;
                CHECK(std::abs(lhs - (birth - death)) <= 1e-5 * scale);
            }
    }
}

TEST_CASE("densities satisfy the breakage equations pointwise") {
    auto ac = make_analytic_case("linear-breakage");
    for (double v : {0.07, 0.5, 1.6})
        for (double t : {0.4, 1.0}) {
            // gamma = w, p = 2/w: birth = 2 int_v^inf n dw, death = v n
            const double birth =
                2.0 * integral(v, v + 14.0, 24, [&](double w) { return ac.n(w, t); });
            const double death = v * ac.n(v, t);
            const double lhs = dt_fd(ac, v, t);
            const double scale = std::abs(lhs) + birth + death + 1e-6;
            CHECK(std::abs(lhs - (birth - death)) <= 1e-5 * scale);
        }

    auto cb = make_analytic_case("agg-breakage", 0.2, 3.0, 4.0);
    for (double v : {0.1, 0.8})
        for (double t : {0.3, 1.0}) {
            const double birth = agg_birth(cb, v, t, false) +
                                 2.0 * integral(v, v + 14.0, 24,
                                                [&](double w) { return cb.n(w, t); });
            const double death = cb.n(v, t) * cb.m0(t) + v * cb.n(v, t);
            const double lhs = dt_fd(cb, v, t);
            const double scale = std::abs(lhs) + birth + death + 1e-6;
            CHECK(std::abs(lhs - (birth - death)) <= 1e-5 * scale);
        }
}

TEST_CASE("densities satisfy the growth-aggregation equations pointwise") {
    for (const char* name : {"growth-agg-1", "growth-agg-2", "growth-agg-3"}) {
        const bool additive = std::string(name) == "growth-agg-3";
        auto ac = make_analytic_case(name);
        for (double v : {0.1, 0.45, 1.2})
            for (double t : {0.4, 1.0}) {
                const double birth = agg_birth(ac, v, t, additive);
                const double death =
                    ac.n(v, t) * (additive ? v * ac.m0(t) + ac.m1(t) : ac.m0(t));
                const double growth = dflux_fd(ac, v, t);
                const double lhs = dt_fd(ac, v, t);
                const double scale = std::abs(lhs) + std::abs(birth) +
                                     std::abs(death) + std::abs(growth) + 1e-6;
                CHECK(std::abs(lhs - (birth - death - growth)) <= 1e-5 * scale);
            }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(make_analytic_case("unknown-case"));
    CHECK_THROWS(make_analytic_case(""));
    CHECK_THROWS(make_analytic_case("const-agg", -0.1));
    CHECK_THROWS(make_analytic_case("const-agg", 0.0));
    CHECK_THROWS(make_analytic_case("agg-breakage", 0.2, 0.0, 4.0));
    CHECK_THROWS(make_analytic_case("agg-breakage", 0.2, 3.0, -1.0));

    // custom v0 rescales the exponential family
    auto wide = make_analytic_case("const-agg", 0.5);
    CHECK(wide.n(0.0, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(wide.m1(0.0) == doctest::Approx(0.5).epsilon(1e-12));
}
