#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbdg/kernels.hpp"

using namespace pbdg;

TEST_CASE("builtin aggregation kernels: spot values") {
    CHECK(builtin_beta("constant")(0.3, 7.1) == 1.0);
    CHECK(builtin_beta("constant", 2.5)(0.3, 7.1) == 2.5);
    CHECK(builtin_beta("additive")(0.3, 7.1) == doctest::Approx(7.4));
    CHECK(builtin_beta("additive", 0.5)(2.0, 6.0) == doctest::Approx(4.0));

    // (1/u + 1/w)^(1/2) (u^(1/3) + w^(1/3))^2 at u = w = 1 -> sqrt(2) * 4
    CHECK(builtin_beta("free_molecule")(1.0, 1.0) ==
          doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-14));
    // (u^(-1/3) + w^(-1/3))(u^(1/3) + w^(1/3)) at u = w = 1 -> 4
    CHECK(builtin_beta("brownian")(1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    // equal settling speeds do not collide
    CHECK(builtin_beta("gravitational")(1.0, 1.0) == 0.0);
    CHECK(builtin_beta("gravitational")(0.4, 0.4) == 0.0);
    // (u^(1/3)+w^(1/3))^2 |u^(2/3) - w^(2/3)| at (8, 1) -> 9 * 3 = 27
    CHECK(builtin_beta("gravitational")(8.0, 1.0) == doctest::Approx(27.0).epsilon(1e-14));
    // brownian at (8, 1): (1/2 + 1)(2 + 1) = 4.5
    CHECK(builtin_beta("brownian")(8.0, 1.0) == doctest::Approx(4.5).epsilon(1e-14));
    // free molecule at (8, 1): sqrt(9/8) * 9
    CHECK(builtin_beta("free_molecule")(8.0, 1.0) ==
          doctest::Approx(9.0 * std::sqrt(9.0 / 8.0)).epsilon(1e-14));

    // scale is a plain prefactor for every family
    for (const char* name : {"constant", "additive", "free_molecule", "brownian",
                             "gravitational"}) {
        auto b1 = builtin_beta(name);
        auto b3 = builtin_beta(name, 3.0);
        CHECK(b3(0.7, 2.9) == doctest::Approx(3.0 * b1(0.7, 2.9)).epsilon(1e-15));
    }

    CHECK_THROWS(builtin_beta("sum"));
    CHECK_THROWS(builtin_beta(""));
}

TEST_CASE("builtin aggregation kernels: symmetry and zero-argument safety") {
    for (const char* name : {"constant", "additive", "free_molecule", "brownian",
                             "gravitational"}) {
        auto beta = builtin_beta(name);
        for (double u : {1e-8, 0.2, 3.0})
            for (double w : {1e-4, 1.0, 9.5})
                CHECK(beta(u, w) == doctest::Approx(beta(w, u)).epsilon(1e-14));
        // quadrature nodes can land exactly on u = 0; the argument floor keeps
        // the singular prefactors finite
        CHECK(std::isfinite(beta(0.0, 1.0)));
        CHECK(std::isfinite(beta(0.0, 0.0)));
    }
}

TEST_CASE("builtin breakage kernel") {
    auto [gamma, daughter] = builtin_breakage("uniform_linear");
    CHECK(gamma(3.5) == doctest::Approx(3.5));
    CHECK(daughter(0.2, 4.0) == doctest::Approx(0.5));
    CHECK(daughter(3.9, 4.0) == doctest::Approx(0.5));  // uniform in u
    CHECK(std::isfinite(daughter(0.0, 0.0)));

    auto [gamma2, daughter2] = builtin_breakage("uniform_linear", 2.0);
    CHECK(gamma2(3.5) == doctest::Approx(7.0));
    CHECK(daughter2(0.2, 4.0) == doctest::Approx(0.5));  // scale only affects the rate

    // binary uniform breakage conserves mass: int_0^w u (2/w) du = w
    const double w = 2.7;
    CHECK(w * w / 2.0 * daughter(0.1, w) == doctest::Approx(w).epsilon(1e-15));

    CHECK_THROWS(builtin_breakage("binary"));
}

TEST_CASE("kernel validation accepts the builtins") {
    for (const char* name : {"constant", "additive", "free_molecule", "brownian",
                             "gravitational"}) {
        KernelSet ks;
        ks.beta = builtin_beta(name);
        ks.has_aggregation = true;
        auto rep = validate(ks, 10.0);
        CHECK(rep.pass);
        CHECK(rep.beta_symmetry_residual <= 1e-12);
    }

    KernelSet ks;
    std::tie(ks.gamma, ks.daughter) = builtin_breakage("uniform_linear");
    ks.has_breakage = true;
    auto rep = validate(ks, 10.0);
    CHECK(rep.pass);
    CHECK(rep.daughter_mass_residual <= 1e-12);
}

TEST_CASE("kernel validation flags broken models") {
    // asymmetric coagulation kernel
    KernelSet bad;
    bad.beta = [](double u, double w) { return u + 2.0 * w; };
    bad.has_aggregation = true;
    auto rep = validate(bad, 10.0);
    CHECK_FALSE(rep.pass);
    CHECK(rep.beta_symmetry_residual > 1e-2);

    // daughter distribution that loses half the mass
    KernelSet lossy;
    lossy.gamma = [](double w) { return w; };
    lossy.daughter = [](double, double w) { return 1.0 / w; };
    lossy.has_breakage = true;
    rep = validate(lossy, 10.0);
    CHECK_FALSE(rep.pass);
    CHECK(rep.daughter_mass_residual == doctest::Approx(0.5).epsilon(1e-10));

    // negative growth rate violates the upwind assumption
    KernelSet shrink;
    shrink.growth = [](double) { return -1.0; };
    shrink.has_growth = true;
    CHECK_FALSE(validate(shrink, 10.0).pass);

    // inactive processes are not sampled at all
    KernelSet none;
    CHECK(validate(none, 10.0).pass);
}
