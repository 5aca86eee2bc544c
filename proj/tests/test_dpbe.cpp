#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pbdg/dpbe.hpp"
#include "pbdg/kernels.hpp"
#include "pbdg/mesh.hpp"

using namespace pbdg;

TEST_CASE("monodisperse constant-kernel series") {
    // starting from one unit in the first class, the discrete system has the
    // closed form n_k(t) = (t/2)^{k-1} / (1 + t/2)^{k+1}
    std::vector<double> initial(60, 0.0);
    initial[0] = 1.0;
    DPBEState s = dpbe_solve(builtin_beta("constant"), initial, 1.0, 2.0, 0.01);

    REQUIRE(s.num_classes() == 60);
    CHECK(s.dv == 1.0);
    for (std::size_t k = 1; k <= 8; ++k) {
        const double expect = std::pow(1.0, k - 1) / std::pow(2.0, k + 1);
        CHECK(s.n[k - 1] == doctest::Approx(expect).epsilon(1e-6));
    }
    CHECK(s.mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("truncated death sum conserves mass exactly") {
    std::vector<double> initial(40);
    for (std::size_t i = 0; i < 40; ++i) initial[i] = std::exp(-0.2 * (i + 1.0));
    const double dv = 0.25;

    for (const char* name : {"constant", "additive", "brownian"}) {
        DPBEState s0{dv, initial};
        const double m0 = s0.mass();
        DPBEState s = dpbe_solve(builtin_beta(name), initial, dv, 0.5, 0.005);
        CHECK(std::abs(s.mass() - m0) <= 1e-12 * m0);
        for (double x : s.n) CHECK(x >= -1e-12);
    }
}

TEST_CASE("oversized steps halve instead of failing") {
    std::vector<double> initial(30, 1.0);
    std::vector<double> times;
    DPBEState s = dpbe_solve(builtin_beta("constant"), initial, 1.0, 1.0, 10.0, 40,
                             [&](double t, const DPBEState&) { times.push_back(t); });
    REQUIRE(!times.empty());
    CHECK(times.back() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t q = 1; q < times.size(); ++q) CHECK(times[q] > times[q - 1]);
    DPBEState ref{1.0, initial};
    CHECK(s.mass() == doctest::Approx(ref.mass()).epsilon(1e-12));

    // a zero halving budget with the same oversized step must throw
    CHECK_THROWS_AS(dpbe_solve(builtin_beta("constant"), initial, 1.0, 1.0, 10.0, 0),
                    std::runtime_error);
}

TEST_CASE("staircase projection by exact overlap") {
    // dv = 1: class 1 covers [0, 1.5) (extended to zero), class 2 [1.5, 2.5)
    Mesh mesh = make_mesh({0.0, 1.0, 2.0});
    std::vector<double> avg = dpbe_project(std::vector<double>{3.0, 5.0}, 1.0, mesh);
    REQUIRE(avg.size() == 2);
    CHECK(avg[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(avg[1] == doctest::Approx(4.0).epsilon(1e-14));  // half 3, half 5

    // counts overload divides by dv first
    DPBEState s{1.0, {3.0, 5.0}};
    CHECK(s.mass() == doctest::Approx(13.0).epsilon(1e-14));
    std::vector<double> avg2 = dpbe_project(s, mesh);
    CHECK(avg2[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(avg2[1] == doctest::Approx(4.0).epsilon(1e-14));

    // cells beyond the staircase see zero density
    Mesh wide = make_mesh({0.0, 1.0, 2.0, 4.0, 9.0});
    std::vector<double> avg3 = dpbe_project(std::vector<double>{3.0, 5.0}, 1.0, wide);
    // [2, 4]: class 2 covers [2, 2.5) with density 5 -> average 1.25
    CHECK(avg3[2] == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(avg3[3] == doctest::Approx(0.0));

    // projection preserves the staircase mass when the mesh covers it
    Mesh cover = make_mesh({0.0, 0.7, 1.5, 2.5});
    std::vector<double> avg4 = dpbe_project(std::vector<double>{3.0, 5.0}, 1.0, cover);
    double mass = 0.0;
    for (std::size_t i = 0; i < cover.num_cells(); ++i)
        mass += avg4[i] * cover.width[i] * cover.center[i];
    // exact staircase mass: 3 on [0,1.5) and 5 on [1.5,2.5) weighted by v
    const double expect = 3.0 * 0.5 * 1.5 * 1.5 + 5.0 * 0.5 * (2.5 * 2.5 - 1.5 * 1.5);
    CHECK(mass == doctest::Approx(expect).epsilon(1e-12));
}
