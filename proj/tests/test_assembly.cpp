#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <random>
#include <tuple>
#include <vector>

#include "pbdg/assembly.hpp"
#include "pbdg/geometry.hpp"
#include "pbdg/kernels.hpp"
#include "pbdg/mesh.hpp"

using namespace pbdg;

namespace {

std::shared_ptr<const Mesh> shared_mesh(Mesh m) {
    return std::make_shared<const Mesh>(std::move(m));
}

KernelSet agg_kernels(const char* name) {
    KernelSet ks;
    ks.beta = builtin_beta(name);
    ks.has_aggregation = true;
    return ks;
}

KernelSet brk_kernels() {
    KernelSet ks;
    std::tie(ks.gamma, ks.daughter) = builtin_breakage("uniform_linear");
    ks.has_breakage = true;
    return ks;
}

DGData make_data(std::shared_ptr<const Mesh> mesh, int k, const KernelSet& ks,
                 bool merge = true) {
    std::vector<AggTriangle> tris;
    std::vector<BreakElement> elems;
    if (ks.has_aggregation) tris = build_aggregation_refinement(*mesh);
    if (ks.has_breakage) elems = build_breakage_refinement(*mesh);
    return precompute(mesh, Basis{k}, ks, tris, elems, default_rules(k), merge);
}

DGSolution random_state(std::shared_ptr<const Mesh> mesh, int k, std::mt19937& rng) {
    DGSolution c(mesh, k);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double& x : c.coeff) x = g(rng);
    return c;
}

// |total| relative to the per-cell magnitudes it cancels across
double relative_total(const MomentRate& r) {
    double scale = 0.0;
    for (double x : r.per_cell) scale += std::abs(x);
    return std::abs(r.total) / std::max(scale, 1e-300);
}

std::vector<std::shared_ptr<const Mesh>> sample_meshes() {
    return {shared_mesh(build_power_mesh(3.0, 6, 1.0)),
            shared_mesh(build_power_mesh(10.0, 7, 2.5)),
            shared_mesh(make_mesh({0.0, 0.21, 0.33, 0.9, 1.7, 2.0}))};
}

}  // namespace

TEST_CASE("default rule selection") {
    for (int k = 1; k <= 4; ++k) {
        RuleSpec r = default_rules(k);
        CHECK(r.n_lobatto == k + 2);
        CHECK(r.tri_degree == 2 * k + 2);
    }
}

TEST_CASE("single-cell aggregation tensors by hand") {
    // one cell [0, 1], k = 1, beta = 1: both refinement triangles have area
    // 1/4 and constant integrand phi0^3 = 2^{-3/2}; the birth tensor carries
    // the 1/2 pairing factor, the death tensor does not
    auto mesh = shared_mesh(build_power_mesh(1.0, 1, 1.0));
    auto data = make_data(mesh, 1, agg_kernels("constant"), false);

    REQUIRE(data.tris.size() == 2);
    const double qt = 1.0 / (8.0 * std::sqrt(2.0));  // area * phi0^3
    const int km3 = 8;                               // (k+1)^3
    REQUIRE(data.agg_birth.size() == 2 * km3);
    REQUIRE(data.agg_death.size() == 2 * km3);
    for (std::size_t t = 0; t < 2; ++t) {
        CHECK(data.agg_birth[t * km3] == doctest::Approx(0.5 * qt).epsilon(1e-14));
        CHECK(data.agg_death[t * km3] == doctest::Approx(qt).epsilon(1e-14));
    }

    // n = 1 on [0, 1]: pairing up halves the count inside the triangle
    // u + w <= 1 (rate 1/2 * 1/2) while losses remove both partners (rate
    // 1/2 + 1/2... truncated to the same triangle), so dM0/dt = 1/4 - 1/2
    DGSolution c(mesh, 1);
    c.c(0, 0) = std::sqrt(2.0);
    DGSolution cdot = apply_rhs(data, c, 0.0);
    CHECK(moment_of_rhs(data, cdot, 0).total == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(std::abs(moment_of_rhs(data, cdot, 1).total) <= 1e-14);
}

TEST_CASE("single-cell breakage rates by hand") {
    // uniform binary fragments of linearly growing rate on [0, 1], n = 1:
    // dM0/dt = int_0^1 int_v^1 (2/w) w dw dv - int_0^1 v dv = 1 - 1/2
    auto mesh = shared_mesh(build_power_mesh(1.0, 1, 1.0));
    auto data = make_data(mesh, 2, brk_kernels());
    DGSolution c(mesh, 2);
    c.c(0, 0) = std::sqrt(2.0);
    DGSolution cdot = apply_rhs(data, c, 0.0);
    CHECK(moment_of_rhs(data, cdot, 0).total == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(moment_of_rhs(data, cdot, 1).total) <= 1e-14);
}

TEST_CASE("growth and inflow flux identities") {
    // constant unit growth: d/dt M0 = n(0,t) - n_h(vmax-), and testing
    // against v gives d/dt M1 = int n dv - vmax n_h(vmax-); both identities
    // are exact for arbitrary coefficient states
    auto mesh = shared_mesh(build_power_mesh(2.0, 4, 1.0));
    KernelSet ks;
    ks.growth = [](double) { return 1.0; };
    ks.inflow = [](double t) { return 2.0 + t; };
    ks.has_growth = true;
    auto data = make_data(mesh, 2, ks);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        DGSolution c = random_state(mesh, 2, rng);
        const double t = 0.5;
        DGSolution cdot = apply_rhs(data, c, t);
        const double out_trace = c.eval_ref(3, 1.0);

        const double m0rate = moment_of_rhs(data, cdot, 0).total;
        CHECK(m0rate == doctest::Approx((2.0 + t) - out_trace).epsilon(1e-12));

        double number = 0.0;  // int n dv, exact from the constant mode
        for (std::size_t i = 0; i < 4; ++i)
            number += mesh->width[i] * c.cell_average(i);
        const double m1rate = moment_of_rhs(data, cdot, 1).total;
        CHECK(m1rate == doctest::Approx(number - 2.0 * out_trace).epsilon(1e-12));
    }

    // without an inflow function the boundary trace defaults to zero
    KernelSet closed = ks;
    closed.inflow = nullptr;
    auto data0 = make_data(mesh, 2, closed);
    DGSolution c = random_state(mesh, 2, rng);
    const double m0rate = moment_of_rhs(data0, apply_rhs(data0, c, 0.0), 0).total;
    CHECK(m0rate == doctest::Approx(-c.eval_ref(3, 1.0)).epsilon(1e-12));
}

TEST_CASE("nucleation source moments") {
    auto mesh = shared_mesh(build_power_mesh(2.0, 4, 1.0));
    KernelSet ks;
    ks.nucleation = [](double) { return 3.0; };
    ks.has_nucleation = true;
    auto data = make_data(mesh, 2, ks);

    DGSolution zero(mesh, 2);
    DGSolution cdot = apply_rhs(data, zero, 0.0);
    // S = 3 on [0, 2]: dM0/dt = 3 vmax, dM1/dt = 3 vmax^2 / 2
    CHECK(moment_of_rhs(data, cdot, 0).total == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(moment_of_rhs(data, cdot, 1).total == doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("aggregation conserves mass on random states") {
    std::mt19937 rng(42);
    for (auto& mesh : sample_meshes())
        for (int k : {1, 2, 3, 4})
            for (const char* beta : {"constant", "additive", "free_molecule", "brownian",
                                     "gravitational"}) {
                auto data = make_data(mesh, k, agg_kernels(beta));
                for (int trial = 0; trial < 3; ++trial) {
                    DGSolution c = random_state(mesh, k, rng);
                    DGSolution cdot = apply_rhs(data, c, 0.0);
                    CHECK(relative_total(moment_of_rhs(data, cdot, 1)) <= 1e-13);
                }
            }
}

TEST_CASE("breakage conserves mass on random states") {
    std::mt19937 rng(43);
    for (auto& mesh : sample_meshes())
        for (int k : {1, 2, 3, 4}) {
            auto data = make_data(mesh, k, brk_kernels());
            for (int trial = 0; trial < 3; ++trial) {
                DGSolution c = random_state(mesh, k, rng);
                DGSolution cdot = apply_rhs(data, c, 0.0);
                CHECK(relative_total(moment_of_rhs(data, cdot, 1)) <= 1e-13);
            }
        }
}

TEST_CASE("merged and per-element apply paths agree") {
    auto mesh = shared_mesh(build_power_mesh(4.0, 6, 2.0));
    KernelSet ks = agg_kernels("additive");
    std::tie(ks.gamma, ks.daughter) = builtin_breakage("uniform_linear");
    ks.has_breakage = true;
    ks.growth = [](double v) { return 0.5 * v; };
    ks.has_growth = true;
    ks.nucleation = [](double v) { return std::exp(-v); };
    ks.has_nucleation = true;

    auto base = make_data(mesh, 3, ks, false);
    CHECK_FALSE(base.compacted);
    auto merged = base;
    compact(merged);
    CHECK(merged.compacted);
    compact(merged);  // idempotent
    CHECK(merged.compacted);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        DGSolution c = random_state(mesh, 3, rng);
        DGSolution r1 = apply_rhs(base, c, 0.3);
        DGSolution r2 = apply_rhs(merged, c, 0.3);
        double scale = 0.0;
        for (double x : r1.coeff) scale = std::max(scale, std::abs(x));
        for (std::size_t q = 0; q < r1.coeff.size(); ++q)
            CHECK(std::abs(r1.coeff[q] - r2.coeff[q]) <= 1e-13 * scale);
    }
}

TEST_CASE("assembly and application are deterministic") {
    auto mesh = shared_mesh(build_power_mesh(5.0, 8, 3.0));
    KernelSet ks = agg_kernels("free_molecule");
    std::tie(ks.gamma, ks.daughter) = builtin_breakage("uniform_linear");
    ks.has_breakage = true;

    auto d1 = make_data(mesh, 2, ks);
    auto d2 = make_data(mesh, 2, ks);
    REQUIRE(d1.agg_birth.size() == d2.agg_birth.size());
    CHECK(std::memcmp(d1.agg_birth.data(), d2.agg_birth.data(),
                      d1.agg_birth.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(d1.mb_t.data(), d2.mb_t.data(), d1.mb_t.size() * sizeof(double)) == 0);

    std::mt19937 rng(5);
    DGSolution c = random_state(mesh, 2, rng);
    DGSolution r1 = apply_rhs(d1, c, 0.0);
    DGSolution r2 = apply_rhs(d1, c, 0.0);
    DGSolution r3 = apply_rhs(d2, c, 0.0);
    CHECK(r1.coeff == r2.coeff);  // bitwise
    CHECK(r1.coeff == r3.coeff);
}

TEST_CASE("moment matrices") {
    auto mesh = shared_mesh(make_mesh({0.0, 0.4, 1.0, 2.5}));
    auto data = make_data(mesh, 2, brk_kernels());

    for (std::size_t i = 0; i < 3; ++i) {
        const double dv = mesh->width[i], vc = mesh->center[i];
        // cdot = e_0 in cell i: rates pick out W^(s)[i][0]
        DGSolution e0(mesh, 2);
        e0.c(i, 0) = 1.0;
        CHECK(moment_of_rhs(data, e0, 0).per_cell[i] ==
              doctest::Approx(dv / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(moment_of_rhs(data, e0, 1).per_cell[i] ==
              doctest::Approx(vc * dv / std::sqrt(2.0)).epsilon(1e-14));
        // cdot = e_1: orthogonal to constants, int v phi_1 = dv^2 sqrt(2/3)/4
        DGSolution e1(mesh, 2);
        e1.c(i, 1) = 1.0;
        CHECK(std::abs(moment_of_rhs(data, e1, 0).per_cell[i]) <= 1e-15);
        CHECK(moment_of_rhs(data, e1, 1).per_cell[i] ==
              doctest::Approx(dv * dv * std::sqrt(2.0 / 3.0) / 4.0).epsilon(1e-13));
    }
}

TEST_CASE("precompute and apply validation") {
    auto mesh = shared_mesh(build_power_mesh(1.0, 2, 1.0));
    auto tris = build_aggregation_refinement(*mesh);
    KernelSet agg = agg_kernels("constant");

    CHECK_THROWS_AS(precompute(mesh, Basis{0}, agg, tris, {}, RuleSpec{3, 4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(precompute(mesh, Basis{9}, agg, tris, {}, RuleSpec{10, 10}),
                    std::invalid_argument);
    CHECK_THROWS_AS(precompute(mesh, Basis{2}, agg, tris, {}, RuleSpec{3, 6}),
                    std::invalid_argument);  // n_lobatto below k + 2
    CHECK_THROWS_AS(precompute(mesh, Basis{2}, agg, tris, {}, RuleSpec{11, 6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(precompute(mesh, Basis{2}, agg, tris, {}, RuleSpec{4, 5}),
                    std::invalid_argument);  // triangle rule below 2k + 2
    CHECK_THROWS_AS(precompute(mesh, Basis{2}, agg, tris, {}, RuleSpec{4, 11}),
                    std::invalid_argument);  // beyond the tabulated degrees

    KernelSet missing;
    missing.has_growth = true;
    CHECK_THROWS_AS(precompute(mesh, Basis{2}, missing, {}, {}, RuleSpec{4, 6}),
                    std::invalid_argument);

    KernelSet bad = agg_kernels("constant");
    bad.beta = [](double, double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(precompute(mesh, Basis{2}, bad, tris, {}, RuleSpec{4, 6}),
                    std::runtime_error);

    auto data = make_data(mesh, 2, agg);
    DGSolution wrong_deg(mesh, 3);
    CHECK_THROWS_AS(apply_rhs(data, wrong_deg, 0.0), std::invalid_argument);
    DGSolution ok(mesh, 2);
    CHECK_THROWS_AS(moment_of_rhs(data, ok, 3), std::invalid_argument);
    CHECK_THROWS_AS(moment_of_rhs(data, ok, -1), std::invalid_argument);
}
