#include "pbdg/kernels.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pbdg/quadrature.hpp"

namespace pbdg {

namespace {

double floored(double v) { return v < kKernelArgFloor ? kKernelArgFloor : v; }

}  // namespace

std::function<double(double, double)> builtin_beta(const std::string& name, double scale) {
    if (name == "constant") {
        return [scale](double, double) { return scale; };
    }
    if (name == "additive") {
        return [scale](double u, double w) { return scale * (u + w); };
    }
    if (name == "free_molecule") {
        return [scale](double u, double w) {
            u = floored(u);
            w = floored(w);
            const double r = std::cbrt(u) + std::cbrt(w);
            return scale * std::sqrt(1.0 / u + 1.0 / w) * r * r;
        };
    }
    if (name == "brownian") {
        return [scale](double u, double w) {
            u = floored(u);
            w = floored(w);
            const double cu = std::cbrt(u), cw = std::cbrt(w);
            return scale * (1.0 / cu + 1.0 / cw) * (cu + cw);
        };
    }
    if (name == "gravitational") {
        return [scale](double u, double w) {
            u = floored(u);
            w = floored(w);
            const double cu = std::cbrt(u), cw = std::cbrt(w);
            const double r = cu + cw;
            return scale * r * r * std::abs(cu * cu - cw * cw);
        };
    }
    throw std::invalid_argument("unknown aggregation kernel: " + name);
}

std::pair<std::function<double(double)>, std::function<double(double, double)>>
builtin_breakage(const std::string& name, double scale) {
    if (name == "uniform_linear") {
        auto gamma = [scale](double w) { return scale * w; };
        auto daughter = [](double, double w) { return 2.0 / floored(w); };
        return {gamma, daughter};
    }
    throw std::invalid_argument("unknown breakage kernel: " + name);
}

ValidationReport validate(const KernelSet& kernels, double v_max, int samples, unsigned seed) {
    ValidationReport rep;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    if (kernels.has_aggregation) {
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double u = v_max * unif(rng), w = v_max * unif(rng);
            const double a = kernels.beta(u, w), b = kernels.beta(w, u);
            const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
            worst = std::max(worst, std::abs(a - b) / scale);
        }
        rep.beta_symmetry_residual = worst;
    }
    if (kernels.has_breakage) {
        const LineRule& rule = gauss_legendre(16);
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double w = v_max * std::max(unif(rng), 1e-6);
            const double mass =
                integrate_interval(rule, 0.0, w, [&](double u) { return u * kernels.daughter(u, w); });
            worst = std::max(worst, std::abs(mass - w) / w);
        }
        rep.daughter_mass_residual = worst;
    }
    if (kernels.has_growth) {
        // G >= 0 is required by the upwind flux; sample a few points
        for (int s = 0; s < samples; ++s) {
            if (kernels.growth(v_max * unif(rng)) < 0.0) {
                rep.pass = false;
                break;
            }
        }
    }
    if (rep.beta_symmetry_residual > 1e-10 || rep.daughter_mass_residual > 1e-10) rep.pass = false;
    return rep;
}

}  // namespace pbdg
