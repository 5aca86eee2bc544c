#pragma once

#include <functional>
#include <string>
#include <utility>

namespace pbdg {

// The physical model functions.  All callables must be pure and reentrant;
// they are evaluated concurrently from quadrature loops.
struct KernelSet {
    std::function<double(double)> growth;               // G(v), volume/time
    std::function<double(double)> nucleation;           // S(v), number/(volume*time)
    std::function<double(double, double)> beta;         // beta(u, w), symmetric
    std::function<double(double)> gamma;                // gamma(w), breakage rate
    std::function<double(double, double)> daughter;     // p(u, w), 0 <= u <= w
    std::function<double(double)> inflow;               // boundary trace n(0, t)

    bool has_growth = false;
    bool has_nucleation = false;
    bool has_aggregation = false;
    bool has_breakage = false;
};

// Floor applied to kernel arguments before fractional powers; Gauss-Lobatto
// endpoints touch u = 0 on boundary elements and the exact integrals are
// finite.
inline constexpr double kKernelArgFloor = 1e-30;

// name in {constant, additive, free_molecule, brownian, gravitational};
// scale is an optional prefactor (default 1).
std::function<double(double, double)> builtin_beta(const std::string& name, double scale = 1.0);

// name in {uniform_linear}: gamma(w) = scale * w, p(u, w) = 2 / w.
std::pair<std::function<double(double)>, std::function<double(double, double)>>
builtin_breakage(const std::string& name, double scale = 1.0);

struct ValidationReport {
    double beta_symmetry_residual = 0.0;   // max |beta(u,w) - beta(w,u)| relative
    double daughter_mass_residual = 0.0;   // max |int_0^w u p(u,w) du - w| / w
    bool pass = true;
};

// Randomized structural checks of the active processes over (0, v_max]^2.
ValidationReport validate(const KernelSet& kernels, double v_max, int samples = 256,
                          unsigned seed = 12345);

}  // namespace pbdg
