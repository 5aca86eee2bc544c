#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pbdg/mesh.hpp"

namespace pbdg {

// Discrete Smoluchowski system on uniform size classes v_i = i*dv, i = 1..K.
// n[i-1] is the particle count in class i; mass() = sum_i v_i n[i-1].
struct DPBEState {
    double dv = 0.0;
    std::vector<double> n;

    std::size_t num_classes() const { return n.size(); }
    double mass() const;
};

// Integrates dn_i/dt = 1/2 sum_{j<i} beta_{j,i-j} n_j n_{i-j}
//                      - n_i sum_{j<=K-i} beta_{ij} n_j
// with SSP-RK3.  The death sum stops at j = K - i so pairs that would leave
// the tracked range are excluded, which makes the truncated system conserve
// mass exactly.  A stage producing a class count below -1e-12 (absolute)
// halves dt and retries, up to max_halvings per step; exhausting the budget
// or a non-finite state throws.  observer, if set, runs after accepted steps.
DPBEState dpbe_solve(const std::function<double(double, double)>& beta,
                     std::vector<double> initial, double dv, double t_end, double dt,
                     int max_halvings = 40,
                     const std::function<void(double, const DPBEState&)>& observer = {});

// Piecewise-constant density with value density[i-1] on the class-i interval,
// averaged onto the mesh cells by exact overlap.  Class i >= 2 occupies
// [(i-1/2)dv, (i+1/2)dv); class 1 extends down to 0 so the staircase covers
// the whole domain.  Warns on stderr when a mesh cell is finer than dv.
std::vector<double> dpbe_project(const std::vector<double>& density, double dv,
                                 const Mesh& mesh);

// Counts -> densities (n_i/dv), then overlap-average as above.
std::vector<double> dpbe_project(const DPBEState& state, const Mesh& mesh);

}  // namespace pbdg
