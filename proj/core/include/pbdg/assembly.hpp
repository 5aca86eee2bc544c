#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "pbdg/basis.hpp"
#include "pbdg/dg_solution.hpp"
#include "pbdg/geometry.hpp"
#include "pbdg/kernels.hpp"
#include "pbdg/mesh.hpp"

namespace pbdg {

// Quadrature selection for assembly: n_lobatto Gauss-Lobatto points for every
// 1-D and rectangle integral, triangle rules exact to degree tri_degree.
struct RuleSpec {
    int n_lobatto = 0;
    int tri_degree = 0;
};

// n_lobatto = k + 2, tri_degree = 2k + 2.
RuleSpec default_rules(int k);

// Everything that stays constant over a simulation.  Base storage keeps one
// tensor per refinement triangle / element, aligned with the refinement
// ordering; compact() additionally merges entries that share owner cells into
// the flat arrays apply_rhs prefers.  Immutable after precompute.
struct DGData {
    std::shared_ptr<const Mesh> mesh;
    int k = 1;
    RuleSpec rules;
    KernelSet kernels;  // retained for the time-dependent boundary inflow

    int modes() const { return k + 1; }
    std::size_t num_cells() const { return mesh->num_cells(); }

    // growth: volume term minus outflow trace, [i][j][m] row-major; the
    // interface matrix couples cell i to cell i-1 (entry i = 0 is unused, the
    // boundary uses inflow_vec * n(0,t) instead)
    std::vector<double> growth_mat;
    std::vector<double> growth_left;
    std::vector<double> inflow_vec;  // G(0) phihat_j(-1)
    // nucleation vectors [i][m]
    std::vector<double> nucleation_vec;

    // aggregation tensors, one per triangle of the refinement (both
    // representatives and mirrors), flattened (j*(k+1) + m)*(k+1) + l.
    // birth: j over the band-owner basis at u+w, m over strip_u at u, l over
    // strip_w at w.  death: destination strip_u; j, m at u, l at w.
    std::vector<AggTriangle> tris;
    std::vector<double> agg_birth;
    std::vector<double> agg_death;

    // breakage per-element data: birth matrix [j][m] (j over strip_u basis at
    // u, m over band_w basis at w) and death vector [m] (no test index)
    std::vector<BreakElement> elems;
    std::vector<double> brk_birth;
    std::vector<double> brk_death;
    // cell matrices Q_I[(phi_j(v) - v) gamma phi_m], [i][j][m]
    std::vector<double> brk_cell;

    // index of triangles/elements by owner cell (CSR: ids sorted, offsets of
    // size L+1) for the uncompacted apply path
    std::vector<int> tri_by_band_off, tri_by_band;
    std::vector<int> tri_by_strip_off, tri_by_strip;
    std::vector<int> elem_by_strip_off, elem_by_strip;
    std::vector<int> elem_by_band_off, elem_by_band;

    // merged apply path (built by compact()): triangles sharing owner cells
    // collapse to one tensor per owner triple/pair
    bool compacted = false;
    std::vector<int> mb_off;        // by destination band, size L+1
    std::vector<int> mb_p, mb_q;    // owners of each merged birth tensor
    std::vector<double> mb_t;       // merged birth tensors, (k+1)^3 each
    std::vector<int> md_off;        // by destination strip
    std::vector<int> md_q;
    std::vector<double> md_t;       // merged death tensors
    std::vector<int> bb_off;        // breakage birth by destination strip
    std::vector<int> bb_q;
    std::vector<double> bb_t;       // (k+1)^2 each
    std::vector<double> bd_cell;    // summed death vectors per cell, [i][m]

    // exact moment matrices W^(s)[i][j] = int_{I_i} v^s phi_j dv, s = 0..k
    std::vector<double> wmat;
};

// Scratch for one destination cell: the (k+1) residual accumulator and the
// (k+1)^2 coefficient-product buffer for tensor contractions.
struct RHSWorkspace {
    std::vector<double> row;
    std::vector<double> pair;
};

// Builds every tensor with the stated quadratures on exactly the refinement
// elements.  Pass empty refinements for inactive processes.  Throws
// std::invalid_argument on rule/degree mismatches and std::runtime_error if a
// kernel evaluates to a non-finite value at a quadrature node.
DGData precompute(std::shared_ptr<const Mesh> mesh, const Basis& basis,
                  const KernelSet& kernels, const std::vector<AggTriangle>& agg,
                  const std::vector<BreakElement>& brk, const RuleSpec& rules,
                  bool merge = true);

// Merges tensor contributions that share owner cells; idempotent.
void compact(DGData& data);

// dcdt_j^i = (2/dv_i) [growth + inflow + nucleation + aggregation birth -
// aggregation death + breakage birth - breakage death - cell term].
// Deterministic: fixed element ordering, parallel only over destinations.
void apply_rhs(const DGData& data, const DGSolution& c, double t, DGSolution& dcdt);
DGSolution apply_rhs(const DGData& data, const DGSolution& c, double t);

struct MomentRate {
    std::vector<double> per_cell;
    double total = 0.0;
};

// sum_j cdot_j^i int_{I_i} v^s phi_j^i dv per cell and its compensated total;
// cdot is a coefficient time-derivative as produced by apply_rhs.
MomentRate moment_of_rhs(const DGData& data, const DGSolution& cdot, int s);

}  // namespace pbdg
