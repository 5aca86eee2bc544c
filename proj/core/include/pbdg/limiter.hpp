#pragma once

#include <cstddef>
#include <stdexcept>

#include "pbdg/dg_solution.hpp"

namespace pbdg {

struct LimiterConfig {
    bool enabled = true;
    int s = 1;                    // conserved moment order, 0 <= s <= k
    bool dense_sampling = false;  // add 64 Chebyshev points to the sample set
    int n_lobatto = 0;            // Gauss-Lobatto sample count; 0 means k + 2
};

// Thrown when a cell's s-th moment is negative beyond roundoff: the step
// control upstream failed to enforce its precondition.  Timestepping catches
// this and rejects the stage.
class MomentViolation : public std::runtime_error {
public:
    MomentViolation(std::size_t cell_, double moment_, double scale_);
    std::size_t cell;
    double moment;
    double scale;
};

// Minimum of n_h over the sample set of cell i: the Gauss-Lobatto nodes
// (endpoints always included), the closed-form interior critical point for
// k = 2 (so the minimum is exact for k <= 2), and optionally a 64-point
// Chebyshev sweep.
double cell_min(const DGSolution& c, std::size_t i, const LimiterConfig& cfg);

// Moment-conserving scaling: if min >= 0 the cell is untouched; otherwise
// n~ = theta (n_h + m) with m = -min and theta = M_s / (M_s + m int v^s dv),
// which preserves the s-th moment exactly and never overshoots.  A tiny
// negative M_s (within -1e-13 scale) collapses the cell to zero; a larger
// negative moment throws MomentViolation.  Returns true if modified.
bool apply_limiter_cell(DGSolution& c, std::size_t i, const LimiterConfig& cfg);

// Whole-solution pass (no-op when disabled); returns limited-cell count.
int apply_limiter(DGSolution& c, const LimiterConfig& cfg);

}  // namespace pbdg
