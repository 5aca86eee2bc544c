#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "pbdg/assembly.hpp"
#include "pbdg/dg_solution.hpp"
#include "pbdg/limiter.hpp"

namespace pbdg {

enum class CflMode {
    FixedDt,       // user-supplied dt (the benchmark default, e.g. dt = 10 dv)
    DvScaled,      // dt = coefficient * min cell width, fixed thereafter
    TheoremBound,  // dt additionally capped by cfl_bound each step
};

struct TimeController {
    double t = 0.0;
    double dt = 0.0;       // working step, halved on rejection
    double dt_init = 0.0;  // regrowth cap; 0 means "take dt"
    double t_end = 0.0;
    CflMode mode = CflMode::FixedDt;
    int max_halvings = 40;   // per step
    int regrow_after = 20;   // clean steps before dt doubles (up to dt_init)
    // test hook: force a stage rejection for (step index, current dt)
    std::function<bool(std::size_t, double)> force_reject;
};

struct StepReport {
    bool accepted = false;
    int halvings = 0;             // used by the enclosing step
    std::size_t violating_cell = 0;  // meaningful when !accepted
    double min_cell_moment = 0.0;    // min per-cell s-th moment of the update
    int limiter_activations = 0;
};

// One forward Euler stage: c' = c + dt L(c) evaluated at time t, then the
// per-cell s-th moment gate (tolerance -1e-12 * mean |M_1| per cell) and the
// positivity limiter.  A failed gate or a limiter moment violation rejects
// the stage (report.accepted = false) and c' is unspecified.
StepReport euler_stage(const DGData& data, DGSolution& c, double dt, double t,
                       const LimiterConfig& lim);

// SSP-RK3 (convex Euler combination with weights 1; 3/4,1/4; 1/3,2/3); the
// limiter runs inside each stage; any stage rejection rejects the step and
// leaves c untouched.
StepReport ssprk3_step(const DGData& data, DGSolution& c, double dt, double t,
                       const LimiterConfig& lim);

// Positivity time-step estimates evaluated at quadrature nodes:
// aggregation 1/(v_max max beta n_h), breakage 1/max(u p gamma), growth
// (endpoint Lobatto weight) dv_min / max G.  Inactive processes contribute
// +infinity; a degenerate (zero) state yields +infinity as well.
double cfl_bound(const DGData& data, const DGSolution& c);

using Observer = std::function<void(double t, const DGSolution&, const StepReport&)>;

struct RunResult {
    DGSolution state;
    double t = 0.0;
    std::size_t steps = 0;           // accepted steps
    std::size_t total_halvings = 0;
    bool completed = false;
    std::string failure;             // empty when completed
};

// Advances c0 to t_end with halve-and-retry on rejection, doubling dt back
// toward dt_init after regrow_after clean steps; the final step is shortened
// to land exactly on t_end.  Observers run after every accepted step.
RunResult run(const TimeController& ctrl, const DGSolution& c0, const DGData& data,
              const LimiterConfig& lim, const std::vector<Observer>& observers = {});

}  // namespace pbdg
