#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pbdg/config.hpp"
#include "pbdg/dg_solution.hpp"
#include "pbdg/timestepping.hpp"

namespace pbdg {

// Cellwise L2 projection of f using 2k+2 Gauss points per cell; when lim is
// given (and enabled) the positivity limiter runs once afterwards.
DGSolution project_function(const std::function<double(double)>& f,
                            std::shared_ptr<const Mesh> mesh, int k,
                            const LimiterConfig* lim = nullptr);

// Resolves the configured initial condition to a density function.
std::function<double(double)> initial_density(const ProblemSpec& spec);

// initial_density projected with the spec's degree and limiter settings.
DGSolution project_initial(const ProblemSpec& spec, std::shared_ptr<const Mesh> mesh);

// int v^s n_h dv over the whole domain (compensated cell sum).
double solution_moment(const DGSolution& c, int s);

struct ErrorNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;  // max over the error-quadrature nodes
};

// Cellwise Gauss quadrature of |n - n_h| and (n - n_h)^2 at 2k+2 points.
ErrorNorms error_norms(const DGSolution& sol, const std::function<double(double)>& reference);

struct MomentSample {
    double t = 0.0, m0 = 0.0, m1 = 0.0, mass_dev = 0.0;
};
struct StepRecord {
    double t = 0.0, dt = 0.0;
    int halvings = 0, limiter_activations = 0;
};

struct RunOutput {
    std::shared_ptr<const Mesh> mesh;
    RunResult result;
    std::vector<MomentSample> moments;  // t = 0 row plus one per accepted step
    std::vector<StepRecord> steps;
    bool has_errors = false;
    ErrorNorms errors;  // vs the reference at the final time
    double m1_initial = 0.0;
    double mass_dev_max = 0.0;
    std::function<double(double)> reference;  // n(., t_final) when available
    int samples_per_cell = 1;
};

RunOutput run_spec(const ProblemSpec& spec);

// benchmark_spec(name), run; ex4-* additionally computes the discrete
// (class-resolved) reference and reports cell-average error norms against it.
RunOutput run_benchmark(const std::string& name);

struct ConvergenceRow {
    std::size_t level = 0;
    std::size_t cells = 0;
    ErrorNorms e;
    double order1 = 0.0, order2 = 0.0, orderinf = 0.0;  // meaningful for level > 0
};

// Runs spec on `levels` nested meshes (each splitting every cell in two),
// scaling dt with the refinement, and reports errors with observed orders
// log2(e_prev/e_cur).  Requires an analytic reference and levels >= 2.
std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec, std::size_t levels);

// solution.csv, moments.csv, errors.csv, steps.csv under dir (%.17g fields).
void emit_csv(const RunOutput& out, const std::string& dir);
void emit_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& dir);

}  // namespace pbdg
