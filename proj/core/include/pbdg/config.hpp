#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pbdg/analytic.hpp"
#include "pbdg/assembly.hpp"
#include "pbdg/kernels.hpp"
#include "pbdg/limiter.hpp"
#include "pbdg/mesh.hpp"

namespace pbdg {

// Raised for malformed or inconsistent configuration (including unknown JSON
// keys); the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct MeshSpec {
    std::string type = "power";  // uniform | power | log
    double v_max = 10.0;
    std::size_t cells = 15;
    double exponent = 3.0;  // power: v_{i+1/2} = v_max (i/L)^exponent
    double v_lo = 1e-3;     // log: first interior edge
};

struct InitialSpec {
    std::string kind = "exponential";  // exponential | analytic | tabulated
    // tabulated: (v, n) pairs with ascending v; linear interpolation, zero outside
    std::vector<std::pair<double, double>> table;
};

struct TimeSpec {
    double t_end = 1.0;
    double dt = 0.0;         // fixed step; 0 means dv_scale * dv_min
    double dv_scale = 10.0;
    std::string rule = "fixed";  // fixed | theorem (per-step positivity cap)
    int max_halvings = 40;
    int regrow_after = 20;
};

struct OutputSpec {
    std::string dir;
    int samples_per_cell = 1;  // solution.csv resolution
};

struct ProblemSpec {
    std::string growth = "none";  // none | linear (G = growth_scale * v)
    double growth_scale = 1.0;
    std::string nucleation = "none";  // none | constant (S = nucleation_rate)
    double nucleation_rate = 0.0;
    std::string aggregation = "none";  // none | builtin_beta names
    double aggregation_scale = 1.0;
    std::string breakage = "none";  // none | uniform_linear
    double breakage_scale = 1.0;

    std::string analytic_case;  // empty = no closed-form reference
    double v0 = 0.2;
    double lambda0 = 3.0;
    double lambda_inf = 4.0;
    std::string boundary = "none";  // none | analytic (trace n(0,t) from the case)

    InitialSpec initial;
    MeshSpec mesh;
    int degree = 2;
    RuleSpec rules{0, 0};  // zeros mean default_rules(degree)
    bool merge_elements = true;
    TimeSpec time;
    LimiterConfig limiter;
    OutputSpec output;
};

// JSON document with sections problem/mesh/dg/time/limiter/output; every key
// is optional, unknown keys are rejected.  Errors throw ConfigError.
ProblemSpec parse_config(const std::string& json_text);
ProblemSpec load_config(const std::string& path);
std::string serialize_config(const ProblemSpec& spec);  // canonical round-trip form

// Prewired setups: ex1-{I,II,III}, ex2, ex3-{I,II,III}, ex4-{I,II,III},
// ex5-{I,II,III} and ex5-*-nolim (limiter off, no retry budget).
ProblemSpec benchmark_spec(const std::string& name);
std::vector<std::string> benchmark_names();

// Assembles the model callables (including the boundary trace when
// boundary == "analytic") and validates names.
KernelSet make_kernels(const ProblemSpec& spec);

// The closed-form reference, when analytic_case is set.
std::optional<AnalyticCase> reference_for(const ProblemSpec& spec);

Mesh make_mesh_from_spec(const MeshSpec& spec);

}  // namespace pbdg
