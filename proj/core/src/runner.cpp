#include "pbdg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "pbdg/basis.hpp"
#include "pbdg/dpbe.hpp"
#include "pbdg/geometry.hpp"
#include "pbdg/quadrature.hpp"

namespace pbdg {
namespace {

double neumaier_add(double& sum, double term, double comp) {
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    return comp;
}

RuleSpec resolved_rules(const ProblemSpec& spec) {
    RuleSpec r = spec.rules;
    const RuleSpec def = default_rules(spec.degree);
    if (r.n_lobatto == 0) r.n_lobatto = def.n_lobatto;
    if (r.tri_degree == 0) r.tri_degree = def.tri_degree;
    return r;
}

DGData build_data(const ProblemSpec& spec, std::shared_ptr<const Mesh> mesh,
                  const KernelSet& kernels) {
    std::vector<AggTriangle> tris;
    std::vector<BreakElement> elems;
    if (kernels.has_aggregation) tris = build_aggregation_refinement(*mesh);
    if (kernels.has_breakage) elems = build_breakage_refinement(*mesh);
    return precompute(std::move(mesh), Basis{spec.degree}, kernels, tris, elems,
                      resolved_rules(spec), spec.merge_elements);
}

FILE* open_csv(const std::filesystem::path& p) {
    FILE* f = std::fopen(p.string().c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

}  // namespace

DGSolution project_function(const std::function<double(double)>& f,
                            std::shared_ptr<const Mesh> mesh, int k,
                            const LimiterConfig* lim) {
    if (!f) throw std::invalid_argument("project_function: empty function");
    const LineRule& gl = gauss_legendre(2 * k + 2);
    DGSolution c(std::move(mesh), k);
    std::vector<double> phi((k + 1) * gl.n);
    for (int a = 0; a < gl.n; ++a) basis_eval_all(k, gl.nodes[a], phi.data() + a * (k + 1));
    for (std::size_t i = 0; i < c.num_cells(); ++i) {
        for (int a = 0; a < gl.n; ++a) {
            const double wf = gl.weights[a] * f(c.mesh->from_ref(i, gl.nodes[a]));
            for (int j = 0; j <= k; ++j) c.c(i, j) += wf * phi[a * (k + 1) + j];
        }
    }
    if (lim && lim->enabled) apply_limiter(c, *lim);
    return c;
}

std::function<double(double)> initial_density(const ProblemSpec& spec) {
    if (spec.initial.kind == "exponential") {
        const double v0 = spec.v0;
        return [v0](double v) { return std::exp(-v / v0) / v0; };
    }
    if (spec.initial.kind == "analytic") {
        const auto ref = reference_for(spec);
        if (!ref) throw ConfigError("initial = analytic requires problem.analytic_case");
        auto n = ref->n;
        return [n](double v) { return n(v, 0.0); };
    }
    if (spec.initial.kind == "tabulated") {
        auto table = spec.initial.table;
        return [table](double v) {
            if (table.empty() || v < table.front().first || v > table.back().first) return 0.0;
            auto hi = std::lower_bound(table.begin(), table.end(), v,
                                       [](const auto& p, double x) { return p.first < x; });
            if (hi == table.begin()) return hi->second;
            auto lo = hi - 1;
            const double w = (v - lo->first) / (hi->first - lo->first);
            return lo->second + w * (hi->second - lo->second);
        };
    }
    throw ConfigError("unknown initial condition: " + spec.initial.kind);
}

DGSolution project_initial(const ProblemSpec& spec, std::shared_ptr<const Mesh> mesh) {
    return project_function(initial_density(spec), std::move(mesh), spec.degree,
                            &spec.limiter);
}

double solution_moment(const DGSolution& c, int s) {
    if (s < 0) throw std::invalid_argument("solution_moment: s must be nonnegative");
    const LineRule& gl = gauss_legendre(std::max(c.k + 1, (c.k + s + 2) / 2));
    double total = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < c.num_cells(); ++i) {
        double acc = 0.0;
        for (int a = 0; a < gl.n; ++a) {
            const double v = c.mesh->from_ref(i, gl.nodes[a]);
            acc += gl.weights[a] * std::pow(v, s) * c.eval_ref(i, gl.nodes[a]);
        }
        comp = neumaier_add(total, 0.5 * c.mesh->width[i] * acc, comp);
    }
    return total + comp;
}

ErrorNorms error_norms(const DGSolution& sol, const std::function<double(double)>& reference) {
    if (!reference) throw std::invalid_argument("error_norms: empty reference");
    const LineRule& gl = gauss_legendre(2 * sol.k + 2);
    ErrorNorms e;
    double c1 = 0.0, c2 = 0.0, l2sq = 0.0;
    for (std::size_t i = 0; i < sol.num_cells(); ++i) {
        double a1 = 0.0, a2 = 0.0;
        for (int a = 0; a < gl.n; ++a) {
            const double v = sol.mesh->from_ref(i, gl.nodes[a]);
            const double diff = std::abs(sol.eval_ref(i, gl.nodes[a]) - reference(v));
            a1 += gl.weights[a] * diff;
            a2 += gl.weights[a] * diff * diff;
            e.linf = std::max(e.linf, diff);
        }
        const double half = 0.5 * sol.mesh->width[i];
        c1 = neumaier_add(e.l1, half * a1, c1);
        c2 = neumaier_add(l2sq, half * a2, c2);
    }
    e.l1 += c1;
    e.l2 = std::sqrt(l2sq + c2);
    return e;
}

RunOutput run_spec(const ProblemSpec& spec) {
    auto mesh = std::make_shared<Mesh>(make_mesh_from_spec(spec.mesh));
    const KernelSet kernels = make_kernels(spec);
    const DGData data = build_data(spec, mesh, kernels);
    const DGSolution c0 = project_initial(spec, mesh);

    TimeController ctrl;
    ctrl.t_end = spec.time.t_end;
    ctrl.dt = spec.time.dt > 0.0 ? spec.time.dt : spec.time.dv_scale * mesh->dv_min;
    ctrl.dt_init = ctrl.dt;
    ctrl.mode = spec.time.rule == "theorem" ? CflMode::TheoremBound : CflMode::FixedDt;
    ctrl.max_halvings = spec.time.max_halvings;
    ctrl.regrow_after = spec.time.regrow_after;

    RunOutput out;
    out.mesh = mesh;
    out.samples_per_cell = spec.output.samples_per_cell;
    out.m1_initial = solution_moment(c0, 1);
    out.moments.push_back({0.0, solution_moment(c0, 0), out.m1_initial, 0.0});

    double t_prev = 0.0;
    const double m1_0 = out.m1_initial;
    std::vector<Observer> obs;
    obs.push_back([&out, &t_prev, m1_0](double t, const DGSolution& c, const StepReport& rep) {
        const double m1 = solution_moment(c, 1);
        const double dev = m1 - m1_0;
        out.moments.push_back({t, solution_moment(c, 0), m1, dev});
        out.mass_dev_max = std::max(out.mass_dev_max, std::abs(dev));
        out.steps.push_back({t, t - t_prev, rep.halvings, rep.limiter_activations});
        t_prev = t;
    });

    out.result = run(ctrl, c0, data, spec.limiter, obs);

    if (const auto ref = reference_for(spec); ref && out.result.completed) {
        const double tf = out.result.t;
        const auto n = ref->n;
        out.reference = [n, tf](double v) { return n(v, tf); };
        out.errors = error_norms(out.result.state, out.reference);
        out.has_errors = true;
    }
    return out;
}

RunOutput run_benchmark(const std::string& name) {
    const ProblemSpec spec = benchmark_spec(name);
    RunOutput out = run_spec(spec);

    if (name.rfind("ex4", 0) == 0 && out.result.completed) {
        // class-resolved reference: exact class-interval integrals of the
        // initial exponential, evolved with the same kernel
        const double v_max = spec.mesh.v_max;
        const std::size_t K = 2000;
        const double dv = v_max / static_cast<double>(K);
        const double v0 = spec.v0;
        auto cedge = [dv](std::size_t i) {
            return i == 0 ? 0.0 : (static_cast<double>(i) + 0.5) * dv;
        };
        std::vector<double> counts(K);
        for (std::size_t i = 1; i <= K; ++i)
            counts[i - 1] = std::exp(-cedge(i - 1) / v0) - std::exp(-cedge(i) / v0);

        const auto beta = builtin_beta(spec.aggregation, spec.aggregation_scale);
        double bmax = 0.0, total = 0.0;
        for (int a = 0; a < 64; ++a)
            for (int b = 0; b < 64; ++b)
                bmax = std::max(bmax, beta(dv * std::pow(v_max / dv, a / 63.0),
                                           dv * std::pow(v_max / dv, b / 63.0)));
        for (double c : counts) total += c;
        const double dt = 0.5 / (bmax * total);

        const DPBEState ref = dpbe_solve(beta, counts, dv, spec.time.t_end, dt);
        const std::vector<double> avg = dpbe_project(ref, *out.mesh);

        auto mesh = out.mesh;
        out.reference = [mesh, avg](double v) { return avg[mesh->cell_of(v)]; };
        ErrorNorms e;
        for (std::size_t i = 0; i < mesh->num_cells(); ++i) {
            const double diff = std::abs(out.result.state.cell_average(i) - avg[i]);
            e.l1 += diff * mesh->width[i];
            e.l2 += diff * diff * mesh->width[i];
            e.linf = std::max(e.linf, diff);
        }
        e.l2 = std::sqrt(e.l2);
        out.errors = e;
        out.has_errors = true;
    }
    return out;
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec, std::size_t levels) {
    if (levels < 2) throw std::invalid_argument("convergence_study: need at least 2 levels");
    if (spec.analytic_case.empty())
        throw std::invalid_argument("convergence_study: spec has no analytic reference");

    std::vector<ConvergenceRow> rows;
    Mesh level_mesh = make_mesh_from_spec(spec.mesh);
    for (std::size_t l = 0; l < levels; ++l) {
        if (l > 0) level_mesh = refine_split(level_mesh);
        ProblemSpec s = spec;
        if (s.time.dt > 0.0) s.time.dt = spec.time.dt / static_cast<double>(std::size_t{1} << l);

        auto mesh = std::make_shared<Mesh>(level_mesh);
        const KernelSet kernels = make_kernels(s);
        const DGData data = build_data(s, mesh, kernels);
        const DGSolution c0 = project_initial(s, mesh);

        TimeController ctrl;
        ctrl.t_end = s.time.t_end;
        ctrl.dt = s.time.dt > 0.0 ? s.time.dt : s.time.dv_scale * mesh->dv_min;
        ctrl.dt_init = ctrl.dt;
        ctrl.mode = s.time.rule == "theorem" ? CflMode::TheoremBound : CflMode::FixedDt;
        ctrl.max_halvings = s.time.max_halvings;
        ctrl.regrow_after = s.time.regrow_after;

        const RunResult res = run(ctrl, c0, data, s.limiter);
        if (!res.completed)
            throw std::runtime_error("convergence_study: level " + std::to_string(l) +
                                     " failed: " + res.failure);

        const auto ref = reference_for(s);
        const auto n = ref->n;
        const double tf = res.t;
        ConvergenceRow row;
        row.level = l;
        row.cells = mesh->num_cells();
        row.e = error_norms(res.state, [n, tf](double v) { return n(v, tf); });
        if (l > 0) {
            const ErrorNorms& prev = rows.back().e;
            row.order1 = std::log2(prev.l1 / row.e.l1);
            row.order2 = std::log2(prev.l2 / row.e.l2);
            row.orderinf = std::log2(prev.linf / row.e.linf);
        }
        rows.push_back(row);
    }
    return rows;
}

void emit_csv(const RunOutput& out, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    fs::create_directories(root);

    FILE* f = open_csv(root / "solution.csv");
    std::fprintf(f, out.reference ? "v,n_h,n_exact\n" : "v,n_h\n");
    const DGSolution& c = out.result.state;
    const int S = std::max(1, out.samples_per_cell);
    for (std::size_t i = 0; i < c.num_cells(); ++i)
        for (int s = 0; s < S; ++s) {
            const double x = S == 1 ? 0.0 : -1.0 + 2.0 * (s + 0.5) / S;
            const double v = c.mesh->from_ref(i, x);
            if (out.reference)
                std::fprintf(f, "%.17g,%.17g,%.17g\n", v, c.eval_ref(i, x), out.reference(v));
            else
                std::fprintf(f, "%.17g,%.17g\n", v, c.eval_ref(i, x));
        }
    std::fclose(f);

    f = open_csv(root / "moments.csv");
    std::fprintf(f, "t,M0,M1,mass_deviation\n");
    for (const MomentSample& m : out.moments)
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", m.t, m.m0, m.m1, m.mass_dev);
    std::fclose(f);

    f = open_csv(root / "errors.csv");
    std::fprintf(f, "level,L1,order1,L2,order2,Linf,orderinf\n");
    if (out.has_errors)
        std::fprintf(f, "0,%.17g,,%.17g,,%.17g,\n", out.errors.l1, out.errors.l2,
                     out.errors.linf);
    std::fclose(f);

    f = open_csv(root / "steps.csv");
    std::fprintf(f, "t,dt,halvings,limiter_activations\n");
    for (const StepRecord& s : out.steps)
        std::fprintf(f, "%.17g,%.17g,%d,%d\n", s.t, s.dt, s.halvings, s.limiter_activations);
    std::fclose(f);
}

void emit_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    fs::create_directories(root);
    FILE* f = open_csv(root / "errors.csv");
    std::fprintf(f, "level,L1,order1,L2,order2,Linf,orderinf\n");
    for (const ConvergenceRow& r : rows) {
        if (r.level == 0)
            std::fprintf(f, "%zu,%.17g,,%.17g,,%.17g,\n", r.level, r.e.l1, r.e.l2, r.e.linf);
        else
            std::fprintf(f, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.level, r.e.l1,
                         r.order1, r.e.l2, r.order2, r.e.linf, r.orderinf);
    }
    std::fclose(f);
}

}  // namespace pbdg
