#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "pbdg/config.hpp"
#include "pbdg/geometry.hpp"
#include "pbdg/kernels.hpp"
#include "pbdg/runner.hpp"

namespace {

int finish_run(const pbdg::RunOutput& out, const std::string& dir) {
    pbdg::emit_csv(out, dir);
    std::printf("t = %.6g  steps = %zu  halvings = %zu  max |mass dev| = %.3e\n",
                out.result.t, out.result.steps, out.result.total_halvings, out.mass_dev_max);
    if (out.has_errors)
        std::printf("errors vs reference: L1 = %.6e  L2 = %.6e  Linf = %.6e\n", out.errors.l1,
                    out.errors.l2, out.errors.linf);
    if (!out.result.completed) {
        std::fprintf(stderr, "numerical failure: %s\n", out.result.failure.c_str());
        return 3;
    }
    std::printf("output written to %s\n", dir.c_str());
    return 0;
}

void dump_geometry(const pbdg::Mesh& mesh) {
    const auto tris = pbdg::build_aggregation_refinement(mesh);
    const auto elems = pbdg::build_breakage_refinement(mesh);
    std::printf("kind,band,strip_u,strip_w,mirror,area,u0,w0,u1,w1,u2,w2\n");
    for (const auto& t : tris)
        std::printf("agg,%d,%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t.band,
                    t.strip_u, t.strip_w, t.mirror ? 1 : 0, t.area, t.v[0][0], t.v[0][1],
                    t.v[1][0], t.v[1][1], t.v[2][0], t.v[2][1]);
    for (const auto& e : elems) {
        if (e.is_triangle)
            std::printf("brk-tri,%d,%d,,,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e.band_w,
                        e.strip_u, e.area, e.v[0][0], e.v[0][1], e.v[1][0], e.v[1][1], e.v[2][0],
                        e.v[2][1]);
        else
            std::printf("brk-rect,%d,%d,,,%.17g,%.17g,%.17g,%.17g,%.17g,,\n", e.band_w,
                        e.strip_u, e.area, e.u0, e.w0, e.u1, e.w1);
    }
    double agg_area = 0.0, brk_area = 0.0;
    for (const auto& t : tris) agg_area += t.area;
    for (const auto& e : elems) brk_area += e.area;
    std::fprintf(stderr, "triangles = %zu (sum area %.17g), elements = %zu (sum area %.17g)\n",
                 tris.size(), agg_area, elems.size(), brk_area);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conservative positivity-preserving DG solver for the 1-D population "
                 "balance equation (growth, nucleation, aggregation, breakage)"};
    app.require_subcommand(1);

    std::string config_path, out_dir, bench_name;
    std::size_t levels = 4;

    auto* run_cmd = app.add_subcommand("run", "run a configured problem");
    run_cmd->add_option("--config", config_path, "JSON config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory (default: output.dir or .)");

    auto* bench_cmd = app.add_subcommand("bench", "run a prewired benchmark");
    bench_cmd->add_option("--name", bench_name, "benchmark name (ex1-I .. ex5-III[-nolim])")
        ->required();
    bench_cmd->add_option("--out", out_dir, "output directory (default: the benchmark name)");

    auto* conv_cmd = app.add_subcommand("converge", "error table over nested refinements");
    conv_cmd->add_option("--config", config_path, "JSON config file")->required();
    conv_cmd->add_option("--levels", levels, "number of refinement levels (>= 2)");
    conv_cmd->add_option("--out", out_dir, "output directory (default: .)");

    auto* geo_cmd = app.add_subcommand("geometry-dump", "print the integration refinements");
    geo_cmd->add_option("--config", config_path, "JSON config file")->required();

    auto* val_cmd = app.add_subcommand("validate", "structural kernel checks");
    val_cmd->add_option("--config", config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) {
            const pbdg::ProblemSpec spec = pbdg::load_config(config_path);
            const pbdg::RunOutput out = pbdg::run_spec(spec);
            if (out_dir.empty()) out_dir = spec.output.dir.empty() ? "." : spec.output.dir;
            return finish_run(out, out_dir);
        }
        if (bench_cmd->parsed()) {
            const pbdg::RunOutput out = pbdg::run_benchmark(bench_name);
            if (out_dir.empty()) out_dir = bench_name;
            return finish_run(out, out_dir);
        }
        if (conv_cmd->parsed()) {
            const pbdg::ProblemSpec spec = pbdg::load_config(config_path);
            const auto rows = pbdg::convergence_study(spec, levels);
            std::printf("level  cells        L1   order        L2   order      Linf   order\n");
            for (const auto& r : rows) {
                if (r.level == 0)
                    std::printf("%5zu %6zu  %.2e      --  %.2e      --  %.2e      --\n", r.level,
                                r.cells, r.e.l1, r.e.l2, r.e.linf);
                else
                    std::printf("%5zu %6zu  %.2e  %6.2f  %.2e  %6.2f  %.2e  %6.2f\n", r.level,
                                r.cells, r.e.l1, r.order1, r.e.l2, r.order2, r.e.linf,
                                r.orderinf);
            }
            pbdg::emit_convergence_csv(rows, out_dir.empty() ? "." : out_dir);
            return 0;
        }
        if (geo_cmd->parsed()) {
            const pbdg::ProblemSpec spec = pbdg::load_config(config_path);
            dump_geometry(pbdg::make_mesh_from_spec(spec.mesh));
            return 0;
        }
        if (val_cmd->parsed()) {
            const pbdg::ProblemSpec spec = pbdg::load_config(config_path);
            const pbdg::KernelSet kernels = pbdg::make_kernels(spec);
            const pbdg::ValidationReport rep = pbdg::validate(kernels, spec.mesh.v_max);
            std::printf("beta symmetry residual:  %.3e\n", rep.beta_symmetry_residual);
            std::printf("daughter mass residual:  %.3e\n", rep.daughter_mass_residual);
            std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
            return rep.pass ? 0 : 3;
        }
    } catch (const pbdg::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
