#include "pbdg/timestepping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pbdg/quadrature.hpp"

namespace pbdg {
namespace {

bool all_finite(const DGSolution& c) {
    for (double x : c.coeff)
        if (!std::isfinite(x)) return false;
    return true;
}

// per-cell s-th moment gate shared by the stages: tolerance is relative to
// the mean per-cell first-moment magnitude
bool moment_gate(const DGData& data, const DGSolution& c, int s, StepReport& rep) {
    const MomentRate m1 = moment_of_rhs(data, c, 1);
    double scale = 0.0;
    for (double x : m1.per_cell) scale += std::abs(x);
    scale /= static_cast<double>(m1.per_cell.size());

    const MomentRate ms = s == 1 ? m1 : moment_of_rhs(data, c, s);
    double mn = std::numeric_limits<double>::infinity();
    std::size_t worst = 0;
    for (std::size_t i = 0; i < ms.per_cell.size(); ++i)
        if (ms.per_cell[i] < mn) {
            mn = ms.per_cell[i];
            worst = i;
        }
    rep.min_cell_moment = mn;
    if (mn < -1e-12 * scale) {
        rep.accepted = false;
        rep.violating_cell = worst;
        return false;
    }
    return true;
}

bool limit_or_reject(DGSolution& c, const LimiterConfig& lim, StepReport& rep) {
    try {
        rep.limiter_activations += apply_limiter(c, lim);
    } catch (const MomentViolation& e) {
        rep.accepted = false;
        rep.violating_cell = e.cell;
        return false;
    }
    return true;
}

}  // namespace

StepReport euler_stage(const DGData& data, DGSolution& c, double dt, double t,
                       const LimiterConfig& lim) {
    StepReport rep;
    DGSolution rhs = apply_rhs(data, c, t);
    for (std::size_t x = 0; x < c.coeff.size(); ++x) c.coeff[x] += dt * rhs.coeff[x];
    if (!moment_gate(data, c, lim.s, rep)) return rep;
    if (!limit_or_reject(c, lim, rep)) return rep;
    rep.accepted = true;
    return rep;
}

StepReport ssprk3_step(const DGData& data, DGSolution& c, double dt, double t,
                       const LimiterConfig& lim) {
    const DGSolution c0 = c;
    auto rewind = [&](StepReport r) {
        c = c0;
        return r;
    };

    StepReport rep = euler_stage(data, c, dt, t, lim);
    if (!rep.accepted) return rewind(rep);

    StepReport r2 = euler_stage(data, c, dt, t + dt, lim);
    rep.limiter_activations += r2.limiter_activations;
    rep.min_cell_moment = std::min(rep.min_cell_moment, r2.min_cell_moment);
    if (!r2.accepted) return rewind(r2);
    for (std::size_t x = 0; x < c.coeff.size(); ++x)
        c.coeff[x] = 0.75 * c0.coeff[x] + 0.25 * c.coeff[x];
    if (!limit_or_reject(c, lim, rep)) return rewind(rep);

    StepReport r3 = euler_stage(data, c, dt, t + 0.5 * dt, lim);
    rep.limiter_activations += r3.limiter_activations;
    rep.min_cell_moment = std::min(rep.min_cell_moment, r3.min_cell_moment);
    if (!r3.accepted) return rewind(r3);
    for (std::size_t x = 0; x < c.coeff.size(); ++x)
        c.coeff[x] = (1.0 / 3.0) * c0.coeff[x] + (2.0 / 3.0) * c.coeff[x];
    if (!limit_or_reject(c, lim, rep)) return rewind(rep);

    rep.accepted = true;
    return rep;
}

double cfl_bound(const DGData& data, const DGSolution& c) {
    double bound = std::numeric_limits<double>::infinity();
    const Mesh& mesh = *data.mesh;

    if (data.kernels.has_aggregation && !data.tris.empty()) {
        const TriangleRule& tr = triangle_rule(data.rules.tri_degree);
        double mx = 0.0;
        for (const AggTriangle& T : data.tris) {
            for (const auto& p : tr.points) {
                const double u = T.v[0][0] + p.x * (T.v[1][0] - T.v[0][0]) +
                                 p.y * (T.v[2][0] - T.v[0][0]);
                const double w = T.v[0][1] + p.x * (T.v[1][1] - T.v[0][1]) +
                                 p.y * (T.v[2][1] - T.v[0][1]);
                const std::size_t qw = static_cast<std::size_t>(T.strip_w);
                const double val =
                    data.kernels.beta(u, w) * c.eval_ref(qw, mesh.to_ref(qw, w));
                mx = std::max(mx, val);
            }
        }
        if (mx > 0.0) bound = std::min(bound, 1.0 / (mesh.v_max() * mx));
    }

    if (data.kernels.has_breakage && !data.elems.empty()) {
        const TriangleRule& tr = triangle_rule(data.rules.tri_degree);
        const LineRule& lob = gauss_lobatto(data.rules.n_lobatto);
        double mx = 0.0;
        auto visit = [&](double u, double w) {
            mx = std::max(mx, u * data.kernels.daughter(u, w) * data.kernels.gamma(w));
        };
        for (const BreakElement& E : data.elems) {
            if (E.is_triangle) {
                for (const auto& p : tr.points)
                    visit(E.v[0][0] + p.x * (E.v[1][0] - E.v[0][0]) +
                              p.y * (E.v[2][0] - E.v[0][0]),
                          E.v[0][1] + p.x * (E.v[1][1] - E.v[0][1]) +
                              p.y * (E.v[2][1] - E.v[0][1]));
            } else {
                const double um = 0.5 * (E.u0 + E.u1), uh = 0.5 * (E.u1 - E.u0);
                const double wm = 0.5 * (E.w0 + E.w1), wh = 0.5 * (E.w1 - E.w0);
                for (int a = 0; a < lob.n; ++a)
                    for (int b = 0; b < lob.n; ++b)
                        visit(um + uh * lob.nodes[a], wm + wh * lob.nodes[b]);
            }
        }
        if (mx > 0.0) bound = std::min(bound, 1.0 / mx);
    }

    if (data.kernels.has_growth) {
        const LineRule& lob = gauss_lobatto(data.rules.n_lobatto);
        double mx = 0.0;
        for (std::size_t i = 0; i < mesh.num_cells(); ++i)
            for (int a = 0; a < lob.n; ++a)
                mx = std::max(mx, std::abs(data.kernels.growth(mesh.from_ref(i, lob.nodes[a]))));
        if (mx > 0.0) bound = std::min(bound, lob.weights.back() * mesh.dv_min / mx);
    }

    return bound;
}

RunResult run(const TimeController& ctrl, const DGSolution& c0, const DGData& data,
              const LimiterConfig& lim, const std::vector<Observer>& observers) {
    if (!(ctrl.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    if (!(ctrl.t_end > ctrl.t)) throw std::invalid_argument("run: t_end must exceed t");

    RunResult res;
    res.state = c0;
    res.t = ctrl.t;

    const double dt_init = ctrl.dt_init > 0.0 ? ctrl.dt_init : ctrl.dt;
    double dt = std::min(ctrl.dt, dt_init);
    int clean = 0;
    const double t_tol = 1e-14 * std::max(1.0, std::abs(ctrl.t_end));

    while (ctrl.t_end - res.t > t_tol) {
        const double rem = ctrl.t_end - res.t;
        double dt_step = std::min(dt, rem);
        if (ctrl.mode == CflMode::TheoremBound) {
            double b = cfl_bound(data, res.state);
            if (!std::isfinite(b) || b <= 0.0) b = dt_init;
            dt_step = std::min(dt_step, b);
        }

        int halvings = 0;
        StepReport rep;
        while (true) {
            const bool forced =
                ctrl.force_reject && ctrl.force_reject(res.steps, dt_step);
            if (!forced) {
                rep = ssprk3_step(data, res.state, dt_step, res.t, lim);
                if (rep.accepted) break;
            }
            ++halvings;
            ++res.total_halvings;
            if (halvings > ctrl.max_halvings) {
                res.failure = "halving budget exhausted at t = " + std::to_string(res.t);
                return res;
            }
            dt_step *= 0.5;
            dt = dt_step;
        }
        rep.halvings = halvings;

        res.t = dt_step >= rem ? ctrl.t_end : res.t + dt_step;
        ++res.steps;

        if (!all_finite(res.state)) {
            res.failure = "non-finite state at t = " + std::to_string(res.t);
            return res;
        }

        if (halvings == 0)
            ++clean;
        else
            clean = 0;
        if (clean >= ctrl.regrow_after && dt < dt_init) {
            dt = std::min(2.0 * dt, dt_init);
            clean = 0;
        }

        for (const Observer& ob : observers) ob(res.t, res.state, rep);
    }

    res.completed = true;
    return res;
}

}  // namespace pbdg
