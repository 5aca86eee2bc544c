#include "pbdg/limiter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pbdg/basis.hpp"
#include "pbdg/quadrature.hpp"

namespace pbdg {
namespace {

double eval_ref_coeff(const double* cc, int k, double x) {
    std::array<double, kMaxDegree + 1> b{};
    basis_eval_all(k, x, b.data());
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += cc[j] * b[j];
    return s;
}

// int_{I_i} v^s phi_j^i dv for j = 0..k, exact via Gauss-Legendre
void moment_row(const Mesh& mesh, std::size_t i, int k, int s, double* w) {
    const LineRule& gl = gauss_legendre(k + 1);
    std::array<double, kMaxDegree + 1> b{};
    std::fill(w, w + k + 1, 0.0);
    const double half = 0.5 * mesh.width[i];
    for (int a = 0; a < gl.n; ++a) {
        const double v = mesh.from_ref(i, gl.nodes[a]);
        double p = half * gl.weights[a];
        for (int r = 0; r < s; ++r) p *= v;
        basis_eval_all(k, gl.nodes[a], b.data());
        for (int j = 0; j <= k; ++j) w[j] += p * b[j];
    }
}

}  // namespace

MomentViolation::MomentViolation(std::size_t cell_, double moment_, double scale_)
    : std::runtime_error("limiter: cell " + std::to_string(cell_) +
                         " has negative moment " + std::to_string(moment_) +
                         " beyond roundoff tolerance"),
      cell(cell_),
      moment(moment_),
      scale(scale_) {}

double cell_min(const DGSolution& c, std::size_t i, const LimiterConfig& cfg) {
    const int k = c.k;
    const int ng = cfg.n_lobatto > 0 ? cfg.n_lobatto : k + 2;
    const LineRule& lob = gauss_lobatto(ng);
    const double* cc = c.cell(i);

    double mn = eval_ref_coeff(cc, k, lob.nodes[0]);
    for (int a = 1; a < lob.n; ++a)
        mn = std::min(mn, eval_ref_coeff(cc, k, lob.nodes[a]));

    if (k == 2 && cc[2] != 0.0) {
        // n' = 0 at x = -c1 / (sqrt(15) c2); with the endpoints this makes the
        // quadratic minimum exact
        const double x = -cc[1] / (std::sqrt(15.0) * cc[2]);
        if (x > -1.0 && x < 1.0) mn = std::min(mn, eval_ref_coeff(cc, k, x));
    }
    if (cfg.dense_sampling) {
        for (int a = 0; a < 64; ++a) {
            const double x = std::cos(std::numbers::pi * a / 63.0);
            mn = std::min(mn, eval_ref_coeff(cc, k, x));
        }
    }
    return mn;
}

bool apply_limiter_cell(DGSolution& c, std::size_t i, const LimiterConfig& cfg) {
    if (cfg.s < 0 || cfg.s > c.k)
        throw std::invalid_argument("limiter: moment order outside [0, k]");
    const double mn = cell_min(c, i, cfg);
    if (!(mn < 0.0)) return false;
    const double m = -mn;

    const int k = c.k;
    std::array<double, kMaxDegree + 1> w{};
    moment_row(*c.mesh, i, k, cfg.s, w.data());
    double ms = 0.0;
    const double* cc = c.cell(i);
    for (int j = 0; j <= k; ++j) ms += cc[j] * w[j];

    // int_{I_i} v^s dv = (b^{s+1} - a^{s+1}) / (s+1)
    const double a = c.mesh->left(i), b = c.mesh->right(i);
    double bp = b, ap = a;
    for (int r = 0; r < cfg.s; ++r) {
        bp *= b;
        ap *= a;
    }
    const double vs = (bp - ap) / (cfg.s + 1);

    const double scale = m * vs + std::abs(ms);
    if (ms < -1e-13 * scale) throw MomentViolation(i, ms, scale);

    const double theta = ms <= 0.0 ? 0.0 : ms / (ms + m * vs);
    double* cw = c.cell(i);
    cw[0] = theta * (cw[0] + std::numbers::sqrt2 * m);
    for (int j = 1; j <= k; ++j) cw[j] *= theta;
    return true;
}

int apply_limiter(DGSolution& c, const LimiterConfig& cfg) {
    if (!cfg.enabled) return 0;
    int count = 0;
    for (std::size_t i = 0; i < c.num_cells(); ++i)
        if (apply_limiter_cell(c, i, cfg)) ++count;
    return count;
}

}  // namespace pbdg
