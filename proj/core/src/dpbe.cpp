#include "pbdg/dpbe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pbdg {
namespace {

constexpr double kCountTol = -1e-12;

// bad = negative beyond tolerance or non-finite anywhere
bool state_bad(const std::vector<double>& n) {
    for (double x : n)
        if (!(x >= kCountTol) || !std::isfinite(x)) return true;
    return false;
}

struct Tables {
    std::size_t K = 0;
    std::vector<double> row;   // row[(i-1)*K + (j-1)] = beta(v_i, v_j)
    std::vector<double> diag;  // diag[off(i) + j-1] = beta(v_j, v_{i-j}), j < i
    std::size_t off(std::size_t i) const { return (i - 1) * (i - 2) / 2; }
};

Tables build_tables(const std::function<double(double, double)>& beta, std::size_t K,
                    double dv) {
    Tables t;
    t.K = K;
    t.row.resize(K * K);
    t.diag.resize(K * (K - 1) / 2);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 1; i <= K; ++i) {
        for (std::size_t j = 1; j <= K; ++j)
            t.row[(i - 1) * K + (j - 1)] = beta(static_cast<double>(i) * dv,
                                                static_cast<double>(j) * dv);
        for (std::size_t j = 1; j < i; ++j)
            t.diag[t.off(i) + (j - 1)] = beta(static_cast<double>(j) * dv,
                                              static_cast<double>(i - j) * dv);
    }
    for (double b : t.row)
        if (!std::isfinite(b)) throw std::runtime_error("dpbe_solve: kernel sample not finite");
    return t;
}

void rhs(const Tables& tb, const std::vector<double>& n, std::vector<double>& out) {
    const std::size_t K = tb.K;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 1; i <= K; ++i) {
        double birth = 0.0;
        const double* d = tb.diag.data() + tb.off(i);
        for (std::size_t j = 1; j < i; ++j) birth += d[j - 1] * n[j - 1] * n[i - j - 1];
        double death = 0.0;
        const double* r = tb.row.data() + (i - 1) * K;
        for (std::size_t j = 1; j + i <= K; ++j) death += r[j - 1] * n[j - 1];
        out[i - 1] = 0.5 * birth - n[i - 1] * death;
    }
}

}  // namespace

double DPBEState::mass() const {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double term = static_cast<double>(i + 1) * dv * n[i];
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

DPBEState dpbe_solve(const std::function<double(double, double)>& beta,
                     std::vector<double> initial, double dv, double t_end, double dt,
                     int max_halvings,
                     const std::function<void(double, const DPBEState&)>& observer) {
    if (initial.empty()) throw std::invalid_argument("dpbe_solve: no classes");
    if (!(dv > 0.0) || !(dt > 0.0)) throw std::invalid_argument("dpbe_solve: dv, dt must be positive");
    const std::size_t K = initial.size();
    const Tables tb = build_tables(beta, K, dv);

    DPBEState st{dv, std::move(initial)};
    std::vector<double> k1(K), s1(K), s2(K), cand(K);
    const double dt_init = dt;
    double t = 0.0;
    const double t_tol = 1e-14 * std::max(1.0, std::abs(t_end));
    int clean = 0;

    while (t < t_end - t_tol) {
        double h = std::min(dt, t_end - t);
        int halvings = 0;
        for (;;) {
            bool ok = true;
            rhs(tb, st.n, k1);
            for (std::size_t i = 0; i < K; ++i) s1[i] = st.n[i] + h * k1[i];
            ok = !state_bad(s1);
            if (ok) {
                rhs(tb, s1, k1);
                for (std::size_t i = 0; i < K; ++i)
                    s2[i] = 0.75 * st.n[i] + 0.25 * (s1[i] + h * k1[i]);
                ok = !state_bad(s2);
            }
            if (ok) {
                rhs(tb, s2, k1);
                for (std::size_t i = 0; i < K; ++i)
                    cand[i] = st.n[i] / 3.0 + 2.0 / 3.0 * (s2[i] + h * k1[i]);
                ok = !state_bad(cand);
            }
            if (ok) break;
            if (++halvings > max_halvings)
                throw std::runtime_error("dpbe_solve: halving budget exhausted");
            h *= 0.5;
            dt = h;
            clean = 0;
        }
        st.n.swap(cand);
        t = (t_end - t - h <= t_tol) ? t_end : t + h;
        if (halvings == 0 && ++clean >= 20) {
            dt = std::min(2.0 * dt, dt_init);
            clean = 0;
        }
        if (observer) observer(t, st);
    }
    return st;
}

std::vector<double> dpbe_project(const std::vector<double>& density, double dv,
                                 const Mesh& mesh) {
    if (!(dv > 0.0)) throw std::invalid_argument("dpbe_project: dv must be positive");
    if (mesh.dv_min < dv)
        std::fprintf(stderr,
                     "pbdg: warning: class width %.3g coarser than finest mesh cell %.3g\n", dv,
                     mesh.dv_min);
    const std::size_t K = density.size();
    // class i (1-based) occupies [edge(i-1), edge(i)); class 1 reaches down to 0
    auto edge = [&](std::size_t i) {
        return i == 0 ? 0.0 : (static_cast<double>(i) + 0.5) * dv;
    };
    std::vector<double> avg(mesh.num_cells(), 0.0);
    std::size_t cls = 1;
    for (std::size_t cell = 0; cell < mesh.num_cells(); ++cell) {
        const double a = mesh.left(cell), b = mesh.right(cell);
        while (cls < K && edge(cls) <= a) ++cls;
        double integral = 0.0;
        for (std::size_t i = cls; i <= K; ++i) {
            const double lo = std::max(a, edge(i - 1)), hi = std::min(b, edge(i));
            if (hi > lo) integral += density[i - 1] * (hi - lo);
            if (edge(i) >= b) break;
        }
        avg[cell] = integral / (b - a);
    }
    return avg;
}

std::vector<double> dpbe_project(const DPBEState& state, const Mesh& mesh) {
    std::vector<double> density(state.n.size());
    for (std::size_t i = 0; i < density.size(); ++i) density[i] = state.n[i] / state.dv;
    return dpbe_project(density, state.dv, mesh);
}

}  // namespace pbdg
