#include "pbdg/assembly.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pbdg/quadrature.hpp"

namespace pbdg {
namespace {

constexpr int kM = kMaxDegree + 1;

double checked(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::runtime_error(std::string("kernel evaluation failed: ") + what);
    return x;
}

double dotn(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

// Neumaier compensated sum; used for the global moment functionals only.
double compensated_total(const std::vector<double>& xs) {
    double s = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            comp += (s - t) + x;
        else
            comp += (x - t) + s;
        s = t;
    }
    return s + comp;
}

// CSR of item ids per owner cell, ids ascending within each owner.
template <class OwnerOf>
void build_csr(std::size_t n_items, std::size_t n_owners, OwnerOf owner,
               std::vector<int>& off, std::vector<int>& ids) {
    off.assign(n_owners + 1, 0);
    for (std::size_t e = 0; e < n_items; ++e) ++off[static_cast<std::size_t>(owner(e)) + 1];
    for (std::size_t i = 0; i < n_owners; ++i) off[i + 1] += off[i];
    ids.resize(n_items);
    std::vector<int> cursor(off.begin(), off.end() - 1);
    for (std::size_t e = 0; e < n_items; ++e)
        ids[static_cast<std::size_t>(cursor[owner(e)]++)] = static_cast<int>(e);
}

struct TriNodes {
    // cartesian quadrature nodes and area-weighted weights of one triangle
    const TriangleRule* rule;
    double u(const AggTriangle& T, std::size_t g) const {
        const auto& p = rule->points[g];
        return T.v[0][0] + p.x * (T.v[1][0] - T.v[0][0]) + p.y * (T.v[2][0] - T.v[0][0]);
    }
    double w(const AggTriangle& T, std::size_t g) const {
        const auto& p = rule->points[g];
        return T.v[0][1] + p.x * (T.v[1][1] - T.v[0][1]) + p.y * (T.v[2][1] - T.v[0][1]);
    }
};

}  // namespace

RuleSpec default_rules(int k) { return RuleSpec{k + 2, 2 * k + 2}; }

DGData precompute(std::shared_ptr<const Mesh> mesh, const Basis& basis,
                  const KernelSet& kernels, const std::vector<AggTriangle>& agg,
                  const std::vector<BreakElement>& brk, const RuleSpec& rules, bool merge) {
    if (!mesh || mesh->num_cells() == 0)
        throw std::invalid_argument("precompute: empty mesh");
    const int k = basis.degree;
    if (k < 1 || k > kMaxDegree)
        throw std::invalid_argument("precompute: degree out of range");
    if (rules.n_lobatto < k + 2 || rules.n_lobatto > 10)
        throw std::invalid_argument("precompute: n_lobatto must lie in [k+2, 10]");
    if (kernels.has_aggregation || kernels.has_breakage) {
        if (rules.tri_degree < 2 * k + 2)
            throw std::invalid_argument("precompute: tri_degree must be >= 2k+2");
        triangle_rule(rules.tri_degree);  // throws if beyond the tabulated degrees
    }

    DGData d;
    d.mesh = mesh;
    d.k = k;
    d.rules = rules;
    d.kernels = kernels;

    const std::size_t L = mesh->num_cells();
    const int km = k + 1, km2 = km * km, km3 = km2 * km;
    const LineRule& lob = gauss_lobatto(rules.n_lobatto);

    // reference basis tables at the Lobatto nodes, [node][j]
    std::vector<double> bt(static_cast<std::size_t>(lob.n) * km);
    std::vector<double> bdt(static_cast<std::size_t>(lob.n) * km);
    for (int a = 0; a < lob.n; ++a) {
        basis_eval_all(k, lob.nodes[a], &bt[static_cast<std::size_t>(a) * km]);
        basis_eval_deriv_all(k, lob.nodes[a], &bdt[static_cast<std::size_t>(a) * km]);
    }
    std::array<double, kM> bl{}, br{};
    basis_eval_all(k, -1.0, bl.data());
    basis_eval_all(k, 1.0, br.data());

    if (kernels.has_growth) {
        if (!kernels.growth)
            throw std::invalid_argument("precompute: has_growth without a growth function");
        d.growth_mat.assign(L * km2, 0.0);
        d.growth_left.assign(L * km2, 0.0);
        d.inflow_vec.assign(km, 0.0);
        for (std::size_t i = 0; i < L; ++i) {
            double* gm = &d.growth_mat[i * km2];
            // volume term: the (dv/2) quadrature factor cancels the (2/dv)
            // mapping factor of phi_j'
            for (int a = 0; a < lob.n; ++a) {
                const double v = mesh->from_ref(i, lob.nodes[a]);
                const double g = checked(kernels.growth(v), "growth");
                const double* B = &bt[static_cast<std::size_t>(a) * km];
                const double* D = &bdt[static_cast<std::size_t>(a) * km];
                const double wg = lob.weights[a] * g;
                for (int j = 0; j < km; ++j)
                    for (int m = 0; m < km; ++m) gm[j * km + m] += wg * D[j] * B[m];
            }
            const double gr = checked(kernels.growth(mesh->right(i)), "growth");
            for (int j = 0; j < km; ++j)
                for (int m = 0; m < km; ++m) gm[j * km + m] -= gr * br[j] * br[m];
            if (i > 0) {
                const double gl = checked(kernels.growth(mesh->left(i)), "growth");
                double* gf = &d.growth_left[i * km2];
                for (int j = 0; j < km; ++j)
                    for (int m = 0; m < km; ++m) gf[j * km + m] = gl * bl[j] * br[m];
            }
        }
        const double g0 = checked(kernels.growth(mesh->edges.front()), "growth");
        for (int j = 0; j < km; ++j) d.inflow_vec[j] = g0 * bl[j];
    }

    if (kernels.has_nucleation) {
        if (!kernels.nucleation)
            throw std::invalid_argument("precompute: has_nucleation without a source function");
        d.nucleation_vec.assign(L * km, 0.0);
        for (std::size_t i = 0; i < L; ++i) {
            double* nv = &d.nucleation_vec[i * km];
            const double half = 0.5 * mesh->width[i];
            for (int a = 0; a < lob.n; ++a) {
                const double v = mesh->from_ref(i, lob.nodes[a]);
                const double s = checked(kernels.nucleation(v), "nucleation");
                const double ws = half * lob.weights[a] * s;
                const double* B = &bt[static_cast<std::size_t>(a) * km];
                for (int m = 0; m < km; ++m) nv[m] += ws * B[m];
            }
        }
    }

    if (kernels.has_aggregation) {
        if (!kernels.beta)
            throw std::invalid_argument("precompute: has_aggregation without beta");
        if (agg.empty())
            throw std::invalid_argument("precompute: aggregation active but refinement empty");
        d.tris = agg;
        const TriangleRule& tr = triangle_rule(rules.tri_degree);
        const TriNodes tn{&tr};
        d.agg_birth.assign(d.tris.size() * km3, 0.0);
        d.agg_death.assign(d.tris.size() * km3, 0.0);

        std::vector<int> reps;
        reps.reserve(d.tris.size() / 2 + 1);
        for (std::size_t ti = 0; ti < d.tris.size(); ++ti)
            if (!d.tris[ti].mirror) reps.push_back(static_cast<int>(ti));

        std::atomic<bool> bad{false};
        const auto nrep = static_cast<std::ptrdiff_t>(reps.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < nrep; ++r) {
            if (bad.load(std::memory_order_relaxed)) continue;
            const std::size_t ti = static_cast<std::size_t>(reps[static_cast<std::size_t>(r)]);
            const AggTriangle& T = d.tris[ti];
            const bool paired = ti + 1 < d.tris.size() && d.tris[ti + 1].mirror;
            double* B = &d.agg_birth[ti * km3];
            double* D = &d.agg_death[ti * km3];
            double* Bm = paired ? &d.agg_birth[(ti + 1) * km3] : nullptr;
            double* Dm = paired ? &d.agg_death[(ti + 1) * km3] : nullptr;
            std::array<double, kM> bu{}, bw{}, bs{};
            for (std::size_t g = 0; g < tr.points.size(); ++g) {
                const double u = tn.u(T, g), w = tn.w(T, g);
                const double bv = d.kernels.beta(u, w);
                if (!std::isfinite(bv)) {
                    bad.store(true, std::memory_order_relaxed);
                    break;
                }
                const double wt = T.area * tr.points[g].w * bv;
                basis_eval_all(k, mesh->to_ref(static_cast<std::size_t>(T.strip_u), u), bu.data());
                basis_eval_all(k, mesh->to_ref(static_cast<std::size_t>(T.strip_w), w), bw.data());
                basis_eval_all(k, mesh->to_ref(static_cast<std::size_t>(T.band), u + w), bs.data());
                for (int j = 0; j < km; ++j) {
                    const double hb = 0.5 * wt * bs[j];
                    const double du = wt * bu[j];
                    const double dw = Dm ? wt * bw[j] : 0.0;
                    for (int m = 0; m < km; ++m) {
                        const double hbm = hb * bu[m];
                        const double dum = du * bu[m];
                        const double dwm = dw * bw[m];
                        double* Bj = &B[(j * km + m) * km];
                        double* Dj = &D[(j * km + m) * km];
                        double* Dmj = Dm ? &Dm[(j * km + m) * km] : nullptr;
                        for (int l = 0; l < km; ++l) {
                            Bj[l] += hbm * bw[l];
                            Dj[l] += dum * bw[l];
                            if (Dmj) Dmj[l] += dwm * bu[l];
                        }
                    }
                }
            }
            if (Bm)  // mirror birth is the (m, l) transpose of the representative
                for (int j = 0; j < km; ++j)
                    for (int m = 0; m < km; ++m)
                        for (int l = 0; l < km; ++l)
                            Bm[(j * km + m) * km + l] = B[(j * km + l) * km + m];
        }
        if (bad.load()) throw std::runtime_error("kernel evaluation failed: beta");

        build_csr(d.tris.size(), L, [&](std::size_t e) { return d.tris[e].band; },
                  d.tri_by_band_off, d.tri_by_band);
        build_csr(d.tris.size(), L, [&](std::size_t e) { return d.tris[e].strip_u; },
                  d.tri_by_strip_off, d.tri_by_strip);
    }

    if (kernels.has_breakage) {
        if (!kernels.gamma || !kernels.daughter)
            throw std::invalid_argument("precompute: has_breakage without gamma/daughter");
        if (brk.empty())
            throw std::invalid_argument("precompute: breakage active but refinement empty");
        d.elems = brk;
        const TriangleRule& tr = triangle_rule(rules.tri_degree);
        d.brk_birth.assign(d.elems.size() * km2, 0.0);
        d.brk_death.assign(d.elems.size() * km, 0.0);

        std::atomic<bool> bad{false};
        const auto nel = static_cast<std::ptrdiff_t>(d.elems.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ei = 0; ei < nel; ++ei) {
            if (bad.load(std::memory_order_relaxed)) continue;
            const BreakElement& E = d.elems[static_cast<std::size_t>(ei)];
            double* Bb = &d.brk_birth[static_cast<std::size_t>(ei) * km2];
            double* Bd = &d.brk_death[static_cast<std::size_t>(ei) * km];
            std::array<double, kM> bu{}, bw{};
            auto add_node = [&](double u, double w, double wt) {
                const double pg = d.kernels.daughter(u, w) * d.kernels.gamma(w);
                if (!std::isfinite(pg)) {
                    bad.store(true, std::memory_order_relaxed);
                    return;
                }
                const double f = wt * pg;
                basis_eval_all(k, mesh->to_ref(static_cast<std::size_t>(E.strip_u), u), bu.data());
                basis_eval_all(k, mesh->to_ref(static_cast<std::size_t>(E.band_w), w), bw.data());
                for (int j = 0; j < km; ++j) {
                    const double fj = f * bu[j];
                    for (int m = 0; m < km; ++m) Bb[j * km + m] += fj * bw[m];
                }
                const double fu = f * u;
                for (int m = 0; m < km; ++m) Bd[m] += fu * bw[m];
            };
            if (E.is_triangle) {
                for (const auto& p : tr.points) {
                    const double u = E.v[0][0] + p.x * (E.v[1][0] - E.v[0][0]) +
                                     p.y * (E.v[2][0] - E.v[0][0]);
                    const double w = E.v[0][1] + p.x * (E.v[1][1] - E.v[0][1]) +
                                     p.y * (E.v[2][1] - E.v[0][1]);
                    add_node(u, w, E.area * p.w);
                }
            } else {
                const double um = 0.5 * (E.u0 + E.u1), uh = 0.5 * (E.u1 - E.u0);
                const double wm = 0.5 * (E.w0 + E.w1), wh = 0.5 * (E.w1 - E.w0);
                const double scale = 0.25 * E.area;
                for (int a = 0; a < lob.n && !bad.load(std::memory_order_relaxed); ++a)
                    for (int b = 0; b < lob.n; ++b)
                        add_node(um + uh * lob.nodes[a], wm + wh * lob.nodes[b],
                                 scale * lob.weights[a] * lob.weights[b]);
            }
        }
        if (bad.load()) throw std::runtime_error("kernel evaluation failed: gamma/daughter");

        d.brk_cell.assign(L * km2, 0.0);
        for (std::size_t i = 0; i < L; ++i) {
            double* cm = &d.brk_cell[i * km2];
            const double half = 0.5 * mesh->width[i];
            for (int a = 0; a < lob.n; ++a) {
                const double v = mesh->from_ref(i, lob.nodes[a]);
                const double g = checked(kernels.gamma(v), "gamma");
                const double wg = half * lob.weights[a] * g;
                const double* B = &bt[static_cast<std::size_t>(a) * km];
                for (int j = 0; j < km; ++j) {
                    const double fj = wg * (B[j] - v);
                    for (int m = 0; m < km; ++m) cm[j * km + m] += fj * B[m];
                }
            }
        }

        build_csr(d.elems.size(), L, [&](std::size_t e) { return d.elems[e].strip_u; },
                  d.elem_by_strip_off, d.elem_by_strip);
        build_csr(d.elems.size(), L, [&](std::size_t e) { return d.elems[e].band_w; },
                  d.elem_by_band_off, d.elem_by_band);
    }

    // exact moment matrices: integrands are degree s + j <= 2k, Gauss-Legendre
    // with k+1 points is exact
    d.wmat.assign(static_cast<std::size_t>(km) * L * km, 0.0);
    const LineRule& gl = gauss_legendre(k + 1);
    for (int s = 0; s <= k; ++s)
        for (std::size_t i = 0; i < L; ++i)
            for (int j = 0; j < km; ++j)
                d.wmat[(static_cast<std::size_t>(s) * L + i) * km + j] = integrate_interval(
                    gl, mesh->left(i), mesh->right(i), [&](double v) {
                        double p = 1.0;
                        for (int r = 0; r < s; ++r) p *= v;
                        return p * basis_eval(j, mesh->to_ref(i, v));
                    });

    if (merge) compact(d);
    return d;
}

void compact(DGData& d) {
    if (d.compacted) return;
    const std::size_t L = d.num_cells();
    const int km = d.k + 1, km2 = km * km, km3 = km2 * km;

    // merge tensors sharing owner cells, ordered by (destination, owners)
    auto merge_tris = [&](auto key, const std::vector<double>& src, std::vector<int>& off,
                          std::vector<int>* out_p, std::vector<int>& out_q,
                          std::vector<double>& out_t) {
        std::vector<int> order(d.tris.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return key(a) < key(b); });
        off.assign(L + 1, 0);
        out_q.clear();
        out_t.clear();
        if (out_p) out_p->clear();
        std::array<int, 3> prev{-1, -1, -1};
        for (int ti : order) {
            const auto kk = key(ti);
            if (kk != prev) {
                prev = kk;
                ++off[static_cast<std::size_t>(kk[0]) + 1];
                if (out_p) out_p->push_back(kk[1]);
                out_q.push_back(out_p ? kk[2] : kk[1]);
                out_t.insert(out_t.end(), km3, 0.0);
            }
            double* dst = &out_t[out_t.size() - static_cast<std::size_t>(km3)];
            const double* s = &src[static_cast<std::size_t>(ti) * km3];
            for (int x = 0; x < km3; ++x) dst[x] += s[x];
        }
        for (std::size_t i = 0; i < L; ++i) off[i + 1] += off[i];
    };

    if (!d.tris.empty()) {
        merge_tris(
            [&](int ti) {
                return std::array<int, 3>{d.tris[ti].band, d.tris[ti].strip_u, d.tris[ti].strip_w};
            },
            d.agg_birth, d.mb_off, &d.mb_p, d.mb_q, d.mb_t);
        merge_tris(
            [&](int ti) {
                return std::array<int, 3>{d.tris[ti].strip_u, d.tris[ti].strip_w, 0};
            },
            d.agg_death, d.md_off, nullptr, d.md_q, d.md_t);
    }

    if (!d.elems.empty()) {
        // elements are emitted strip-major with ascending band, one per pair
        d.bb_off.assign(L + 1, 0);
        d.bb_q.resize(d.elems.size());
        for (std::size_t e = 0; e < d.elems.size(); ++e) {
            ++d.bb_off[static_cast<std::size_t>(d.elems[e].strip_u) + 1];
            d.bb_q[e] = d.elems[e].band_w;
        }
        for (std::size_t i = 0; i < L; ++i) d.bb_off[i + 1] += d.bb_off[i];
        d.bb_t = d.brk_birth;
        d.bd_cell.assign(L * km, 0.0);
        for (std::size_t e = 0; e < d.elems.size(); ++e)
            for (int m = 0; m < km; ++m)
                d.bd_cell[static_cast<std::size_t>(d.elems[e].band_w) * km + m] +=
                    d.brk_death[e * km + m];
    }
    d.compacted = true;
}

namespace {

void apply_cell(const DGData& d, const DGSolution& c, double boundary, std::size_t dest,
                RHSWorkspace& ws, DGSolution& dcdt) {
    const int km = d.k + 1, km2 = km * km, km3 = km2 * km;
    double* row = ws.row.data();
    double* pair = ws.pair.data();
    std::fill(row, row + km, 0.0);

    if (d.kernels.has_growth) {
        const double* gm = &d.growth_mat[dest * km2];
        const double* cc = c.cell(dest);
        for (int j = 0; j < km; ++j) row[j] += dotn(&gm[j * km], cc, km);
        if (dest > 0) {
            const double* gf = &d.growth_left[dest * km2];
            const double* cl = c.cell(dest - 1);
            for (int j = 0; j < km; ++j) row[j] += dotn(&gf[j * km], cl, km);
        } else {
            for (int j = 0; j < km; ++j) row[j] += d.inflow_vec[j] * boundary;
        }
    }
    if (d.kernels.has_nucleation) {
        const double* nv = &d.nucleation_vec[dest * km];
        for (int j = 0; j < km; ++j) row[j] += nv[j];
    }

    if (d.kernels.has_aggregation) {
        if (d.compacted) {
            for (int e = d.mb_off[dest]; e < d.mb_off[dest + 1]; ++e) {
                const double* cp = c.cell(static_cast<std::size_t>(d.mb_p[e]));
                const double* cq = c.cell(static_cast<std::size_t>(d.mb_q[e]));
                for (int m = 0; m < km; ++m)
                    for (int l = 0; l < km; ++l) pair[m * km + l] = cp[m] * cq[l];
                const double* t = &d.mb_t[static_cast<std::size_t>(e) * km3];
                for (int j = 0; j < km; ++j) row[j] += dotn(&t[j * km2], pair, km2);
            }
            const double* cp = c.cell(dest);
            for (int e = d.md_off[dest]; e < d.md_off[dest + 1]; ++e) {
                const double* cq = c.cell(static_cast<std::size_t>(d.md_q[e]));
                for (int m = 0; m < km; ++m)
                    for (int l = 0; l < km; ++l) pair[m * km + l] = cp[m] * cq[l];
                const double* t = &d.md_t[static_cast<std::size_t>(e) * km3];
                for (int j = 0; j < km; ++j) row[j] -= dotn(&t[j * km2], pair, km2);
            }
        } else {
            for (int ii = d.tri_by_band_off[dest]; ii < d.tri_by_band_off[dest + 1]; ++ii) {
                const std::size_t ti = static_cast<std::size_t>(d.tri_by_band[ii]);
                const AggTriangle& T = d.tris[ti];
                const double* cp = c.cell(static_cast<std::size_t>(T.strip_u));
                const double* cq = c.cell(static_cast<std::size_t>(T.strip_w));
                for (int m = 0; m < km; ++m)
                    for (int l = 0; l < km; ++l) pair[m * km + l] = cp[m] * cq[l];
                const double* t = &d.agg_birth[ti * km3];
                for (int j = 0; j < km; ++j) row[j] += dotn(&t[j * km2], pair, km2);
            }
            const double* cp = c.cell(dest);
            for (int ii = d.tri_by_strip_off[dest]; ii < d.tri_by_strip_off[dest + 1]; ++ii) {
                const std::size_t ti = static_cast<std::size_t>(d.tri_by_strip[ii]);
                const double* cq = c.cell(static_cast<std::size_t>(d.tris[ti].strip_w));
                for (int m = 0; m < km; ++m)
                    for (int l = 0; l < km; ++l) pair[m * km + l] = cp[m] * cq[l];
                const double* t = &d.agg_death[ti * km3];
                for (int j = 0; j < km; ++j) row[j] -= dotn(&t[j * km2], pair, km2);
            }
        }
    }

    if (d.kernels.has_breakage) {
        const double* cc = c.cell(dest);
        if (d.compacted) {
            for (int e = d.bb_off[dest]; e < d.bb_off[dest + 1]; ++e) {
                const double* cq = c.cell(static_cast<std::size_t>(d.bb_q[e]));
                const double* t = &d.bb_t[static_cast<std::size_t>(e) * km2];
                for (int j = 0; j < km; ++j) row[j] += dotn(&t[j * km], cq, km);
            }
            const double death = dotn(&d.bd_cell[dest * km], cc, km);
            for (int j = 0; j < km; ++j) row[j] -= death;
        } else {
            for (int ii = d.elem_by_strip_off[dest]; ii < d.elem_by_strip_off[dest + 1]; ++ii) {
                const std::size_t e = static_cast<std::size_t>(d.elem_by_strip[ii]);
                const double* cq = c.cell(static_cast<std::size_t>(d.elems[e].band_w));
                const double* t = &d.brk_birth[e * km2];
                for (int j = 0; j < km; ++j) row[j] += dotn(&t[j * km], cq, km);
            }
            double death = 0.0;
            for (int ii = d.elem_by_band_off[dest]; ii < d.elem_by_band_off[dest + 1]; ++ii) {
                const std::size_t e = static_cast<std::size_t>(d.elem_by_band[ii]);
                death += dotn(&d.brk_death[e * km], cc, km);
            }
            for (int j = 0; j < km; ++j) row[j] -= death;
        }
        const double* cm = &d.brk_cell[dest * km2];
        for (int j = 0; j < km; ++j) row[j] -= dotn(&cm[j * km], cc, km);
    }

    const double scale = 2.0 / d.mesh->width[dest];
    double* out = dcdt.cell(dest);
    for (int j = 0; j < km; ++j) out[j] = scale * row[j];
}

}  // namespace

void apply_rhs(const DGData& d, const DGSolution& c, double t, DGSolution& dcdt) {
    if (c.k != d.k || c.num_cells() != d.num_cells())
        throw std::invalid_argument("apply_rhs: state and data disagree on mesh/degree");
    if (dcdt.coeff.size() != c.coeff.size()) dcdt = DGSolution(d.mesh, d.k);

    double boundary = 0.0;
    if (d.kernels.has_growth && d.kernels.inflow)
        boundary = checked(d.kernels.inflow(t), "inflow");

    const auto L = static_cast<std::ptrdiff_t>(d.num_cells());
    const int km = d.k + 1;
#pragma omp parallel
    {
        RHSWorkspace ws;
        ws.row.assign(static_cast<std::size_t>(km), 0.0);
        ws.pair.assign(static_cast<std::size_t>(km) * km, 0.0);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < L; ++i)
            apply_cell(d, c, boundary, static_cast<std::size_t>(i), ws, dcdt);
    }
}

DGSolution apply_rhs(const DGData& d, const DGSolution& c, double t) {
    DGSolution dcdt(d.mesh, d.k);
    apply_rhs(d, c, t, dcdt);
    return dcdt;
}

MomentRate moment_of_rhs(const DGData& d, const DGSolution& cdot, int s) {
    if (s < 0 || s > d.k)
        throw std::invalid_argument("moment_of_rhs: moment order outside [0, k]");
    if (cdot.k != d.k || cdot.num_cells() != d.num_cells())
        throw std::invalid_argument("moment_of_rhs: state and data disagree on mesh/degree");
    const std::size_t L = d.num_cells();
    const int km = d.k + 1;
    MomentRate r;
    r.per_cell.resize(L);
    for (std::size_t i = 0; i < L; ++i)
        r.per_cell[i] =
            dotn(&d.wmat[(static_cast<std::size_t>(s) * L + i) * km], cdot.cell(i), km);
    r.total = compensated_total(r.per_cell);
    return r;
}

}  // namespace pbdg
