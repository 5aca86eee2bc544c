#include "pbdg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbdg {

namespace {

// All clip geometry is structured: polygon edges are axis-parallel, slope -1
// band boundaries, or the diagonal u = w.  Tagging each edge with its kind
// and defining parameter lets every intersection be computed closed-form,
// which keeps the construction reproducible.
enum class EdgeKind { Vert, Horiz, Band, Diag };

struct Vertex {
    double u, w;
    EdgeKind kind;  // kind of the edge leaving this vertex
    double param;   // u for Vert, w for Horiz, u + w for Band, unused for Diag
};

using Polygon = std::vector<Vertex>;

enum class ClipKind { BandMin, BandMax, DiagBelow };  // keep u+w >= c, u+w <= c, u <= w

double side_of(const Vertex& p, ClipKind clip, double c) {
    switch (clip) {
        case ClipKind::BandMin: return (p.u + p.w) - c;
        case ClipKind::BandMax: return c - (p.u + p.w);
        default: return p.w - p.u;
    }
}

// Intersection of the edge leaving p with the clip line, from the edge tag.
Vertex intersect(const Vertex& p, ClipKind clip, double c) {
    Vertex x{};
    if (clip == ClipKind::DiagBelow) {
        switch (p.kind) {
            case EdgeKind::Vert: x.u = x.w = p.param; break;
            case EdgeKind::Horiz: x.u = x.w = p.param; break;
            case EdgeKind::Band: x.u = x.w = 0.5 * p.param; break;
            default: x.u = p.u; x.w = p.w; break;  // parallel; degenerate
        }
    } else {
        switch (p.kind) {
            case EdgeKind::Vert: x.u = p.param; x.w = c - p.param; break;
            case EdgeKind::Horiz: x.w = p.param; x.u = c - p.param; break;
            case EdgeKind::Diag: x.u = x.w = 0.5 * c; break;
            default: x.u = p.u; x.w = p.w; break;  // parallel; degenerate
        }
    }
    return x;
}

// Sutherland-Hodgman against one half-plane, preserving edge tags.  The edge
// inserted along the clip line is tagged Band or Diag accordingly.
Polygon clip(const Polygon& poly, ClipKind ck, double c) {
    Polygon out;
    if (poly.empty()) return out;
    const std::size_t n = poly.size();
    const EdgeKind new_kind = (ck == ClipKind::DiagBelow) ? EdgeKind::Diag : EdgeKind::Band;
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex& p = poly[i];
        const Vertex& q = poly[(i + 1) % n];
        const double sp = side_of(p, ck, c), sq = side_of(q, ck, c);
        if (sp >= 0.0) {
            if (sq >= 0.0) {
                out.push_back(q);
            } else {
                Vertex x = intersect(p, ck, c);
                x.kind = new_kind;
                x.param = (ck == ClipKind::DiagBelow) ? 0.0 : c;
                out.push_back(x);
            }
        } else if (sq >= 0.0) {
            Vertex x = intersect(p, ck, c);
            x.kind = p.kind;
            x.param = p.param;
            out.push_back(x);
            out.push_back(q);
        }
    }
    // drop consecutive duplicates introduced by on-line vertices, keeping the
    // latest tag (it describes the edge leaving the retained position)
    Polygon dedup;
    for (const Vertex& v : out) {
        if (!dedup.empty() && dedup.back().u == v.u && dedup.back().w == v.w)
            dedup.back() = v;
        else
            dedup.push_back(v);
    }
    while (dedup.size() > 1 && dedup.front().u == dedup.back().u &&
           dedup.front().w == dedup.back().w)
        dedup.pop_back();
    if (dedup.size() < 3) dedup.clear();
    return dedup;
}

double tri_area(const std::array<std::array<double, 2>, 3>& t) {
    return 0.5 * std::abs((t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) -
                          (t[1][1] - t[0][1]) * (t[2][0] - t[0][0]));
}

}  // namespace

std::vector<AggTriangle> build_aggregation_refinement(const Mesh& mesh) {
    if (mesh.edges.front() != 0.0)
        throw std::invalid_argument("aggregation refinement requires v_{1/2} = 0");
    const std::size_t L = mesh.num_cells();
    const double area_floor = 1e-14 * mesh.v_max() * mesh.v_max();
    std::vector<AggTriangle> tris;

    auto emit_pair = [&](const std::array<std::array<double, 2>, 3>& t, int band, int j, int k) {
        const double a = tri_area(t);
        if (a < area_floor) return;
        tris.push_back({t, band, j, k, false, a});
        // exact coordinate swap, same vertex order
        std::array<std::array<double, 2>, 3> m = {{{t[0][1], t[0][0]}, {t[1][1], t[1][0]}, {t[2][1], t[2][0]}}};
        tris.push_back({m, band, k, j, true, a});
    };

    auto fan = [&](const Polygon& poly, int band, int j, int k) {
        for (std::size_t t = 1; t + 1 < poly.size(); ++t) {
            std::array<std::array<double, 2>, 3> tv = {{{poly[0].u, poly[0].w},
                                                        {poly[t].u, poly[t].w},
                                                        {poly[t + 1].u, poly[t + 1].w}}};
            emit_pair(tv, band, j, k);
        }
    };

    for (std::size_t j = 0; j < L; ++j) {
        const double u0 = mesh.edges[j], u1 = mesh.edges[j + 1];
        for (std::size_t k = j; k < L; ++k) {
            const double w0 = mesh.edges[k], w1 = mesh.edges[k + 1];
            if (u0 + w0 >= mesh.v_max()) break;  // rectangle outside Omega^a
            // bands overlapping the rectangle's u+w range
            const double s_lo = u0 + w0, s_hi = u1 + w1;
            for (std::size_t i = 0; i < L; ++i) {
                if (mesh.edges[i + 1] <= s_lo) continue;
                if (mesh.edges[i] >= s_hi) break;
                // CCW rectangle with tagged edges
                Polygon poly = {{u0, w0, EdgeKind::Horiz, w0},
                                {u1, w0, EdgeKind::Vert, u1},
                                {u1, w1, EdgeKind::Horiz, w1},
                                {u0, w1, EdgeKind::Vert, u0}};
                poly = clip(poly, ClipKind::BandMin, mesh.edges[i]);
                poly = clip(poly, ClipKind::BandMax, mesh.edges[i + 1]);
                if (poly.empty()) continue;
                if (k > j) {
                    fan(poly, static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
                } else {
                    // diagonal square: triangulate only the {u <= w} half and
                    // reflect, so mirror symmetry holds bit-for-bit
                    Polygon half = clip(poly, ClipKind::DiagBelow, 0.0);
                    fan(half, static_cast<int>(i), static_cast<int>(j), static_cast<int>(j));
                }
            }
        }
    }
    return tris;
}

std::vector<BreakElement> build_breakage_refinement(const Mesh& mesh) {
    const std::size_t L = mesh.num_cells();
    std::vector<BreakElement> elems;
    elems.reserve(L + L * (L - 1) / 2);
    for (std::size_t i = 0; i < L; ++i) {
        const double a0 = mesh.edges[i], a1 = mesh.edges[i + 1];
        BreakElement tri{};
        tri.is_triangle = true;
        tri.v = {{{a0, a0}, {a1, a1}, {a0, a1}}};
        tri.strip_u = static_cast<int>(i);
        tri.band_w = static_cast<int>(i);
        tri.area = tri_area(tri.v);
        elems.push_back(tri);
        for (std::size_t j = i + 1; j < L; ++j) {
            BreakElement rect{};
            rect.is_triangle = false;
            rect.u0 = a0;
            rect.u1 = a1;
            rect.w0 = mesh.edges[j];
            rect.w1 = mesh.edges[j + 1];
            rect.strip_u = static_cast<int>(i);
            rect.band_w = static_cast<int>(j);
            rect.area = (rect.u1 - rect.u0) * (rect.w1 - rect.w0);
            elems.push_back(rect);
        }
    }
    return elems;
}

std::vector<const AggTriangle*> elements_in(AggRegion r, std::size_t i,
                                            const std::vector<AggTriangle>& tris) {
    std::vector<const AggTriangle*> out;
    const int ii = static_cast<int>(i);
    for (const AggTriangle& t : tris) {
        const int owner = (r == AggRegion::A) ? t.band : (r == AggRegion::B) ? t.strip_u : t.strip_w;
        if (owner == ii) out.push_back(&t);
    }
    return out;
}

std::vector<const BreakElement*> elements_in(BreakRegion r, std::size_t i,
                                             const std::vector<BreakElement>& elems) {
    std::vector<const BreakElement*> out;
    const int ii = static_cast<int>(i);
    for (const BreakElement& e : elems) {
        const int owner = (r == BreakRegion::C) ? e.strip_u : e.band_w;
        if (owner == ii) out.push_back(&e);
    }
    return out;
}

}  // namespace pbdg
