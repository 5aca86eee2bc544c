#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pbdg/mesh.hpp"

namespace pbdg {

// One triangle of the common refinement of the aggregation region
// Omega^a = {u, w >= 0, u + w <= v_max}.  The refinement decomposes every
// nonempty cell C_{i,j,k} = A_i (diagonal band of u + w) intersected with
// B_j (strip of u) and B'_k (strip of w), triangulated so that no triangle
// interior crosses the diagonal u = w.  Triangles are emitted in
// representative/mirror pairs: the representative lies in {u <= w} and the
// mirror is the exact coordinate swap with owners (band, strip_w, strip_u).
struct AggTriangle {
    std::array<std::array<double, 2>, 3> v;  // vertices (u, w), affine order
    int band;     // i:  A-band owner = destination cell of the birth term
    int strip_u;  // j = p(T): B-strip owner = destination cell of the death term
    int strip_w;  // k = q(T): B'-strip owner
    bool mirror;  // true for the reflected copy of a representative
    double area;
};

// One element of the coarsest common refinement of the breakage region
// Omega^b = {0 <= u <= w <= v_max}: E_{i,j} = C_i (strip of u) intersected
// with D_j (band of w) is a triangle cut by u = w when j = i and the full
// rectangle I_i x I_j when j > i.
struct BreakElement {
    bool is_triangle;
    std::array<std::array<double, 2>, 3> v;  // triangle vertices when is_triangle
    double u0, u1, w0, w1;                   // rectangle extents otherwise
    int strip_u;  // i = p(E): destination cell of the birth term
    int band_w;   // j = q(E): destination cell of the death term
    double area;
};

std::vector<AggTriangle> build_aggregation_refinement(const Mesh& mesh);
std::vector<BreakElement> build_breakage_refinement(const Mesh& mesh);

// Owner-index views of the refinements.
enum class AggRegion { A, B, Bprime };
enum class BreakRegion { C, D };
std::vector<const AggTriangle*> elements_in(AggRegion r, std::size_t i,
                                            const std::vector<AggTriangle>& tris);
std::vector<const BreakElement*> elements_in(BreakRegion r, std::size_t i,
                                             const std::vector<BreakElement>& elems);

}  // namespace pbdg
