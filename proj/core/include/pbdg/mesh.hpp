#pragma once

#include <cstddef>
#include <vector>

namespace pbdg {

// 1-D mesh of the truncated size domain [0, v_max].  Edges are stored once;
// centers and widths are derived at construction and never re-accumulated,
// so refinement levels stay exactly nested.
struct Mesh {
    std::vector<double> edges;   // v_{1/2} .. v_{L+1/2}, strictly increasing
    std::vector<double> center;  // v_i
    std::vector<double> width;   // dv_i
    double dv_min = 0.0;         // min_i dv_i

    std::size_t num_cells() const { return center.size(); }
    double v_max() const { return edges.back(); }
    double left(std::size_t i) const { return edges[i]; }
    double right(std::size_t i) const { return edges[i + 1]; }

    // reference coordinate x in [-1, 1] of a volume v inside cell i
    double to_ref(std::size_t i, double v) const {
        return 2.0 * (v - center[i]) / width[i];
    }
    double from_ref(std::size_t i, double x) const {
        return center[i] + 0.5 * width[i] * x;
    }

    // index of the cell containing v (edges[i] <= v <= edges[i+1]);
    // boundary values resolve to the adjacent cell
    std::size_t cell_of(double v) const;
};

// Validates edges (finite, strictly increasing) and fills the derived fields.
Mesh make_mesh(std::vector<double> edges);

// Graded mesh v_{i+1/2} = v_max (i/L)^exponent, i = 0..L.
Mesh build_power_mesh(double v_max, std::size_t cells, double exponent);

// v_{1/2} = 0, then v_{i+1/2} log-uniform between v_lo and v_max, i = 1..L.
Mesh build_log_mesh(double v_lo, double v_max, std::size_t cells);

// Splits every cell at its midpoint; the refined edge set nests the input's.
Mesh refine_split(const Mesh& mesh);

}  // namespace pbdg
