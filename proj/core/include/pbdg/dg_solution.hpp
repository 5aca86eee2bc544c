#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "pbdg/basis.hpp"
#include "pbdg/mesh.hpp"

namespace pbdg {

// Piecewise polynomial number density in the orthonormal modal basis.
// Coefficients are stored cell-major: coeff[i * (k+1) + j].
struct DGSolution {
    std::shared_ptr<const Mesh> mesh;
    int k = 1;
    std::vector<double> coeff;

    DGSolution() = default;
    DGSolution(std::shared_ptr<const Mesh> m, int degree)
        : mesh(std::move(m)), k(degree), coeff(mesh->num_cells() * (degree + 1), 0.0) {}

    std::size_t num_cells() const { return mesh->num_cells(); }
    int modes() const { return k + 1; }

    double& c(std::size_t i, int j) { return coeff[i * modes() + j]; }
    double c(std::size_t i, int j) const { return coeff[i * modes() + j]; }
    const double* cell(std::size_t i) const { return coeff.data() + i * modes(); }
    double* cell(std::size_t i) { return coeff.data() + i * modes(); }

    // n_h at reference coordinate x in [-1, 1] of cell i
    double eval_ref(std::size_t i, double x) const;
    // n_h at volume v, which must lie in cell i
    double eval(std::size_t i, double v) const;
    // cell average (1/dv_i) int_{I_i} n_h dv = c_0^i / sqrt(2)
    double cell_average(std::size_t i) const;

    // one-sided limits at the interface v_{f+1/2} = edges[f]:
    // from the left cell f-1 (requires f >= 1) ...
    double limit_from_left(std::size_t f) const { return eval_ref(f - 1, 1.0); }
    // ... and from the right cell f (requires f <= L-1)
    double limit_from_right(std::size_t f) const { return eval_ref(f, -1.0); }
};

}  // namespace pbdg
