#include "pbdg/dg_solution.hpp"

#include <cmath>
#include <stdexcept>

namespace pbdg {

double DGSolution::eval_ref(std::size_t i, double x) const {
    double phi[kMaxDegree + 1];
    basis_eval_all(k, x, phi);
    const double* ci = cell(i);
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += ci[j] * phi[j];
    return s;
}

double DGSolution::eval(std::size_t i, double v) const {
    const double x = mesh->to_ref(i, v);
    if (x < -1.0 - 1e-12 || x > 1.0 + 1e-12)
        throw std::invalid_argument("volume outside requested cell");
    return eval_ref(i, x);
}

double DGSolution::cell_average(std::size_t i) const {
    return c(i, 0) / std::sqrt(2.0);
}

}  // namespace pbdg
