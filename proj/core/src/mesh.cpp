#include "pbdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pbdg {

std::size_t Mesh::cell_of(double v) const {
    if (v <= edges.front()) return 0;
    if (v >= edges.back()) return num_cells() - 1;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

Mesh make_mesh(std::vector<double> edges) {
    if (edges.size() < 2) throw std::invalid_argument("mesh needs at least 2 edges");
    for (double e : edges)
        if (!std::isfinite(e)) throw std::invalid_argument("mesh edge not finite");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw std::invalid_argument("mesh edges must be strictly increasing");

    Mesh m;
    m.edges = std::move(edges);
    const std::size_t L = m.edges.size() - 1;
    m.center.resize(L);
    m.width.resize(L);
    for (std::size_t i = 0; i < L; ++i) {
        m.center[i] = 0.5 * (m.edges[i] + m.edges[i + 1]);
        m.width[i] = m.edges[i + 1] - m.edges[i];
    }
    m.dv_min = *std::min_element(m.width.begin(), m.width.end());
    return m;
}

Mesh build_power_mesh(double v_max, std::size_t cells, double exponent) {
    if (!(v_max > 0) || !std::isfinite(v_max)) throw std::invalid_argument("v_max must be positive");
    if (cells < 1) throw std::invalid_argument("need at least one cell");
    if (!(exponent >= 1) || !std::isfinite(exponent)) throw std::invalid_argument("exponent must be >= 1");
    std::vector<double> edges(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        edges[i] = v_max * std::pow(static_cast<double>(i) / static_cast<double>(cells), exponent);
    edges[0] = 0.0;
    edges[cells] = v_max;
    return make_mesh(std::move(edges));
}

Mesh build_log_mesh(double v_lo, double v_max, std::size_t cells) {
    if (!(v_lo > 0)) throw std::invalid_argument("v_lo must be positive");
    if (!(v_lo < v_max)) throw std::invalid_argument("v_lo must be below v_max");
    if (cells < 2) throw std::invalid_argument("log mesh needs at least 2 cells");
    std::vector<double> edges(cells + 1);
    edges[0] = 0.0;
    const double lo = std::log(v_lo), hi = std::log(v_max);
    const std::size_t n = cells - 1;  // interior edges v_lo .. v_max inclusive
    for (std::size_t i = 0; i <= n; ++i)
        edges[i + 1] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    edges[1] = v_lo;
    edges[cells] = v_max;
    return make_mesh(std::move(edges));
}

Mesh refine_split(const Mesh& mesh) {
    std::vector<double> edges;
    edges.reserve(2 * mesh.num_cells() + 1);
    for (std::size_t i = 0; i < mesh.num_cells(); ++i) {
        edges.push_back(mesh.edges[i]);
        edges.push_back(0.5 * (mesh.edges[i] + mesh.edges[i + 1]));
    }
    edges.push_back(mesh.edges.back());
    return make_mesh(std::move(edges));
}

}  // namespace pbdg
