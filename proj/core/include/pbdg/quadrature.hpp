#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace pbdg {

// Gauss-Lobatto line rule on [-1, 1]: nodes include both endpoints, weights
// stored in the standard convention (sum = 2), exact for polynomials of
// degree <= 2n - 3.  Endpoint weights are 2/(n(n-1)).
struct LineRule {
    int n = 0;
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // positive
};

// Frozen tables for n = 2..10.
const LineRule& gauss_lobatto(int n);

// Plain Gauss-Legendre rule (interior nodes), computed once per order by
// Newton iteration and cached; used for projections and error norms.
const LineRule& gauss_legendre(int n);

// Symmetric positive-weight rule on the reference simplex with vertices
// (0,0), (1,0), (0,1).  Weights sum to 1; scaled by the element area the
// rule is exact on monomials of total degree <= degree.
struct TrianglePoint {
    double x, y, w;
};
struct TriangleRule {
    int degree = 0;
    std::vector<TrianglePoint> points;
};

// Smallest tabulated rule with exactness >= degree;
// tabulated degrees {1, 2, 4, 5, 6, 8, 10}.
const TriangleRule& triangle_rule(int degree);

// Q_I[f] over [a, b]; a constant integrand c returns c (b - a).
template <class F>
double integrate_interval(const LineRule& r, double a, double b, F&& f) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < r.n; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * s;
}

// Q_T[f]: |T| sum_g w_g f(node_g); nodes are mapped affinely in vertex order,
// so a mirrored triangle (swapped coordinates, same order) quadratures the
// mirrored integrand with bit-identical node placement.
template <class F>
double integrate_triangle(const TriangleRule& r, const std::array<std::array<double, 2>, 3>& tri,
                          F&& f) {
    const double ux = tri[1][0] - tri[0][0], uy = tri[1][1] - tri[0][1];
    const double vx = tri[2][0] - tri[0][0], vy = tri[2][1] - tri[0][1];
    const double area = 0.5 * std::abs(ux * vy - uy * vx);
    double s = 0.0;
    for (const auto& p : r.points)
        s += p.w * f(tri[0][0] + p.x * ux + p.y * vx, tri[0][1] + p.x * uy + p.y * vy);
    return area * s;
}

// Q_E[f] over the axis-aligned rectangle [u0,u1] x [w0,w1] by the tensor
// product of a line rule with itself; a constant integrand c returns c |E|.
template <class F>
double integrate_rect(const LineRule& r, double u0, double u1, double w0, double w1, F&& f) {
    const double um = 0.5 * (u0 + u1), uh = 0.5 * (u1 - u0);
    const double wm = 0.5 * (w0 + w1), wh = 0.5 * (w1 - w0);
    double s = 0.0;
    for (int a = 0; a < r.n; ++a) {
        const double u = um + uh * r.nodes[a];
        double row = 0.0;
        for (int b = 0; b < r.n; ++b) row += r.weights[b] * f(u, wm + wh * r.nodes[b]);
        s += r.weights[a] * row;
    }
    return 0.25 * (u1 - u0) * (w1 - w0) * s;
}

}  // namespace pbdg
