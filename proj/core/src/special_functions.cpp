#include "pbdg/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pbdg {

namespace {

constexpr double kSeriesCut = 16.0;

// I_1(x) = sum_m (x/2)^{2m+1} / (m! (m+1)!)
double i1_series(double x) {
    const double h = 0.5 * x;
    double term = h;  // m = 0
    double sum = term;
    for (int m = 1; m < 60; ++m) {
        term *= h * h / (static_cast<double>(m) * (m + 1));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// e^{-x} I_1(x) ~ (1/sqrt(2 pi x)) sum_k a_k, a_0 = 1,
// a_k = a_{k-1} * -(4 - (2k-1)^2) / (8 k x); truncation error ~ e^{-2x}
// which is < 2e-14 for x >= 16
double i1e_asymptotic(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        const double c = 2.0 * k - 1.0;
        term *= -(4.0 - c * c) / (8.0 * k * x);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i1(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_i1: argument must be >= 0");
    if (x <= kSeriesCut) return i1_series(x);
    return i1e_asymptotic(x) * std::exp(x);
}

double bessel_i1_scaled(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_i1_scaled: argument must be >= 0");
    if (x <= kSeriesCut) return i1_series(x) * std::exp(-x);
    return i1e_asymptotic(x);
}

double bessel_i1_scaled_over_x(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_i1_scaled_over_x: argument must be >= 0");
    if (x < 1e-4) {
        // e^{-x} I_1(x)/x = (1/2)(1 - x + (5/8) x^2 - ...) truncated; the
        // omitted terms are O(x^3) < 1e-13 here
        return 0.5 * (1.0 - x + 0.625 * x * x);
    }
    return bessel_i1_scaled(x) / x;
}

}  // namespace pbdg
