#pragma once

namespace pbdg {

// Modified Bessel function of the first kind, order one, for x >= 0.
// Power series up to x = 16, exponentially scaled asymptotic expansion
// beyond; relative accuracy ~1e-13 over the benchmark range.
double bessel_i1(double x);

// e^{-x} I_1(x), safe for large x (no overflow).
double bessel_i1_scaled(double x);

// e^{-x} I_1(x) / x with the removable singularity at x = 0 (limit 1/2);
// series branch below x = 1e-4.
double bessel_i1_scaled_over_x(double x);

}  // namespace pbdg
