#include "pbdg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace pbdg {

namespace {

// sqrt((2j+1)/2) for j = 0..kMaxDegree
const double* norm_table() {
    static double tab[kMaxDegree + 1];
    static const bool init = [] {
        for (int j = 0; j <= kMaxDegree; ++j)
            tab[j] = std::sqrt((2.0 * j + 1.0) / 2.0);
        return true;
    }();
    (void)init;
    return tab;
}

void check_index(int j) {
    if (j < 0 || j > kMaxDegree) throw std::invalid_argument("basis index out of range");
}

}  // namespace

double basis_eval(int j, double x) {
    check_index(j);
    // Legendre recurrence (m+1) P_{m+1} = (2m+1) x P_m - m P_{m-1}
    double pm1 = 1.0, p = x;
    if (j == 0) return norm_table()[0];
    for (int m = 1; m < j; ++m) {
        double pn = ((2.0 * m + 1.0) * x * p - m * pm1) / (m + 1.0);
        pm1 = p;
        p = pn;
    }
    return norm_table()[j] * p;
}

double basis_eval_deriv(int j, double x) {
    check_index(j);
    if (j == 0) return 0.0;
    // P'_{m+1} = P'_{m-1} + (2m+1) P_m
    double pm1 = 1.0, p = x;
    double dm1 = 0.0, d = 1.0;
    for (int m = 1; m < j; ++m) {
        double pn = ((2.0 * m + 1.0) * x * p - m * pm1) / (m + 1.0);
        double dn = dm1 + (2.0 * m + 1.0) * p;
        pm1 = p;
        p = pn;
        dm1 = d;
        d = dn;
    }
    return norm_table()[j] * d;
}

void basis_eval_all(int k, double x, double* out) {
    check_index(k);
    const double* nrm = norm_table();
    double pm1 = 1.0, p = x;
    out[0] = nrm[0];
    if (k == 0) return;
    out[1] = nrm[1] * x;
    for (int m = 1; m < k; ++m) {
        double pn = ((2.0 * m + 1.0) * x * p - m * pm1) / (m + 1.0);
        pm1 = p;
        p = pn;
        out[m + 1] = nrm[m + 1] * p;
    }
}

void basis_eval_deriv_all(int k, double x, double* out) {
    check_index(k);
    const double* nrm = norm_table();
    out[0] = 0.0;
    if (k == 0) return;
    double pm1 = 1.0, p = x;
    double dm1 = 0.0, d = 1.0;
    out[1] = nrm[1];
    for (int m = 1; m < k; ++m) {
        double pn = ((2.0 * m + 1.0) * x * p - m * pm1) / (m + 1.0);
        double dn = dm1 + (2.0 * m + 1.0) * p;
        pm1 = p;
        p = pn;
        dm1 = d;
        d = dn;
        out[m + 1] = nrm[m + 1] * d;
    }
}

}  // namespace pbdg
