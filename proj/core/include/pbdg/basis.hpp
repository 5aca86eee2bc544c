#pragma once

namespace pbdg {

// Highest polynomial degree the solver supports (tables and scratch buffers
// are sized for it).
inline constexpr int kMaxDegree = 8;

// Orthonormal modal basis on the reference interval [-1, 1]:
//   phi_j(x) = sqrt((2j+1)/2) P_j(x),   int_{-1}^{1} phi_j phi_m = delta_jm.
double basis_eval(int j, double x);
double basis_eval_deriv(int j, double x);

// Fills out[0..k] with phi_0(x) .. phi_k(x) using one recurrence sweep.
void basis_eval_all(int k, double x, double* out);
void basis_eval_deriv_all(int k, double x, double* out);

struct Basis {
    int degree = 1;  // k >= 1
};

}  // namespace pbdg
