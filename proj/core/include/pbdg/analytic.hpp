#pragma once

#include <functional>
#include <string>

namespace pbdg {

// A closed-form benchmark solution of the population balance equation.
// n(v, t) is the number density; m0/m1 are the total number and total mass;
// boundary is the trace n(0, t).  All callables are pure.
struct AnalyticCase {
    std::string name;
    double v0 = 0.2;
    double lambda0 = 0.0;    // aggregation-breakage family only
    double lambda_inf = 0.0;

    std::function<double(double, double)> n;  // n(v, t)
    std::function<double(double)> boundary;   // n(0, t)
    std::function<double(double)> m0;         // M_0(t)
    std::function<double(double)> m1;         // M_1(t)
};

// name:
//   const-agg        aggregation, beta = 1, exponential initial data
//   additive-agg     aggregation, beta = u + w (Bessel-function solution)
//   linear-breakage  breakage, gamma = w, p = 2/w
//   agg-breakage     combined beta = 1 / gamma = w; relaxation rate lambda(t)
//                    runs from lambda0 to the equilibrium lambda_inf
//   growth-agg-1     growth G = v with beta = 1, exponential profile
//   growth-agg-2     growth G = v with beta = 1, v-weighted initial data
//   growth-agg-3     growth G = v with beta = u + w
// v0 is the characteristic volume of the initial exponential; lambda0 and
// lambda_inf apply to agg-breakage only and must be positive.
AnalyticCase make_analytic_case(const std::string& name, double v0 = 0.2,
                                double lambda0 = 3.0, double lambda_inf = 4.0);

}  // namespace pbdg
