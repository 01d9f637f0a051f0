#pragma once
// Euler's constant through independent integral/series routes, and the
// fractional-part moments I_k = int_1^inf {t}^k / t^{k+1} dt.

#include "psirep/numkernel.hpp"

namespace psirep {

struct MomentResult {
    int k = 1;
    EvalResult quad_value;       // direct quadrature, interval by interval
    double closed_value = 0.0;   // zeta closed form
    double fourier_value = 0.0;  // Fourier route, k in {2, 3} only; NaN otherwise
};

// gamma from the split exponential integral with the (z^2 + pi^2) kernel.
// Absolute error <= 1e-11.
double gamma_integral();

// gamma from the Si-difference double sum, J >= 2 terms per branch, with an
// alternating-series tail correction of the configured order.
EvalResult gamma_prop2(long j_terms, const Ctrl& ctrl);

// gamma from 1/2 + 2 sum Ci(2 pi j).
EvalResult gamma_ci_sum(long j_terms, const Ctrl& ctrl);

// gamma + ln 2 from the alternating Ci(pi j) sum.
EvalResult gamma_ln2_alt(long j_terms, const Ctrl& ctrl);

// I_k by quadrature over unit intervals plus tail bound, with closed form and
// (k in {2, 3}) the Ci/Si Fourier evaluation.
MomentResult frac_moment(int k, const Ctrl& ctrl);

// {x}^n expanded in periodized Bernoulli polynomials, n <= 12.
double frac_power_expand(int n, double x);

}  // namespace psirep
