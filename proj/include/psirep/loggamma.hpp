#pragma once
// ln Gamma(a) for a > 0: five representations, a Stirling reference, the
// exponentiated product form, and the Binet-constant evaluations.

#include "psirep/numkernel.hpp"

#include <utility>

namespace psirep {

enum class RepLogGamma {
    BinomialSeries,  // binomial transform of x ln x differences
    Binet1,          // single integral, constant term +1
    Binet2,          // single integral against ln 2pi / 2
    DoubleIntegral,  // double integral over the unit square
    FourierCiSi,     // Fourier-type sum with Ci/Si coefficients
};

// Reference: recurrence to a + m >= 16, Stirling series with B_{2k} terms.
// Absolute error <= 1e-13.
double lngamma_ref(double a);

EvalResult lngamma_rep(double a, RepLogGamma rep, const Ctrl& ctrl);

// K-factor partial product for Gamma(a), accumulated in log space and
// exponentiated at the end.
EvalResult gamma_product(double a, long k_factors);

// The constant 1 - ln(2pi)/2 two ways: J-truncated Si-series with asymptotic
// tail (value/err in the EvalResult) and an independent arctan-kernel
// quadrature (second member).
std::pair<EvalResult, EvalResult> const_binet_sum(long j_terms, const Ctrl& ctrl);

// ln Gamma(1/4) via the half-integer Fourier sums; evaluates the series with
// both candidate leading factors on the Si part and reports which matches.
IdentityReport lngamma_quarter(const Ctrl& ctrl);

}  // namespace psirep
