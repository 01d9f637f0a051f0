#pragma once
// Digamma psi(a) = d/da ln Gamma(a) for real a > 0, evaluated through seven
// independent representations plus a Stirling-based reference, the Gauss
// closed form at rationals, and the exponential-of-psi product.

#include "psirep/numkernel.hpp"

namespace psirep {

enum class RepDigamma {
    LimitSum,        // truncated limit of partial sums of 1/(k+a) - ln-ratio
    BinomialLog,     // binomial transform of logarithms
    UIntegral,       // single integral of u^{a-1}(1/(u-1) - 1/ln u)
    DoubleIntegral,  // double integral over the unit square
    InvBinomSeries,  // integrated inverse-binomial series
    ExpIntegral,     // Laplace-type integral of e^{-at}(1/(1-e^{-t}) - 1/t)
    FourierCiSi,     // Fourier-type sum with Ci/Si coefficients
};

// Reduced fraction 0 < p/q < 1.
struct RationalArg {
    long p = 1;
    long q = 2;

    void validate() const;  // throws std::invalid_argument unless reduced and in range
};

// Reference digamma: recurrence to a + m >= 16, then the 8-term Bernoulli
// asymptotic series. Absolute error <= 1e-13 over (0, inf).
double psi_ref(double a);

// Evaluate psi(a) strictly through the selected representation.
EvalResult psi_rep(double a, RepDigamma rep, const Ctrl& ctrl);

// Gauss digamma at reduced p/q via cotangent/cosine-log closed form.
double psi_rational(const RationalArg& r);

// K-factor partial product for exp(gamma_0(a)) where gamma_0(a) = -psi(a):
// accumulated in log space with compensated summation, err_est the last
// factor's log magnitude.
EvalResult exp_gamma0_product(double a, long k_factors);

// gamma_0(m a) - [-ln m + (1/m) sum_{k<m} gamma_0(a + k/m)]; zero in exact
// arithmetic for integer m >= 1.
double multiplication_residual(double a, int m, RepDigamma rep, const Ctrl& ctrl);

}  // namespace psirep
