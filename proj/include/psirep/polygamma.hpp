#pragma once
// Polygamma psi^{(j)}(a), j >= 1, a > 0, plus harmonic-number helpers.

#include "psirep/numkernel.hpp"

namespace psirep {

enum class RepPolygamma {
    BinomialPow,        // binomial transform of inverse powers
    UIntegralLogJ,      // single integral with ln^j u kernel
    DoubleIntegralLogJ, // double integral with ln^{j-1}(xy) kernel
};

// Reference: psi^{(j)}(a) = (-1)^{j+1} j! zeta(j+1, a).
double polygamma_ref(int j, double a);

EvalResult polygamma_rep(int j, double a, RepPolygamma rep, const Ctrl& ctrl);

// H_n = psi(n+1) + gamma.
double harmonic(long n);

// H_n^{(r)} through the polygamma reference.
double gen_harmonic(long n, int r);

// H_n from the Ci-coefficient Fourier sum, J terms plus asymptotic tail.
EvalResult harmonic_ci(long n, long j_terms, const Ctrl& ctrl);

// H_n^{(r)}, r >= 2, by Euler-Maclaurin with an explicit periodized-Bernoulli
// remainder integral evaluated interval by interval.
EvalResult gen_harmonic_em(long n, int r, const Ctrl& ctrl);

}  // namespace psirep
