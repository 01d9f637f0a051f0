#pragma once
// The digamma remainder sum sum_{n>=1} [psi(an+b) - ln(an+b) + 1/(2(an+b))
// + 1/(12(an+b)^2)], its closed v-integral twin, and the large-alpha
// asymptotics of the related sum of phi(x) = psi(x) - ln x + 1/(2x).

#include "psirep/numkernel.hpp"

#include <vector>

namespace psirep {

struct PhiSumResult {
    double alpha = 1.0;
    double beta = 0.0;
    EvalResult lhs_sum;
    EvalResult rhs_integral;
    std::vector<double> asym_partial;  // partial sums S_0..S_K, S_0 = 0
};

// One term of the remainder series, index n >= 1. Cancellation-free above
// arg >= 12 (Bernoulli tail route); psi_ref below.
double psi_sum_term(double alpha, double beta, long long n);

// Direct sum of psi_sum_term with an integral-comparison tail bound fitted
// from the last term. Requires alpha > 0, beta >= 0.
EvalResult psi_sum_lhs(double alpha, double beta, const Ctrl& ctrl);

// The matching integral int_0^1 v^{beta/alpha}/(1-v) [1/(alpha(v^{1/alpha}-1))
// - 1/ln v + 1/(2 alpha) - ln v/(12 alpha^2)] dv by quad_de. The v -> 1 limit
// of the bracket is removable and evaluated by a local series.
EvalResult psi_sum_rhs(double alpha, double beta, const Ctrl& ctrl);

// sum_{n>=1} phi(alpha n + beta): direct terms plus a Hurwitz zeta tail.
EvalResult phi_sum_direct(double alpha, double beta, const Ctrl& ctrl);

// Partial sums S_0 = 0, S_1, ..., S_K of the large-alpha expansion
// -sum_k alpha^{-2k} (B_{2k}/(2k)) zeta(2k) of the phi sum at beta = 0.
// Requires alpha >= 4 and K in [1, 5].
std::vector<double> phi_sum_asym(double alpha, int k_max);

// Both series routes, the integral, and the asymptotic partials (with
// zeta(2k, 1 + beta/alpha) when beta > 0) bundled at one (alpha, beta).
PhiSumResult phi_sum_report(double alpha, double beta, int k_max, const Ctrl& ctrl);

}  // namespace psirep
