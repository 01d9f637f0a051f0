// Remainder sums of the digamma asymptotic expansion: the O(n^-4) series
// summed directly, its closed v-integral, and the large-alpha behaviour of
// the phi sum with its alpha^{-2k} partial sums.

#include "psirep/asymsums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "psirep/digamma.hpp"

namespace psirep {
namespace {

void check_domain(double alpha, double beta, const char* who) {
    if (!(alpha > 0.0) || !(beta >= 0.0)) {
        std::string msg(who);
        throw std::domain_error(msg + ": requires alpha > 0 and beta >= 0");
    }
}

// G(1+e) = 1/e - 1/ln(1+e) + 1/2 - ln(1+e)/12, expanded about e = 0 where
// the closed form cancels to O(e^3). Truncation below 3e-14 for |e| < 0.08.
double bracket_series(double e) {
    const double c[7] = {
        -0.001388888888888889,   // -1/720
        0.002083333333333333,    //  1/480
        -0.002397486772486772,   // -29/12096
        0.002521494708994709,    //  61/24192
        -0.002548225308641975,   // -1321/518400
        0.002524112654320988,    //  2617/1036800
        -0.002473409274624552,   // -1184767/479001600
    };
    double s = 0.0;
    for (int j = 6; j >= 0; --j) s = s * e + c[j];
    return s * e * e * e;
}

// One remainder term as a function of z = alpha n + beta, with an error
// bound. The psi route loses ~ |psi| eps to cancellation; from z = 12 the
// Bernoulli tail -sum_{k=2}^{9} B_2k/(2k) z^-2k is accurate to B_20 z^-20.
double term_eval(double z, double* ebound) {
    if (z >= 12.0) {
        const double w = 1.0 / (z * z);
        double acc = 0.0;
        for (int k = 9; k >= 2; --k) acc = acc * w - bernoulli_number(2 * k) / (2.0 * k);
        if (ebound) *ebound = 26.5 * std::pow(w, 10);
        return acc * w * w;
    }
    const double p = psi_ref(z);
    const double l = std::log(z);
    if (ebound) *ebound = 3e-16 * (std::fabs(p) + std::fabs(l) + 1.0 / z + 1.0);
    return (p - l) + 0.5 / z + 1.0 / (12.0 * z * z);
}

// phi(z) = psi(z) - ln z + 1/(2z), same dual route with the B_2 term kept.
double phi_eval(double z, double* ebound) {
    if (z >= 12.0) {
        const double w = 1.0 / (z * z);
        double acc = 0.0;
        for (int k = 9; k >= 1; --k) acc = acc * w - bernoulli_number(2 * k) / (2.0 * k);
        if (ebound) *ebound = 26.5 * std::pow(w, 10);
        return acc * w;
    }
    const double p = psi_ref(z);
    const double l = std::log(z);
    if (ebound) *ebound = 3e-16 * (std::fabs(p) + std::fabs(l) + 1.0 / z + 1.0);
    return (p - l) + 0.5 / z;
}

std::vector<double> asym_partials(double alpha, double beta, int k_max, const Ctrl& ctrl) {
    if (k_max < 1 || k_max > 5)
        throw std::domain_error("phi_sum_asym: requires K in [1, 5]");
    Ctrl zc = ctrl;
    zc.target_tol = 1e-14;
    std::vector<double> out(static_cast<size_t>(k_max) + 1, 0.0);
    NeumaierAcc acc;
    for (int k = 1; k <= k_max; ++k) {
        const double zk = beta == 0.0 ? zeta(2.0 * k, zc).value
                                      : hurwitz_zeta(2.0 * k, 1.0 + beta / alpha, zc).value;
        acc.add(-std::pow(alpha, -2.0 * k) * bernoulli_number(2 * k) / (2.0 * k) * zk);
        out[static_cast<size_t>(k)] = acc.value();
    }
    return out;
}

}  // namespace

double psi_sum_term(double alpha, double beta, long long n) {
    check_domain(alpha, beta, "psi_sum_term");
    if (n < 1) throw std::domain_error("psi_sum_term: requires n >= 1");
    return term_eval(alpha * static_cast<double>(n) + beta, nullptr);
}

EvalResult psi_sum_lhs(double alpha, double beta, const Ctrl& ctrl) {
    check_domain(alpha, beta, "psi_sum_lhs");
    ctrl.validate();
    NeumaierAcc acc;
    double eval_err = 0.0;
    double tail = inf;
    long long n = 1;
    for (; n <= ctrl.max_terms; ++n) {
        const double z = alpha * static_cast<double>(n) + beta;
        double eb = 0.0;
        const double t = term_eval(z, &eb);
        acc.add(t);
        eval_err += eb;
        // remaining terms bounded by int_n^inf C (alpha x + beta)^-4 dx with
        // C fitted at the current term; 1.05 covers the fit still rising
        // toward its z -> inf limit
        tail = 1.05 * std::fabs(t) * z / (3.0 * alpha);
        if (n >= 10 && z >= 8.0 && tail + eval_err <= 0.9 * ctrl.target_tol) break;
    }
    EvalResult r{};
    r.value = acc.value();
    r.err_est = tail + eval_err + 1e-16 * std::fabs(r.value);
    r.terms_used = std::min<long long>(n, ctrl.max_terms);
    r.nodes_used = 0;
    r.converged = r.err_est <= ctrl.target_tol;
    return r;
}

EvalResult psi_sum_rhs(double alpha, double beta, const Ctrl& ctrl) {
    check_domain(alpha, beta, "psi_sum_rhs");
    ctrl.validate();
    const double ba = beta / alpha;
    auto f = [alpha, ba](double v) {
        const double lv = std::log(v);
        const double w = lv / alpha;       // ln v^{1/alpha}
        const double e = std::expm1(w);    // v^{1/alpha} - 1
        const double g = std::fabs(e) < 0.08 ? bracket_series(e)
                                             : 1.0 / e - 1.0 / w + 0.5 - w / 12.0;
        return std::pow(v, ba) / (1.0 - v) * (g / alpha);
    };
    return quad_de(f, 0.0, 1.0, ctrl);
}

EvalResult phi_sum_direct(double alpha, double beta, const Ctrl& ctrl) {
    check_domain(alpha, beta, "phi_sum_direct");
    ctrl.validate();
    long long big_n = 200;
    while (alpha * static_cast<double>(big_n + 1) + beta < 14.0) big_n *= 2;
    NeumaierAcc acc;
    double eval_err = 0.0;
    for (long long n = 1; n <= big_n; ++n) {
        double eb = 0.0;
        acc.add(phi_eval(alpha * static_cast<double>(n) + beta, &eb));
        eval_err += eb;
    }
    // tail sum_{n > N} phi(alpha n + beta) via the Bernoulli expansion:
    // sum_k -B_2k/(2k) alpha^-2k zeta(2k, N+1+beta/alpha), k = 1..3, with
    // the k = 4 term as the truncation bound
    Ctrl zc = ctrl;
    zc.target_tol = 1e-14;
    const double q = static_cast<double>(big_n) + 1.0 + beta / alpha;
    double zeta_err = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const EvalResult hz = hurwitz_zeta(2.0 * k, q, zc);
        const double coef = -bernoulli_number(2 * k) / (2.0 * k) * std::pow(alpha, -2.0 * k);
        acc.add(coef * hz.value);
        zeta_err += std::fabs(coef) * hz.err_est;
    }
    const double trunc = hurwitz_zeta(8.0, q, zc).value / 240.0 * std::pow(alpha, -8.0);
    EvalResult r{};
    r.value = acc.value();
    r.err_est = eval_err + zeta_err + trunc + 1e-16 * std::fabs(r.value);
    r.terms_used = big_n;
    r.nodes_used = 0;
    r.converged = r.err_est <= ctrl.target_tol;
    return r;
}

std::vector<double> phi_sum_asym(double alpha, int k_max) {
    if (!(alpha >= 4.0)) throw std::domain_error("phi_sum_asym: requires alpha >= 4");
    return asym_partials(alpha, 0.0, k_max, Ctrl{});
}

PhiSumResult phi_sum_report(double alpha, double beta, int k_max, const Ctrl& ctrl) {
    check_domain(alpha, beta, "phi_sum_report");
    PhiSumResult r;
    r.alpha = alpha;
    r.beta = beta;
    r.lhs_sum = psi_sum_lhs(alpha, beta, ctrl);
    r.rhs_integral = psi_sum_rhs(alpha, beta, ctrl);
    r.asym_partial = asym_partials(alpha, beta, k_max, ctrl);
    return r;
}

}  // namespace psirep
