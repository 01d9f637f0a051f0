// Euler's constant by several independent routes, and the fractional-part
// moments I_k = int_1^inf {t}^k / t^{k+1} dt with their zeta closed forms and
// Ci/Si Fourier evaluations.

#include "psirep/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kernels.hpp"

namespace psirep {

namespace {

constexpr double kPi = 3.14159265358979323846;

// e^z ln(1 + e^{-z}); switches to the expansion 1 - e^{-z}/2 + ... once the
// direct product would pair an overflowing exponential with a vanishing log.
double growing_kernel(double z) {
    if (z > 33.0) {
        double x = std::exp(-z);
        return 1.0 - 0.5 * x;
    }
    return std::exp(z) * std::log1p(std::exp(-z));
}

}  // namespace

double gamma_integral() {
    Ctrl ctrl;
    ctrl.target_tol = 1e-13;
    ctrl.quad_levels = 11;
    EvalResult right = quad_de(
        [](double z) { return growing_kernel(z) / (z * z + kPi * kPi); }, 0.0, inf, ctrl);
    EvalResult left = quad_de(
        [](double z) {
            return std::exp(-z) * (z + std::log1p(std::exp(-z))) / (z * z + kPi * kPi);
        },
        0.0, inf, ctrl);
    return right.value + left.value;
}

EvalResult gamma_prop2(long j_terms, const Ctrl& ctrl) {
    ctrl.validate();
    if (j_terms < 2) throw std::invalid_argument("gamma_prop2: needs J >= 2");

    NeumaierAcc acc;
    for (long j = 1; j <= j_terms; ++j) {
        CiSi v = cisi(kPi * j, ctrl);
        double b = kPi - 2.0 * v.si;
        double weight = 1.0 / (j + 1.0) + (j >= 2 ? 1.0 / (j - 1.0) : 0.0);
        acc.add(b * weight);
    }

    // The omitted terms alternate with O(1/j^2) envelope c_j; Euler-Boole
    // correction from forward differences of c at j = J+1.
    int order = std::min(ctrl.tail_order, 4);
    double c[6];
    for (int i = 0; i <= order + 1; ++i) {
        double j = static_cast<double>(j_terms + 1 + i);
        CiSi v = cisi(kPi * j, ctrl);
        double sign = (static_cast<long>(j) % 2 == 0) ? 1.0 : -1.0;
        c[i] = sign * (kPi - 2.0 * v.si) * (1.0 / (j + 1.0) + 1.0 / (j - 1.0));
    }
    double correction = 0.0;
    double sign_m = ((j_terms + 1) % 2 == 0) ? 1.0 : -1.0;
    double denom = 2.0;
    for (int q = 0; q < order; ++q) {
        correction += sign_m * c[0] / denom;
        for (int i = 0; i <= order - q; ++i) c[i] = c[i + 1] - c[i];
        sign_m = -sign_m;
        denom *= 2.0;
    }
    double next = std::fabs(c[0]) / denom;

    EvalResult res;
    res.value = 0.5 + ci(kPi, ctrl) + (acc.value() + correction) / (2.0 * kPi);
    res.err_est = next / (2.0 * kPi) + 1e-15;
    res.terms_used = j_terms;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult gamma_ci_sum(long j_terms, const Ctrl& ctrl) {
    ctrl.validate();
    if (j_terms < 1) throw std::invalid_argument("gamma_ci_sum: needs J >= 1");

    NeumaierAcc acc;
    for (long j = 1; j <= j_terms; ++j) acc.add(cisi(2.0 * kPi * j, ctrl).ci);

    // Ci(2 pi j) = -g(2 pi j) ~ -1/z^2 + 6/z^4 - 120/z^6 + ...
    static const double coef[] = {1.0, -6.0, 120.0, -5040.0};
    double w = 2.0 * kPi;
    double correction = 0.0;
    int order = std::min(ctrl.tail_order, 4);
    for (int m = 1; m <= order; ++m) {
        double zt = hurwitz_zeta(2.0 * m, static_cast<double>(j_terms + 1), ctrl).value;
        correction += -coef[m - 1] * zt / std::pow(w, 2.0 * m);
    }
    double next = order < 4 ? std::fabs(coef[order]) *
                                  hurwitz_zeta(2.0 * (order + 1),
                                               static_cast<double>(j_terms + 1), ctrl)
                                      .value /
                                  std::pow(w, 2.0 * (order + 1))
                            : 1e-18;

    EvalResult res;
    res.value = 0.5 - 2.0 * (acc.value() + correction);
    res.err_est = 2.0 * next + 1e-15;
    res.terms_used = j_terms;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult gamma_ln2_alt(long j_terms, const Ctrl& ctrl) {
    ctrl.validate();
    if (j_terms < 1) throw std::invalid_argument("gamma_ln2_alt: needs J >= 1");

    NeumaierAcc acc;
    for (long j = 1; j <= j_terms; ++j) {
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * cisi(kPi * j, ctrl).ci);
    }

    // (-1)^j Ci(pi j) = -g(pi j): the signed tail is one-signed in j.
    static const double coef[] = {1.0, -6.0, 120.0, -5040.0};
    double correction = 0.0;
    int order = std::min(ctrl.tail_order, 4);
    for (int m = 1; m <= order; ++m) {
        double zt = hurwitz_zeta(2.0 * m, static_cast<double>(j_terms + 1), ctrl).value;
        correction += -coef[m - 1] * zt / std::pow(kPi, 2.0 * m);
    }
    double next = order < 4 ? std::fabs(coef[order]) *
                                  hurwitz_zeta(2.0 * (order + 1),
                                               static_cast<double>(j_terms + 1), ctrl)
                                      .value /
                                  std::pow(kPi, 2.0 * (order + 1))
                            : 1e-18;

    EvalResult res;
    res.value = 1.0 - std::log(2.0) - 2.0 * (acc.value() + correction);
    res.err_est = 2.0 * next + 1e-15;
    res.terms_used = j_terms;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

MomentResult frac_moment(int k, const Ctrl& ctrl) {
    ctrl.validate();
    if (k < 1) throw std::domain_error("frac_moment: needs k >= 1");

    MomentResult mom;
    mom.k = k;

    // Unit intervals keep the integrand smooth between the jump points of {t}.
    const long n_intervals = 1000;
    Ctrl qc = ctrl;
    qc.target_tol = std::max(ctrl.target_tol * 1e-3, 1e-15);
    NeumaierAcc acc;
    double quad_err = 0.0;
    for (long n = 1; n <= n_intervals; ++n) {
        EvalResult q = quad_de(
            [k, n](double s) {
                return std::pow(s, static_cast<double>(k)) /
                       std::pow(n + s, static_cast<double>(k + 1));
            },
            0.0, 1.0, qc);
        acc.add(q.value);
        quad_err += q.err_est;
        mom.quad_value.nodes_used += q.nodes_used;
    }

    // Tail: expanding (n+s)^{-k-1} binomially turns sum_{n>N} into Hurwitz
    // zeta values; five terms leave the sixth as the error bound.
    double q0 = static_cast<double>(n_intervals + 1);
    double tail = 0.0;
    double binom = 1.0;  // C(k+m, m)
    double sign = 1.0;
    int m = 0;
    for (; m <= 4; ++m) {
        tail += sign * binom * hurwitz_zeta(k + m + 1.0, q0, ctrl).value / (k + m + 1.0);
        binom = binom * (k + m + 1.0) / (m + 1.0);
        sign = -sign;
    }
    double next = binom * hurwitz_zeta(k + m + 1.0, q0, ctrl).value / (k + m + 1.0);

    mom.quad_value.value = acc.value() + tail;
    mom.quad_value.err_est = quad_err + next + 1e-15;
    mom.quad_value.terms_used = n_intervals;
    mom.quad_value.converged = mom.quad_value.err_est <= ctrl.target_tol;

    mom.closed_value = 1.0 - euler_gamma;
    for (int j = 2; j <= k; ++j)
        mom.closed_value -= (zeta(static_cast<double>(j), ctrl).value - 1.0) / j;

    if (k == 2 || k == 3) {
        long j_terms = std::min(ctrl.max_terms, 10000L);
        NeumaierAcc facc;
        for (long j = 1; j <= j_terms; ++j) {
            double z = 2.0 * kPi * j;
            // At the lattice points Ci(2 pi j) = -g and pi - 2 Si(2 pi j) = 2f
            // exactly; going through sin/cos of a rounded 2 pi j instead would
            // leak a phase error that the j^2 Ci weight amplifies to ~1e-4.
            AuxFG aux;
            if (z >= cisi_switch) {
                aux = cisi_aux(z);
            } else {
                CiSi v = cisi(z, ctrl);
                aux.f = 0.5 * kPi - v.si;
                aux.g = -v.ci;
            }
            // Only the printed per-j grouping is summable; the pieces diverge.
            double bracket;
            if (k == 2) {
                bracket = z * aux.f - 2.0 * aux.g - 1.0;
            } else {
                bracket = (z * z / 3.0 - 2.0) * aux.g + z * aux.f - 4.0 / 3.0;
            }
            facc.add(bracket);
        }
        static const double coef2[] = {-4.0, 36.0, -960.0};
        static const double coef3[] = {-6.0, 76.0, -2640.0};
        const double* coef = k == 2 ? coef2 : coef3;
        double w = 2.0 * kPi;
        double correction = 0.0;
        int order = std::min(ctrl.tail_order, 3);
        for (int i = 1; i <= order; ++i) {
            double zt = hurwitz_zeta(2.0 * i, static_cast<double>(j_terms + 1), ctrl).value;
            correction += coef[i - 1] * zt / std::pow(w, 2.0 * i);
        }
        mom.fourier_value = 0.25 + facc.value() + correction;
    } else {
        mom.fourier_value = std::numeric_limits<double>::quiet_NaN();
    }
    return mom;
}

double frac_power_expand(int n, double x) {
    if (n < 1 || n > 12)
        throw std::domain_error("frac_power_expand: needs 1 <= n <= 12");
    NeumaierAcc acc;
    double binom = 1.0;  // C(n+1, k)
    for (int k = 0; k <= n; ++k) {
        acc.add(binom * periodized_bernoulli(k, x));
        binom = binom * (n + 1 - k) / (k + 1.0);
    }
    return acc.value() / (n + 1.0);
}

}  // namespace psirep
