#include "psirep/polygamma.hpp"

#include <cmath>
#include <stdexcept>

#include "kernels.hpp"
#include "psirep/digamma.hpp"

namespace psirep {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_order(int j, const char* who) {
    if (j < 1) throw std::domain_error(std::string(who) + ": requires j >= 1");
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double sign_of(int j) { return j % 2 == 1 ? 1.0 : -1.0; }  // (-1)^{j-1}

// k-th forward-difference sum_l (-1)^l C(k,l) (l+a)^{-j}; positive, and
// directly summable through k ~ 20 before binomial cancellation bites.
double binomial_pow_delta(int k, int j, double a) {
    NeumaierAcc acc;
    double binom = 1.0;
    for (int l = 0; l <= k; ++l) {
        double sign = (l % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * binom * std::pow(l + a, -static_cast<double>(j)));
        binom = binom * (k - l) / (l + 1.0);
    }
    return acc.value();
}

// Series term (j-1)!/(k+1) sum_l (-1)^l C(k,l)(l+a)^{-j}; the equivalent
// integral (1/(k+1)) int_0^1 u^{a-1}(1-u)^k (-ln u)^{j-1} du takes over
// where the alternating sum cancels.
double binomial_pow_term(int k, int j, double a, const Ctrl& ctrl, long& nodes,
                         double& quad_err) {
    if (k <= 20) return factorial(j - 1) * binomial_pow_delta(k, j, a) / (k + 1.0);
    Ctrl qc = ctrl;
    qc.target_tol = std::min(ctrl.target_tol, 1e-12);
    EvalResult q = quad_de(
        [k, j, a](double u) {
            return std::pow(u, a - 1.0) * std::pow(1.0 - u, static_cast<double>(k)) *
                   std::pow(-std::log(u), static_cast<double>(j - 1));
        },
        0.0, 1.0, qc);
    nodes += q.nodes_used;
    quad_err += q.err_est / (k + 1.0);
    return q.value / (k + 1.0);
}

EvalResult polygamma_binomial_pow(int j, double a, const Ctrl& ctrl) {
    long k_cap = std::min(ctrl.max_terms, 60L);
    Ctrl qc = ctrl;
    qc.target_tol = ctrl.target_tol * 0.1;

    EvalResult res;
    NeumaierAcc acc;
    double quad_err = 0.0;
    long k_used = 0;
    for (long k = 1; k <= k_cap; ++k) {
        double term =
            binomial_pow_term(static_cast<int>(k), j, a, ctrl, res.nodes_used, quad_err);
        acc.add(term);
        k_used = k;
        res.terms_used = k;
        if (k >= 5 && term < ctrl.target_tol * 0.1) break;
    }

    // Exact remainder: under u = e^{-t} every omitted term is a Laplace
    // integral, and sum_{k>K} w^k/(k+1) = (t - sum_{m<=K+1} w^m/m)/w with
    // w = 1 - e^{-t}, so the whole tail folds into one integral.
    long kk = k_used;
    EvalResult tail = quad_de(
        [kk, j, a](double t) {
            if (a * t > 745.0) return 0.0;  // e^{-at} underflows before t^{j-1} overflows
            double w = -std::expm1(-t);
            double bracket;
            if (w < 0.5) {
                double wm = std::pow(w, static_cast<double>(kk + 2));
                double s = 0.0;
                for (long m = kk + 2; m <= kk + 500; ++m) {
                    s += wm / m;
                    wm *= w;
                    if (wm < s * 1e-18 + 1e-320) break;
                }
                bracket = s;
            } else {
                NeumaierAcc partial;
                double wm = w;
                for (long m = 1; m <= kk + 1; ++m) {
                    partial.add(wm / m);
                    wm *= w;
                }
                bracket = t - partial.value();
            }
            return std::exp(-a * t) * std::pow(t, static_cast<double>(j - 1)) * bracket / w;
        },
        0.0, inf, qc);
    res.nodes_used += tail.nodes_used;

    res.value =
        sign_of(j) * (factorial(j - 1) * std::pow(a, -static_cast<double>(j)) + acc.value() +
                      tail.value);
    res.err_est = quad_err + tail.err_est + 1e-15 * (1.0 + std::fabs(res.value));
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult polygamma_u_integral(int j, double a, const Ctrl& ctrl) {
    EvalResult res = quad_de(
        [j, a](double u) {
            return std::pow(u, a - 1.0) * std::pow(std::log(u), static_cast<double>(j)) *
                   detail::digamma_kernel(u);
        },
        0.0, 1.0, ctrl);
    res.value += sign_of(j) * factorial(j - 1) * std::pow(a, -static_cast<double>(j));
    return res;
}

EvalResult polygamma_double_integral(int j, double a, const Ctrl& ctrl) {
    Ctrl inner_ctrl = ctrl;
    inner_ctrl.target_tol = ctrl.target_tol * 0.05;
    inner_ctrl.quad_levels = std::min(ctrl.quad_levels, 9);
    long inner_nodes = 0;
    double inner_rel = 0.0;

    // Same iteration layout as the digamma double integral: outer-x with
    // x^{a-1} factored out, inner-y split at 1/2 with the upper half in
    // s = 1 - y. The kernel here is (1-x) ln^{j-1}(xy) / (1-xy).
    auto outer = [&](double x) {
        double dx1 = 1.0 - x;
        EvalResult lower = quad_de(
            [j, a, x, dx1](double y) {
                double xy = x * y;
                if (xy == 0.0) return 0.0;
                return std::pow(y, a - 1.0) * dx1 *
                       std::pow(std::log(xy), static_cast<double>(j - 1)) / (1.0 - xy);
            },
            0.0, 0.5, inner_ctrl);
        EvalResult upper = quad_de(
            [j, a, x, dx1](double s) {
                double d = dx1 + s - dx1 * s;  // 1 - xy
                double lt = d < 0.5 ? std::log1p(-d) : std::log(x * (1.0 - s));
                return std::pow(1.0 - s, a - 1.0) * dx1 *
                       std::pow(lt, static_cast<double>(j - 1)) / d;
            },
            0.0, 0.5, inner_ctrl);
        double val = lower.value + upper.value;
        inner_nodes += lower.nodes_used + upper.nodes_used;
        inner_rel = std::max(
            inner_rel, (lower.err_est + upper.err_est) / std::max(1.0, std::fabs(val)));
        return std::pow(x, a - 1.0) * val;
    };

    EvalResult res = quad_de(outer, 0.0, 1.0, ctrl);
    double mag = std::fabs(res.value);
    res.value += sign_of(j) * factorial(j - 1) * std::pow(a, -static_cast<double>(j));
    res.nodes_used += inner_nodes;
    res.err_est += inner_rel * (1.0 + mag);
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

}  // namespace

double polygamma_ref(int j, double a) {
    require_order(j, "polygamma_ref");
    detail::require_positive(a, "polygamma_ref");
    Ctrl ctrl;
    ctrl.target_tol = 1e-14;
    double sign = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^{j+1}
    return sign * factorial(j) * hurwitz_zeta(j + 1.0, a, ctrl).value;
}

EvalResult polygamma_rep(int j, double a, RepPolygamma rep, const Ctrl& ctrl) {
    ctrl.validate();
    require_order(j, "polygamma_rep");
    detail::require_positive(a, "polygamma_rep");
    switch (rep) {
        case RepPolygamma::BinomialPow: return polygamma_binomial_pow(j, a, ctrl);
        case RepPolygamma::UIntegralLogJ: return polygamma_u_integral(j, a, ctrl);
        case RepPolygamma::DoubleIntegralLogJ: return polygamma_double_integral(j, a, ctrl);
    }
    throw std::invalid_argument("polygamma_rep: unknown representation");
}

double harmonic(long n) {
    if (n < 1) throw std::domain_error("harmonic: requires n >= 1");
    return psi_ref(static_cast<double>(n) + 1.0) + euler_gamma;
}

double gen_harmonic(long n, int r) {
    if (n < 1) throw std::domain_error("gen_harmonic: requires n >= 1");
    if (r < 2) throw std::domain_error("gen_harmonic: requires r >= 2");
    double sign = (r % 2 == 1) ? 1.0 : -1.0;  // (-1)^{r-1}
    return sign / factorial(r - 1) *
           (polygamma_ref(r - 1, static_cast<double>(n) + 1.0) - polygamma_ref(r - 1, 1.0));
}

EvalResult harmonic_ci(long n, long j_terms, const Ctrl& ctrl) {
    ctrl.validate();
    if (n < 1) throw std::domain_error("harmonic_ci: requires n >= 1");
    if (j_terms < 0) throw std::invalid_argument("harmonic_ci: requires J >= 0");
    double w = 2.0 * kPi * n;

    EvalResult res;
    NeumaierAcc acc;
    double series_err = 0.0;
    for (long j = 1; j <= j_terms; ++j) {
        CiSi v = cisi(w * j, ctrl);
        acc.add(2.0 * v.ci);
        series_err += 2.0 * v.err_est;
    }

    // At integer multiples of 2pi the term 2 Ci(wj) equals -2g(wj), so the
    // omitted terms telescope into Hurwitz zeta values of the asymptotic
    // g-series. J = 0 returns the bare Euler-Maclaurin leading form.
    double correction = 0.0;
    double next;
    if (j_terms > 0) {
        static const double coef[] = {1.0, -6.0, 120.0, -5040.0};
        int order = std::min(ctrl.tail_order, 4);
        for (int m = 1; m <= order; ++m) {
            double zt = hurwitz_zeta(2.0 * m, static_cast<double>(j_terms + 1), ctrl).value;
            correction += -2.0 * coef[m - 1] * zt / std::pow(w, 2.0 * m);
        }
        next = order < 4 ? 2.0 * std::fabs(coef[order]) *
                               hurwitz_zeta(2.0 * (order + 1),
                                            static_cast<double>(j_terms + 1), ctrl)
                                   .value /
                               std::pow(w, 2.0 * (order + 1))
                         : 1e-18;
    } else {
        next = 2.0 * hurwitz_zeta(2.0, 1.0, ctrl).value / (w * w);
    }

    res.value = std::log(static_cast<double>(n)) + euler_gamma + 0.5 / n + acc.value() +
                correction;
    res.err_est = next + series_err + 1e-15;
    res.terms_used = j_terms;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult gen_harmonic_em(long n, int r, const Ctrl& ctrl) {
    ctrl.validate();
    if (n < 1) throw std::domain_error("gen_harmonic_em: requires n >= 1");
    if (r < 2) throw std::domain_error("gen_harmonic_em: requires r >= 2");

    Ctrl zc = ctrl;
    zc.target_tol = 1e-14;
    double head = zeta(static_cast<double>(r), zc).value +
                  0.5 * std::pow(static_cast<double>(n), -static_cast<double>(r)) -
                  std::pow(static_cast<double>(n), 1.0 - r) / (r - 1.0);

    // The sawtooth P1 jumps at the integers, so the remainder integral is
    // summed interval by interval where the integrand is smooth.
    constexpr long kIntervals = 200;
    Ctrl qc = ctrl;
    qc.target_tol = ctrl.target_tol / (2.0 * kIntervals);
    EvalResult res;
    NeumaierAcc acc;
    double quad_err = 0.0;
    for (long i = 0; i < kIntervals; ++i) {
        double lo = static_cast<double>(n + i);
        EvalResult q = quad_de(
            [r](double x) {
                return periodized_bernoulli(1, x) * std::pow(x, -(r + 1.0));
            },
            lo, lo + 1.0, qc);
        acc.add(q.value);
        quad_err += q.err_est;
        res.nodes_used += q.nodes_used;
    }
    // Past the last interval the sawtooth integral has the Euler-Maclaurin
    // expansion r int_N^inf P1/x^{r+1} = -r/(12 N^{r+1})
    // + r(r+1)(r+2)/(720 N^{r+3}) + O(N^{-r-5}); two terms beat the crude
    // |P1| <= 1/2 bound by the margin the 1e-9 accuracy target needs.
    double n_last = static_cast<double>(n + kIntervals);
    double tail = -r / (12.0 * std::pow(n_last, r + 1.0)) +
                  r * (r + 1.0) * (r + 2.0) / (720.0 * std::pow(n_last, r + 3.0));
    double tail_err = r * (r + 1.0) * (r + 2.0) * (r + 3.0) * (r + 4.0) /
                      (30240.0 * std::pow(n_last, r + 5.0));

    res.value = head + r * acc.value() + tail;
    res.err_est = r * quad_err + tail_err + 1e-15;
    res.terms_used = kIntervals;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

}  // namespace psirep
