// ln Gamma(a) on the positive axis: binomial series over x ln x differences,
// two Binet-type single integrals, a double integral over the unit square, a
// Fourier-type Ci/Si sum, the exponentiated partial product, and the Binet
// constant 1 - ln(2pi)/2 by series and by quadrature.

#include "psirep/loggamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kernels.hpp"

namespace psirep {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2Pi = 1.83787706640934548356;  // ln(2 pi)

using detail::require_positive;

// Alternating binomial difference of (l+a) ln(l+a) - (l+1) ln(l+1).  The
// brackets are O(1) but enter scaled by x ln x magnitudes, so the roundoff
// floor grows like 2^k; rounding accumulates that scale for the caller.
double xlnx_delta(int k, double a, double& rounding) {
    NeumaierAcc acc;
    double binom = 1.0;
    double scale = 0.0;
    for (int l = 0; l <= k; ++l) {
        double sign = (l % 2 == 0) ? 1.0 : -1.0;
        double xa = (l + a) * std::log(l + a);
        double x1 = (l + 1.0) * std::log(l + 1.0);
        acc.add(sign * binom * (xa - x1));
        scale += binom * (std::fabs(xa) + std::fabs(x1));
        binom = binom * (k - l) / (l + 1.0);
    }
    rounding += 1e-16 * scale;
    return acc.value();
}

// Series term: equals (1/(k+1)) int_0^1 (1-u)^k (u^{a-1}-1) / ln^2 u du.
// Direct difference up to the cancellation-stable depth, integral beyond it.
double xlnx_term(int k, double a, const Ctrl& ctrl, long& nodes, double& quad_err) {
    if (k <= 20) {
        double rounding = 0.0;
        double term = xlnx_delta(k, a, rounding) / (k + 1.0);
        quad_err += rounding / (k + 1.0);
        return term;
    }
    Ctrl qc = ctrl;
    qc.target_tol = std::min(ctrl.target_tol, 1e-12);
    EvalResult q = quad_de(
        [k, a](double u) {
            double lu = std::log(u);
            if (lu == 0.0) return 0.0;
            return std::pow(1.0 - u, static_cast<double>(k)) *
                   std::expm1((a - 1.0) * lu) / (lu * lu);
        },
        0.0, 1.0, qc);
    nodes += q.nodes_used;
    quad_err += q.err_est / (k + 1.0);
    return q.value / (k + 1.0);
}

EvalResult lngamma_binomial_series(double a, const Ctrl& ctrl) {
    long k_cap = std::min(ctrl.max_terms, 60L);
    EvalResult res;
    NeumaierAcc acc;
    double quad_err = 0.0;
    long k_used = 0;
    for (long k = 1; k <= k_cap; ++k) {
        double term = xlnx_term(static_cast<int>(k), a, ctrl, res.nodes_used, quad_err);
        acc.add(term);
        res.terms_used = k;
        k_used = k;
        if (k >= 5 && std::fabs(term) < ctrl.target_tol * 0.1) break;
    }

    // Exact remainder: sum_{k>K} (1-u)^k / (k+1) folds to the log bracket
    // sum_{j>m} (1-u)^j / j with m = K + 1 the first omitted index.
    long m = k_used + 1;
    Ctrl qc = ctrl;
    qc.target_tol = ctrl.target_tol * 0.1;
    EvalResult tail = quad_de(
        [m, a](double u) {
            double w = 1.0 - u;
            double lu = std::log(u);
            if (lu == 0.0 || w == 0.0) return 0.0;
            double bracket;
            if (w < 0.5) {
                double wj = std::pow(w, static_cast<double>(m + 1));
                double s = 0.0;
                for (long j = m + 1; j <= m + 400; ++j) {
                    s += wj / j;
                    wj *= w;
                    if (wj < s * 1e-18 + 1e-320) break;
                }
                bracket = s;
            } else {
                double partial = 0.0, wj = w;
                for (long j = 1; j <= m; ++j) {
                    partial += wj / j;
                    wj *= w;
                }
                bracket = -lu - partial;
            }
            return std::expm1((a - 1.0) * lu) / (lu * lu) * bracket / w;
        },
        0.0, 1.0, qc);
    res.nodes_used += tail.nodes_used;

    res.value = a * (std::log(a) - 1.0) + 1.0 + acc.value() + tail.value;
    res.err_est = quad_err + tail.err_est + 1e-15 * (1.0 + std::fabs(res.value));
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult lngamma_binet1(double a, const Ctrl& ctrl) {
    EvalResult res = quad_de(
        [a](double u) {
            double lu = std::log(u);
            if (lu == 0.0) return -(a - 1.0) * 0.5;
            return std::expm1((a - 1.0) * lu) / lu * detail::digamma_kernel(u);
        },
        0.0, 1.0, ctrl);
    res.value += a * (std::log(a) - 1.0) + 1.0;
    return res;
}

// (1/(u-1) - 1/ln u + 1/2) / ln u; 1/12 at u = 1.  The direct form loses all
// digits near u = 1, so a Taylor window covers |u-1| < 0.08.
double binet2_kernel(double u) {
    double e = u - 1.0;
    if (std::fabs(e) < 0.08) {
        return 1.0 / 12.0 +
               e * e *
                   (-1.0 / 720.0 +
                    e * (1.0 / 720.0 +
                         e * (-5.0 / 4032.0 +
                              e * (11.0 / 10080.0 +
                                   e * (-3499.0 / 3628800.0 + e * 1039.0 / 1209600.0)))));
    }
    return (detail::digamma_kernel(u) + 0.5) / std::log(u);
}

EvalResult lngamma_binet2(double a, const Ctrl& ctrl) {
    EvalResult res = quad_de(
        [a](double u) { return std::pow(u, a - 1.0) * binet2_kernel(u); }, 0.0, 1.0, ctrl);
    res.value += a * (std::log(a) - 1.0) - 0.5 * std::log(a) + 0.5 * kLn2Pi;
    return res;
}

EvalResult lngamma_double_integral(double a, const Ctrl& ctrl) {
    Ctrl inner_ctrl = ctrl;
    inner_ctrl.target_tol = ctrl.target_tol * 0.05;
    inner_ctrl.quad_levels = std::min(ctrl.quad_levels, 9);
    long inner_nodes = 0;
    double inner_rel = 0.0;

    // Outer-x / inner-y.  On y <= 1/2 the numerator (xy)^{a-1} - 1 splits into
    // two separately integrable pieces with x^{a-1} pulled out, keeping inner
    // values O(1); the split is not usable near xy = 1, so the upper half runs
    // the subtracted form in s = 1 - y, where the layer at s ~ 1-x stays
    // resolvable after y rounds against 1.
    auto outer = [&](double x) {
        double dx1 = 1.0 - x;
        if (x == 0.0 || dx1 == 0.0) return 0.0;
        EvalResult pow_part = quad_de(
            [a, x, dx1](double y) {
                double xy = x * y;
                if (xy == 0.0) return 0.0;
                double lt = std::log(xy);
                return std::pow(y, a - 1.0) * dx1 / ((1.0 - xy) * lt * lt);
            },
            0.0, 0.5, inner_ctrl);
        EvalResult one_part = quad_de(
            [x, dx1](double y) {
                double xy = x * y;
                if (xy == 0.0) return 0.0;
                double lt = std::log(xy);
                return dx1 / ((1.0 - xy) * lt * lt);
            },
            0.0, 0.5, inner_ctrl);
        EvalResult upper = quad_de(
            [a, x, dx1](double s) {
                double d = dx1 + s - dx1 * s;  // 1 - xy
                double lt = d < 0.5 ? std::log1p(-d) : std::log(x * (1.0 - s));
                return std::expm1((a - 1.0) * lt) * dx1 / (d * lt * lt);
            },
            0.0, 0.5, inner_ctrl);
        double xs = std::pow(x, a - 1.0);
        double val = xs * pow_part.value - one_part.value + upper.value;
        inner_nodes += pow_part.nodes_used + one_part.nodes_used + upper.nodes_used;
        double err = xs * pow_part.err_est + one_part.err_est + upper.err_est;
        inner_rel = std::max(inner_rel, err / std::max(1.0, std::fabs(val)));
        return val;
    };
    EvalResult res = quad_de(outer, 0.0, 1.0, ctrl);
    double mag = std::fabs(res.value);
    res.value += a * (std::log(a) - 1.0) + 1.0;
    res.nodes_used += inner_nodes;
    res.err_est += inner_rel * (1.0 + mag);
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult lngamma_fourier_cisi(double a, const Ctrl& ctrl) {
    long j_terms = std::min(ctrl.max_terms, 2000L);
    double w = 2.0 * kPi * a;

    EvalResult res;
    NeumaierAcc acc;
    for (long j = 1; j <= j_terms; ++j) {
        double z = w * j;
        CiSi v = cisi(z, ctrl);
        acc.add((2.0 * std::sin(z) * v.ci + std::cos(z) * (kPi - 2.0 * v.si)) / j);
    }

    // Bracket / (2 pi j) ~ f(wj) / (pi j) with f ~ 1/z - 2/z^3 + 24/z^5 - ...,
    // so the omitted terms sum to Hurwitz zeta values.
    static const double coef[] = {1.0, -2.0, 24.0, -720.0};
    double correction = 0.0;
    int order = std::min(ctrl.tail_order, 4);
    for (int m = 1; m <= order; ++m) {
        double zt = hurwitz_zeta(2.0 * m, static_cast<double>(j_terms + 1), ctrl).value;
        correction += coef[m - 1] * zt / (kPi * std::pow(w, 2.0 * m - 1.0));
    }
    double next = order < 4 ? std::fabs(coef[order]) *
                                  hurwitz_zeta(2.0 * (order + 1),
                                               static_cast<double>(j_terms + 1), ctrl)
                                      .value /
                                  (kPi * std::pow(w, 2.0 * order + 1.0))
                            : 1e-18;

    res.value = (a - 0.5) * std::log(a) - a + 0.5 * kLn2Pi + acc.value() / (2.0 * kPi) +
                correction;
    res.err_est = next + 1e-15;
    res.terms_used = j_terms;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

}  // namespace

double lngamma_ref(double a) {
    require_positive(a, "lngamma_ref");
    double shift = 0.0;
    while (a < 16.0) {
        shift -= std::log(a);
        a += 1.0;
    }
    double value = (a - 0.5) * std::log(a) - a + 0.5 * kLn2Pi;
    double p = 1.0 / a;
    double inv2 = 1.0 / (a * a);
    for (int k = 1; k <= 8; ++k) {
        value += bernoulli_number(2 * k) / ((2.0 * k) * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    return value + shift;
}

EvalResult lngamma_rep(double a, RepLogGamma rep, const Ctrl& ctrl) {
    ctrl.validate();
    require_positive(a, "lngamma_rep");
    switch (rep) {
        case RepLogGamma::BinomialSeries: return lngamma_binomial_series(a, ctrl);
        case RepLogGamma::Binet1: return lngamma_binet1(a, ctrl);
        case RepLogGamma::Binet2: return lngamma_binet2(a, ctrl);
        case RepLogGamma::DoubleIntegral: return lngamma_double_integral(a, ctrl);
        case RepLogGamma::FourierCiSi: return lngamma_fourier_cisi(a, ctrl);
    }
    throw std::invalid_argument("lngamma_rep: unknown representation");
}

EvalResult gamma_product(double a, long k_factors) {
    require_positive(a, "gamma_product");
    if (k_factors < 1) throw std::invalid_argument("gamma_product: needs K >= 1");

    Ctrl ctrl;  // integral fallback for deep factors only
    EvalResult res;
    NeumaierAcc logs;
    logs.add(1.0 - a + a * std::log(a));
    double quad_err = 0.0;
    double last = 0.0;
    for (long k = 1; k <= k_factors; ++k) {
        last = xlnx_term(static_cast<int>(k), a, ctrl, res.nodes_used, quad_err);
        logs.add(last);
    }
    res.value = std::exp(logs.value());
    res.err_est = (std::fabs(last) + quad_err) * res.value;
    res.terms_used = k_factors;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

std::pair<EvalResult, EvalResult> const_binet_sum(long j_terms, const Ctrl& ctrl) {
    ctrl.validate();
    if (j_terms < 1) throw std::invalid_argument("const_binet_sum: needs J >= 1");

    EvalResult series;
    NeumaierAcc acc;
    for (long j = 1; j <= j_terms; ++j) {
        CiSi v = cisi(2.0 * kPi * j, ctrl);
        acc.add((kPi - 2.0 * v.si) / j);
    }
    double w = 2.0 * kPi;
    static const double coef[] = {1.0, -2.0, 24.0, -720.0};
    double correction = 0.0;
    int order = std::min(ctrl.tail_order, 4);
    for (int m = 1; m <= order; ++m) {
        double zt = hurwitz_zeta(2.0 * m, static_cast<double>(j_terms + 1), ctrl).value;
        correction += coef[m - 1] * zt / (kPi * std::pow(w, 2.0 * m - 1.0));
    }
    double next = order < 4 ? std::fabs(coef[order]) *
                                  hurwitz_zeta(2.0 * (order + 1),
                                               static_cast<double>(j_terms + 1), ctrl)
                                      .value /
                                  (kPi * std::pow(w, 2.0 * order + 1.0))
                            : 1e-18;
    series.value = acc.value() / (2.0 * kPi) + correction;
    series.err_est = next + 1e-15;
    series.terms_used = j_terms;
    series.converged = series.err_est <= ctrl.target_tol;

    // Independent route: zeta'(0) = -ln(2pi)/2 = -1 + 2 int_0^inf arctan(t) /
    // (e^{2 pi t} - 1) dt, so twice the integral is the same constant.
    EvalResult quad = quad_de(
        [](double t) {
            double denom = std::expm1(2.0 * kPi * t);
            if (denom == 0.0) return 1.0 / (2.0 * kPi);
            return std::atan(t) / denom;
        },
        0.0, inf, ctrl);
    quad.value *= 2.0;
    quad.err_est *= 2.0;
    return {series, quad};
}

IdentityReport lngamma_quarter(const Ctrl& ctrl) {
    ctrl.validate();
    long m_terms = std::min(ctrl.max_terms, 2000L);
    double p2 = kPi * kPi;

    // Integer-argument sum: sum_m ((-1)^m / m)(pi - 2 Si(pi m)); the summand
    // equals 2 f(pi m) / m, so the omitted terms telescope to Hurwitz values.
    NeumaierAcc f_acc;
    for (long m = 1; m <= m_terms; ++m) {
        CiSi v = cisi(kPi * m, ctrl);
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        f_acc.add(sign * (kPi - 2.0 * v.si) / m);
    }
    double q1 = static_cast<double>(m_terms + 1);
    double f_tail =
        2.0 * (hurwitz_zeta(2.0, q1, ctrl).value / kPi -
               2.0 * hurwitz_zeta(4.0, q1, ctrl).value / (p2 * kPi) +
               24.0 * hurwitz_zeta(6.0, q1, ctrl).value / (p2 * p2 * kPi) -
               720.0 * hurwitz_zeta(8.0, q1, ctrl).value / (p2 * p2 * p2 * kPi));
    double f_sum = f_acc.value() + f_tail;
    double f_next = 2.0 * 40320.0 * hurwitz_zeta(10.0, q1, ctrl).value /
                    (p2 * p2 * p2 * p2 * kPi);

    // Half-integer sum: sum_{m>=0} ((-1)^m / (2m+1)) Ci(pi (m + 1/2)); the
    // summand equals f(pi (m + 1/2)) / (2m+1).
    NeumaierAcc c_acc;
    for (long m = 0; m <= m_terms; ++m) {
        CiSi v = cisi(kPi * (m + 0.5), ctrl);
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        c_acc.add(sign * v.ci / (2.0 * m + 1.0));
    }
    double qh = m_terms + 1.5;
    double ci_sum = c_acc.value() +
                    hurwitz_zeta(2.0, qh, ctrl).value / (2.0 * kPi) -
                    hurwitz_zeta(4.0, qh, ctrl).value / (p2 * kPi) +
                    12.0 * hurwitz_zeta(6.0, qh, ctrl).value / (p2 * p2 * kPi) -
                    360.0 * hurwitz_zeta(8.0, qh, ctrl).value / (p2 * p2 * p2 * kPi);
    double ci_next = 20160.0 * hurwitz_zeta(10.0, qh, ctrl).value /
                     (p2 * p2 * p2 * p2 * kPi);

    double base = 0.5 * std::log(4.0 * kPi) - 0.25;
    double factor2 = base + (0.5 * f_sum + 2.0 * ci_sum) / (2.0 * kPi);
    // With factor 1 the Si part rearranges to f_sum/4 - (pi/4) ln 2 exactly.
    double factor1 =
        base + (0.25 * f_sum - 0.25 * kPi * std::log(2.0) + 2.0 * ci_sum) / (2.0 * kPi);

    IdentityReport rep;
    rep.beta = 0.25;
    rep.lhs.value = lngamma_ref(0.25);
    rep.lhs.err_est = 1e-13;
    rep.lhs.converged = true;
    rep.rhs.value = factor2;
    rep.rhs.err_est = (0.5 * f_next + 2.0 * ci_next) / (2.0 * kPi) + 1e-15;
    rep.rhs.terms_used = m_terms;
    rep.rhs.converged = rep.rhs.err_est <= ctrl.target_tol;
    rep.residual = rep.rhs.value - rep.lhs.value;
    double resid1 = factor1 - rep.lhs.value;
    rep.pass = std::fabs(rep.residual) <= std::max(ctrl.target_tol, 4.0 * rep.rhs.err_est) &&
               std::fabs(rep.residual) < std::fabs(resid1);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "lngamma(1/4) half-integer Fourier sum: Si factor 2 residual %.3e, "
                  "factor 1 residual %.3e",
                  rep.residual, resid1);
    rep.label = buf;
    return rep;
}

}  // namespace psirep
