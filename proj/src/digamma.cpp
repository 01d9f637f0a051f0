#include "psirep/digamma.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kernels.hpp"

namespace psirep {

namespace {

constexpr double kPi = 3.14159265358979323846;

using detail::require_positive;

// Alternating binomial transform Delta_k = sum_l (-1)^l C(k,l) ln(l+a).
// Direct evaluation is stable through k ~ 20 (C(20,10) ~ 1.8e5 against ~1e-16
// roundoff); callers switch to the integral form beyond.
double binomial_log_delta(int k, double a) {
    NeumaierAcc acc;
    double binom = 1.0;
    for (int l = 0; l <= k; ++l) {
        double sign = (l % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * binom * std::log(l + a));
        binom = binom * (k - l) / (l + 1.0);
    }
    return acc.value();
}

// Positive series term -Delta_k/(k+1); integral route for large k where the
// binomial sum cancels catastrophically.
double binomial_log_term(int k, double a, const Ctrl& ctrl, long& nodes) {
    if (k <= 20) return -binomial_log_delta(k, a) / (k + 1.0);
    Ctrl qc = ctrl;
    qc.target_tol = std::min(ctrl.target_tol, 1e-12);
    EvalResult q = quad_de(
        [k, a](double u) {
            return std::pow(u, a - 1.0) * std::pow(1.0 - u, static_cast<double>(k)) /
                   (-std::log(u));
        },
        0.0, 1.0, qc);
    nodes += q.nodes_used;
    return q.value / (k + 1.0);
}

EvalResult psi_limit_sum(double a, const Ctrl& ctrl) {
    long n = ctrl.max_terms;
    NeumaierAcc acc;
    for (long k = 0; k < n; ++k) {
        double x = k + a;
        acc.add(1.0 / x - std::log1p(1.0 / x));
    }
    EvalResult res;
    res.value = std::log(a) - acc.value();
    res.err_est = 0.5 / (n + a);  // first-order scheme: tail ~ 1/(2(N+a))
    res.terms_used = n;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult psi_binomial_log(double a, const Ctrl& ctrl) {
    long k_max = std::min(ctrl.max_terms, 400L);
    EvalResult res;
    NeumaierAcc acc;
    for (int k = 1; k <= k_max; ++k)
        acc.add(binomial_log_term(k, a, ctrl, res.nodes_used));
    res.value = std::log(a) - acc.value();
    // truncation estimate Gamma(a) K^{-a} / (a ln K) from the term asymptotics
    res.err_est = k_max > 1 ? std::tgamma(a) * std::pow(static_cast<double>(k_max), -a) /
                                  (a * std::log(static_cast<double>(k_max)))
                            : 1.0;
    res.terms_used = k_max;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult psi_u_integral(double a, const Ctrl& ctrl) {
    EvalResult res = quad_de(
        [a](double u) { return std::pow(u, a - 1.0) * detail::digamma_kernel(u); }, 0.0, 1.0,
        ctrl);
    res.value += std::log(a);
    return res;
}

EvalResult psi_double_integral(double a, const Ctrl& ctrl) {
    Ctrl inner_ctrl = ctrl;
    inner_ctrl.target_tol = ctrl.target_tol * 0.05;
    inner_ctrl.quad_levels = std::min(ctrl.quad_levels, 9);
    long inner_nodes = 0;
    double inner_rel = 0.0;

    // Iterated as outer-x / inner-y with x^{a-1} pulled out of the inner
    // integral, which keeps every inner value O(1) so the inner absolute
    // tolerance stays meaningful across the whole outer range.  The inner
    // integral splits at y = 1/2: the upper half runs in s = 1 - y, where
    // the sharp layer at s ~ 1-x stays resolvable after y rounds against 1.
    auto outer = [&](double x) {
        double dx1 = 1.0 - x;
        EvalResult lower = quad_de(
            [a, x, dx1](double y) {
                double xy = x * y;
                if (xy == 0.0) return 0.0;
                return std::pow(y, a - 1.0) * dx1 / ((1.0 - xy) * std::log(xy));
            },
            0.0, 0.5, inner_ctrl);
        EvalResult upper = quad_de(
            [a, x, dx1](double s) {
                double d = dx1 + s - dx1 * s;  // 1 - xy
                double lt = d < 0.5 ? std::log1p(-d) : std::log(x * (1.0 - s));
                return std::pow(1.0 - s, a - 1.0) * dx1 / (d * lt);
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
    res.value += std::log(a);
    res.nodes_used += inner_nodes;
    res.err_est += inner_rel * (1.0 + mag);
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult psi_inv_binom_series(double a, const Ctrl& ctrl) {
    long k_cap = std::min(ctrl.max_terms, 100L);
    Ctrl qc = ctrl;
    qc.target_tol = ctrl.target_tol * 0.1;

    EvalResult res;
    NeumaierAcc acc;
    double quad_err = 0.0;
    long m_covered = 0;  // series summed through weight (1-u)^m / m, m <= m_covered
    for (long k = 2; k <= k_cap; ++k) {
        // T_k = k^{-2} int_0^inf k! / ((t+a)...(t+a+k-1)) dt, factors paired
        // to keep the product in range
        EvalResult q = quad_de(
            [k, a](double t) {
                double r = 1.0;
                for (long i = 0; i < k; ++i) r *= (i + 1.0) / (t + a + i);
                return r;
            },
            0.0, inf, qc);
        double term = q.value / (static_cast<double>(k) * k);
        acc.add(term);
        quad_err += q.err_est / (static_cast<double>(k) * k);
        res.nodes_used += q.nodes_used;
        res.terms_used = k;
        m_covered = k - 1;
        if (term < ctrl.target_tol * 0.1) break;
    }

    // Exact remainder: the underlying binomial-log series for m > m_covered
    // folds into a single integral with bracket sum_{j>M} (1-u)^j / j, where
    // M = m_covered + 1 is the first omitted index.
    long m = m_covered + 1;
    EvalResult tail = quad_de(
        [m, a](double u) {
            double w = 1.0 - u;
            double mlu = -std::log(u);
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
                bracket = mlu - partial;
            }
            return std::pow(u, a - 1.0) * bracket / (mlu * w);
        },
        0.0, 1.0, qc);
    res.nodes_used += tail.nodes_used;

    res.value = std::log(a) - (acc.value() + tail.value);
    res.err_est = quad_err + tail.err_est + 1e-15;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

// 1/(1 - e^{-t}) - 1/t; 1/2 at t = 0.
double exp_kernel(double t) {
    if (t < 0.1) {
        double t2 = t * t;
        return 0.5 + t * (1.0 / 12.0 +
                          t2 * (-1.0 / 720.0 + t2 * (1.0 / 30240.0 - t2 / 1209600.0)));
    }
    return 1.0 / (-std::expm1(-t)) - 1.0 / t;
}

EvalResult psi_exp_integral(double a, const Ctrl& ctrl) {
    EvalResult res = quad_de(
        [a](double t) { return std::exp(-a * t) * exp_kernel(t); }, 0.0, inf, ctrl);
    res.value = std::log(a) - res.value;
    return res;
}

EvalResult psi_fourier_cisi(double a, const Ctrl& ctrl) {
    long j_terms = std::min(ctrl.max_terms, 2000L);
    double w = 2.0 * kPi * a;

    EvalResult res;
    NeumaierAcc acc;
    for (long j = 1; j <= j_terms; ++j) {
        double z = w * j;
        CiSi v = cisi(z, ctrl);
        acc.add(2.0 * std::cos(z) * v.ci - std::sin(z) * (kPi - 2.0 * v.si));
    }

    // Tail: the bracket is -2g(wj) ~ -2/ (wj)^2 + 12/(wj)^4 - ..., so omitted
    // terms sum to Hurwitz zeta values.
    static const double coef[] = {1.0, -6.0, 120.0, -5040.0};
    double correction = 0.0;
    int order = std::min(ctrl.tail_order, 4);
    for (int m = 1; m <= order; ++m) {
        double zt = hurwitz_zeta(2.0 * m, static_cast<double>(j_terms + 1), ctrl).value;
        correction += -2.0 * coef[m - 1] * zt / std::pow(w, 2.0 * m);
    }
    double next = order < 4 ? 2.0 * std::fabs(coef[order]) *
                                  hurwitz_zeta(2.0 * (order + 1),
                                               static_cast<double>(j_terms + 1), ctrl)
                                      .value /
                                  std::pow(w, 2.0 * (order + 1))
                            : 1e-18;

    res.value = std::log(a) - 0.5 / a + acc.value() + correction;
    res.err_est = next + 1e-15;
    res.terms_used = j_terms;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

}  // namespace

double psi_ref(double a) {
    require_positive(a, "psi_ref");
    double acc = 0.0;
    while (a < 16.0) {
        acc -= 1.0 / a;
        a += 1.0;
    }
    double inv2 = 1.0 / (a * a);
    double p = inv2;
    double sum = 0.0;
    for (int k = 1; k <= 8; ++k) {
        sum += bernoulli_number(2 * k) / (2.0 * k) * p;
        p *= inv2;
    }
    return acc + std::log(a) - 0.5 / a - sum;
}

EvalResult psi_rep(double a, RepDigamma rep, const Ctrl& ctrl) {
    ctrl.validate();
    require_positive(a, "psi_rep");
    switch (rep) {
        case RepDigamma::LimitSum: return psi_limit_sum(a, ctrl);
        case RepDigamma::BinomialLog: return psi_binomial_log(a, ctrl);
        case RepDigamma::UIntegral: return psi_u_integral(a, ctrl);
        case RepDigamma::DoubleIntegral: return psi_double_integral(a, ctrl);
        case RepDigamma::InvBinomSeries: return psi_inv_binom_series(a, ctrl);
        case RepDigamma::ExpIntegral: return psi_exp_integral(a, ctrl);
        case RepDigamma::FourierCiSi: return psi_fourier_cisi(a, ctrl);
    }
    throw std::invalid_argument("psi_rep: unknown representation");
}

void RationalArg::validate() const {
    if (p <= 0 || q <= 1 || p >= q)
        throw std::invalid_argument("RationalArg: requires 0 < p < q");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("RationalArg: p/q must be reduced");
}

double psi_rational(const RationalArg& r) {
    r.validate();
    double pq = static_cast<double>(r.p) / static_cast<double>(r.q);
    NeumaierAcc acc;
    for (long n = 1; 2 * n <= r.q; ++n) {
        double weight = (2 * n == r.q) ? 0.5 : 1.0;  // halved midpoint for even q
        acc.add(weight * std::cos(2.0 * kPi * n * pq) *
                std::log(2.0 * std::sin(kPi * n / r.q)));
    }
    return -euler_gamma - 0.5 * kPi / std::tan(kPi * pq) - std::log(static_cast<double>(r.q)) +
           2.0 * acc.value();
}

EvalResult exp_gamma0_product(double a, long k_factors) {
    require_positive(a, "exp_gamma0_product");
    if (k_factors < 1) throw std::invalid_argument("exp_gamma0_product: needs K >= 1");

    Ctrl ctrl;  // integral fallback for deep factors only
    EvalResult res;
    NeumaierAcc logs;
    logs.add(-std::log(a));
    double last = 0.0;
    for (int k = 1; k <= k_factors; ++k) {
        last = binomial_log_term(k, a, ctrl, res.nodes_used);
        logs.add(last);
    }
    res.value = std::exp(logs.value());
    res.err_est = std::fabs(last) * res.value;
    res.terms_used = k_factors;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

double multiplication_residual(double a, int m, RepDigamma rep, const Ctrl& ctrl) {
    require_positive(a, "multiplication_residual");
    if (m < 1) throw std::invalid_argument("multiplication_residual: needs m >= 1");
    double g_ma = -psi_rep(m * a, rep, ctrl).value;
    NeumaierAcc acc;
    for (int k = 0; k < m; ++k)
        acc.add(-psi_rep(a + static_cast<double>(k) / m, rep, ctrl).value);
    return g_ma - (-std::log(static_cast<double>(m)) + acc.value() / m);
}

}  // namespace psirep
