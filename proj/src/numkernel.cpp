#include "psirep/numkernel.hpp"

#include <cmath>
#include <stdexcept>

namespace psirep {

void Ctrl::validate() const {
    if (max_terms < 1) throw std::invalid_argument("Ctrl: max_terms must be >= 1");
    if (!(target_tol > 0.0) || !(target_tol < 1.0))
        throw std::invalid_argument("Ctrl: target_tol must lie in (0, 1)");
    if (quad_levels < 1 || quad_levels > 12)
        throw std::invalid_argument("Ctrl: quad_levels must lie in [1, 12]");
    if (tail_order < 0 || tail_order > 4)
        throw std::invalid_argument("Ctrl: tail_order must lie in [0, 4]");
}

// ---------------------------------------------------------------------------
// Bernoulli numbers via the tangent-number triangle. The triangle is integer
// arithmetic (exact in double through T_6 = 353792, ~1 ulp relative beyond),
// avoiding the catastrophic cancellation of the defining recurrence.
// ---------------------------------------------------------------------------

BernoulliCache::BernoulliCache(int capacity) {
    if (capacity < 2) capacity = 2;
    int m = capacity / 2;  // number of tangent numbers needed
    std::vector<double> t(m + 1, 0.0);
    t[1] = 1.0;
    for (int k = 2; k <= m; ++k) t[k] = (k - 1) * t[k - 1];
    for (int k = 2; k <= m; ++k)
        for (int j = k; j <= m; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];

    b_.assign(capacity + 1, 0.0);
    b_[0] = 1.0;
    b_[1] = -0.5;
    double four_n = 4.0;  // 4^n
    for (int n = 1; 2 * n <= capacity; ++n) {
        double sign = (n % 2 == 1) ? 1.0 : -1.0;
        b_[2 * n] = sign * 2.0 * n * t[n] / (four_n * (four_n - 1.0));
        four_n *= 4.0;
    }
}

double BernoulliCache::number(int n) const {
    if (n < 0 || n >= static_cast<int>(b_.size()))
        throw std::invalid_argument("BernoulliCache: index beyond capacity");
    return b_[n];
}

const BernoulliCache& bernoulli_cache() {
    static const BernoulliCache cache(64);
    return cache;
}

double bernoulli_number(int n) { return bernoulli_cache().number(n); }

double bernoulli_poly(int n, double x) {
    const BernoulliCache& cache = bernoulli_cache();
    if (n < 0 || n > cache.capacity())
        throw std::invalid_argument("bernoulli_poly: degree beyond cache capacity");
    NeumaierAcc acc;
    double binom = 1.0;  // C(n, k)
    for (int k = 0; k <= n; ++k) {
        if (k < 2 || k % 2 == 0) acc.add(binom * cache.number(k) * std::pow(x, n - k));
        binom = binom * (n - k) / (k + 1.0);
    }
    return acc.value();
}

double periodized_bernoulli(int n, double x) { return bernoulli_poly(n, x - std::floor(x)); }

// ---------------------------------------------------------------------------
// Compensated summation.
// ---------------------------------------------------------------------------

void NeumaierAcc::add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

double comp_sum(const std::vector<double>& terms) {
    NeumaierAcc acc;
    for (double t : terms) acc.add(t);
    return acc.value();
}

// ---------------------------------------------------------------------------
// Double-exponential quadrature. Finite intervals use the tanh-sinh map
//   x = c + r tanh((pi/2) sinh t),
// semi-infinite [lo, inf) the exp-sinh map
//   x = lo + exp((pi/2) sinh t).
// Both reduce the integral to a trapezoid rule in t whose error decays
// double-exponentially in 1/h for integrands analytic on the open interval.
// Nodes whose abscissa rounds onto an endpoint (or overflows) are skipped;
// their weights are below double underflow.
// ---------------------------------------------------------------------------

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kBaseStep = 0.25;

struct DeMap {
    double lo, hi;
    bool half_infinite;

    // Returns false when the node must be skipped.
    bool node(double t, double& x, double& w) const {
        double s = kHalfPi * std::sinh(t);
        if (half_infinite) {
            if (s > 709.0 || s < -745.0) return false;
            double e = std::exp(s);
            x = lo + e;
            w = kHalfPi * std::cosh(t) * e;
            return std::isfinite(x);
        }
        double r = 0.5 * (hi - lo);
        double e2 = std::exp(-2.0 * std::fabs(s));
        double delta = 2.0 * r * e2 / (1.0 + e2);  // distance to nearest endpoint
        if (delta == 0.0) return false;
        x = (s >= 0.0) ? hi - delta : lo + delta;
        if (x <= lo || x >= hi) return false;
        double sech = 2.0 * std::sqrt(e2) / (1.0 + e2);  // 1/cosh(s)
        w = r * kHalfPi * std::cosh(t) * sech * sech;
        return true;
    }
};

}  // namespace

EvalResult quad_de(const std::function<double(double)>& f, double lo, double hi,
                   const Ctrl& ctrl) {
    ctrl.validate();
    if (!(lo < hi)) throw std::invalid_argument("quad_de: requires lo < hi");

    DeMap map{lo, hi, std::isinf(hi)};
    const double tmax = map.half_infinite ? 6.81 : 6.2;
    const int max_level = std::min(ctrl.quad_levels, 12);

    EvalResult res;
    auto eval = [&](double t) {
        double x, w;
        if (!map.node(t, x, w)) return 0.0;
        double fx = f(x);
        if (std::isnan(fx)) throw std::domain_error("quad_de: integrand returned NaN");
        if (std::isinf(fx)) throw std::domain_error("quad_de: integrand returned Inf");
        ++res.nodes_used;
        double c = w * fx;
        return std::isfinite(c) ? c : 0.0;  // weight underflow only
    };

    double h = kBaseStep;
    NeumaierAcc acc;
    acc.add(eval(0.0));
    for (long k = 1; k * h <= tmax; ++k) {
        acc.add(eval(k * h));
        acc.add(eval(-k * h));
    }
    double prev = h * acc.value();

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (long k = 1; k * h <= tmax; k += 2) {
            acc.add(eval(k * h));
            acc.add(eval(-k * h));
        }
        double cur = h * acc.value();
        res.value = cur;
        res.err_est = std::fabs(cur - prev);
        prev = cur;
        if (res.err_est <= ctrl.target_tol) {
            res.converged = true;
            break;
        }
        // Machine floor reached: further refinement only accumulates roundoff.
        if (res.err_est <= 8e-17 * std::fabs(cur)) break;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Hurwitz zeta by Euler-Maclaurin. With T = N + q >= max(10, |s|),
//   zeta(s, q) = sum_{n<N} (n+q)^{-s} + T^{1-s}/(s-1) + T^{-s}/2
//              + sum_{k=1}^{10} B_{2k}/(2k)! (s)_{2k-1} T^{-s-2k+1},
// error below the first omitted correction.
// ---------------------------------------------------------------------------

namespace {

// Value and s-derivative of the K Bernoulli corrections plus the k=K+1 term
// magnitudes (for err_est). Rising factorial pairs (R, R') grown incrementally.
struct EmTail {
    double value = 0.0, deriv = 0.0;
    double next_value = 0.0, next_deriv = 0.0;
};

EmTail em_bernoulli_tail(double s, double t) {
    const int K = 10;
    EmTail out;
    double log_t = std::log(t);
    double r = 1.0, dr = 0.0;  // (s)_i and its derivative, i grown as needed
    int i = 0;
    double fact = 1.0;  // (2k)!
    for (int k = 1; k <= K + 1; ++k) {
        while (i < 2 * k - 1) {
            dr = dr * (s + i) + r;
            r = r * (s + i);
            ++i;
        }
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        double coef = bernoulli_number(2 * k) / fact;
        double p = std::pow(t, -s - 2 * k + 1);
        double v = coef * r * p;
        double dv = coef * (dr - r * log_t) * p;
        if (k <= K) {
            out.value += v;
            out.deriv += dv;
        } else {
            out.next_value = v;
            out.next_deriv = dv;
        }
    }
    return out;
}

long em_shift(double s, double q) {
    double lim = std::max(10.0, std::fabs(s));
    double need = lim - q;
    return need <= 0.0 ? 0 : static_cast<long>(std::ceil(need));
}

}  // namespace

EvalResult hurwitz_zeta(double s, double q, const Ctrl& ctrl) {
    ctrl.validate();
    if (s == 1.0) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (!(q > 0.0)) throw std::domain_error("hurwitz_zeta: requires q > 0");

    long n_shift = em_shift(s, q);
    NeumaierAcc acc;
    double scale = 0.0;  // roundoff floor for negative s, where addends cancel
    for (long n = 0; n < n_shift; ++n) {
        double term = std::pow(n + q, -s);
        scale = std::max(scale, std::fabs(term));
        acc.add(term);
    }
    double t = n_shift + q;
    double integral = std::pow(t, 1.0 - s) / (s - 1.0);
    scale = std::max(scale, std::fabs(integral));
    acc.add(integral);
    acc.add(0.5 * std::pow(t, -s));
    EmTail tail = em_bernoulli_tail(s, t);
    acc.add(tail.value);

    EvalResult res;
    res.value = acc.value();
    res.err_est = std::max(std::fabs(tail.next_value), 4.4e-16 * scale);
    res.terms_used = n_shift + 10;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

EvalResult zeta(double s, const Ctrl& ctrl) { return hurwitz_zeta(s, 1.0, ctrl); }

EvalResult zeta_prime(double s, const Ctrl& ctrl) {
    ctrl.validate();
    if (s == 1.0) throw std::domain_error("zeta_prime: pole at s = 1");

    long n_shift = em_shift(s, 1.0);
    NeumaierAcc acc;
    double scale = 0.0;
    for (long n = 1; n < n_shift; ++n) {
        double term = -std::log(n + 1.0) * std::pow(n + 1.0, -s);
        scale = std::max(scale, std::fabs(term));
        acc.add(term);
    }
    double t = n_shift + 1.0;
    double log_t = std::log(t);
    double integral = std::pow(t, 1.0 - s) / (s - 1.0);
    double d_integral = -integral * (log_t + 1.0 / (s - 1.0));
    scale = std::max(scale, std::fabs(d_integral));
    acc.add(d_integral);
    acc.add(-0.5 * log_t * std::pow(t, -s));
    EmTail tail = em_bernoulli_tail(s, t);
    acc.add(tail.deriv);

    EvalResult res;
    res.value = acc.value();
    res.err_est = std::max(std::fabs(tail.next_deriv), 4.4e-16 * scale);
    res.terms_used = n_shift + 10;
    res.converged = res.err_est <= ctrl.target_tol;
    return res;
}

// ---------------------------------------------------------------------------
// Trigonometric integrals. Below cisi_switch the defining power series are
// summed in double-double arithmetic: at x = 30 the largest term is ~2.7e10,
// so plain double would lose ten digits to cancellation. Above the switch the
// auxiliary asymptotic pair (f, g) is truncated at its smallest term, which is
// ~4e-14 at the switch point and falls off rapidly beyond.
// ---------------------------------------------------------------------------

namespace {

struct Dd {
    double hi, lo;
};

inline Dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd dd_add(Dd a, Dd b) {
    Dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    double hi = s.hi + s.lo;
    return {hi, s.lo - (hi - s.hi)};
}

inline Dd dd_mul_d(Dd a, double b) {
    double p = a.hi * b;
    double e = std::fma(a.hi, b, -p);
    e += a.lo * b;
    double hi = p + e;
    return {hi, e - (hi - p)};
}

inline Dd dd_mul(Dd a, Dd b) {
    double p = a.hi * b.hi;
    double e = std::fma(a.hi, b.hi, -p);
    e += a.hi * b.lo + a.lo * b.hi;
    double hi = p + e;
    return {hi, e - (hi - p)};
}

inline Dd dd_div_d(Dd a, double b) {
    double q1 = a.hi / b;
    double p = q1 * b;
    double e = std::fma(q1, b, -p);
    double q2 = ((a.hi - p) - e + a.lo) / b;
    double hi = q1 + q2;
    return {hi, q2 - (hi - q1)};
}

CiSi cisi_series(double x) {
    // x^2 held as an exact double-double so every recurrence factor is either
    // exact (small integers) or a full dd product; plain double x^2*(2k-1)
    // factors would seed each term with ~1e-16 relative error, which the
    // ~1e10 cancellation amplifies to ~1e-7 absolute.
    double p = x * x;
    Dd x2{p, std::fma(x, x, -p)};

    Dd term{x, 0.0};
    Dd ssum = term;
    for (long k = 1; k <= 400; ++k) {
        term = dd_mul_d(dd_mul(term, x2), -(2.0 * k - 1.0));
        term = dd_div_d(term, (2.0 * k) * (2.0 * k + 1.0) * (2.0 * k + 1.0));
        ssum = dd_add(ssum, term);
        if (std::fabs(term.hi) < 1e-22 * std::fabs(ssum.hi) + 1e-300) break;
    }

    Dd cterm = dd_div_d(x2, -4.0);
    Dd csum = cterm;
    for (long k = 2; k <= 400; ++k) {
        cterm = dd_mul_d(dd_mul(cterm, x2), -(2.0 * k - 2.0));
        cterm = dd_div_d(cterm, (2.0 * k) * (2.0 * k) * (2.0 * k - 1.0));
        csum = dd_add(csum, cterm);
        if (std::fabs(cterm.hi) < 1e-22 * (std::fabs(csum.hi) + 1.0)) break;
    }

    CiSi out;
    double log_x = std::log(x);
    out.si = ssum.hi + ssum.lo;
    out.ci = (euler_gamma + log_x) + (csum.hi + csum.lo);
    out.err_est = 4e-16 * std::max(1.0, std::fabs(log_x));
    return out;
}

}  // namespace

AuxFG cisi_aux(double x) {
    double x2 = x * x;
    AuxFG out;
    double tf = 1.0 / x;
    double tg = 1.0 / x2;
    for (long k = 0; k <= 200; ++k) {
        out.f += tf;
        out.g += tg;
        double nf = -tf * (2.0 * k + 1.0) * (2.0 * k + 2.0) / x2;
        double ng = -tg * (2.0 * k + 2.0) * (2.0 * k + 3.0) / x2;
        if (std::fabs(nf) >= std::fabs(tf) || std::fabs(ng) >= std::fabs(tg)) {
            out.err_est = std::fabs(nf) + std::fabs(ng);
            break;
        }
        tf = nf;
        tg = ng;
        out.err_est = std::fabs(nf) + std::fabs(ng);
    }
    return out;
}

CiSi cisi(double x, const Ctrl& ctrl) {
    ctrl.validate();
    if (!(x > 0.0)) throw std::domain_error("cisi: requires x > 0");
    if (x <= cisi_switch) return cisi_series(x);
    AuxFG a = cisi_aux(x);
    double sn = std::sin(x), cs = std::cos(x);
    CiSi out;
    out.ci = a.f * sn - a.g * cs;
    out.si = kHalfPi - (a.f * cs + a.g * sn);
    out.err_est = a.err_est;
    return out;
}

double ci(double x, const Ctrl& ctrl) {
    if (!(x > 0.0)) throw std::domain_error("ci: requires x > 0");
    return cisi(x, ctrl).ci;
}

double si(double x, const Ctrl& ctrl) {
    if (x < 0.0) throw std::domain_error("si: requires x >= 0");
    if (x == 0.0) return 0.0;
    return cisi(x, ctrl).si;
}

}  // namespace psirep
