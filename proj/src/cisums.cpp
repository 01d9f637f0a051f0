// Sums of the cosine integral against power, alternating, odd-denominator and
// geometric weights, each evaluated two independent ways: a direct partial sum
// with an asymptotic continuation of Ci, and a zeta/Bernoulli closed form whose
// remainder is a v-integral of the matching cosine kernel. Agreement of the two
// routes cross-checks the kernel identities and the quadrature at once.

#include "psirep/cisums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "kernels.hpp"

namespace psirep {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kZeta2 = kPi * kPi / 6.0;
constexpr double kZeta4 = kPi * kPi * kPi * kPi / 90.0;

bool is_integer(double a) { return std::floor(a) == a; }

void check_beta(double beta, const char* who) {
    if (!(beta > 0.0) || beta > kTwoPi) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s: requires 0 < beta <= 2 pi", who);
        throw std::domain_error(buf);
    }
}

double sign_pm(long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Weight w_n of a case together with the envelope |w_n| <= coef * n^{-decay}
// used by the oracle's tail bounds. PowerZ is geometric and handled apart.
struct PowerWeight {
    double decay = 2.0;
    double coef = 1.0;
    bool alternating = false;
};

PowerWeight power_weight(const CaseId& id) {
    PowerWeight w;
    switch (id.kind) {
        case CaseKind::P2: w.decay = 2.0; break;
        case CaseKind::P2Alt: w.decay = 2.0; w.alternating = true; break;
        case CaseKind::P4: w.decay = 4.0; break;
        case CaseKind::P4Alt: w.decay = 4.0; w.alternating = true; break;
        case CaseKind::Even2k: w.decay = 2.0 * id.k; break;
        case CaseKind::Even2kAlt: w.decay = 2.0 * id.k; w.alternating = true; break;
        case CaseKind::RealA: w.decay = id.a; break;
        case CaseKind::RealAAlt: w.decay = id.a; w.alternating = true; break;
        case CaseKind::Odd: w.decay = id.a; w.coef = std::pow(2.0, -id.a); break;
        case CaseKind::OddAlt:
            w.decay = id.a;
            w.coef = std::pow(2.0, -id.a);
            w.alternating = true;
            break;
        case CaseKind::PowerZ: break;
    }
    return w;
}

double weight_term(const CaseId& id, long n, double zpow) {
    double dn = static_cast<double>(n);
    switch (id.kind) {
        case CaseKind::P2: return 1.0 / (dn * dn);
        case CaseKind::P2Alt: return sign_pm(n) / (dn * dn);
        case CaseKind::P4: return 1.0 / (dn * dn * dn * dn);
        case CaseKind::P4Alt: return sign_pm(n) / (dn * dn * dn * dn);
        case CaseKind::Even2k: return std::pow(dn, -2.0 * id.k);
        case CaseKind::Even2kAlt: return sign_pm(n) * std::pow(dn, -2.0 * id.k);
        case CaseKind::RealA: return std::pow(dn, -id.a);
        case CaseKind::RealAAlt: return sign_pm(n) * std::pow(dn, -id.a);
        case CaseKind::Odd: return std::pow(2.0 * dn + 1.0, -id.a);
        case CaseKind::OddAlt: return sign_pm(n) * std::pow(2.0 * dn + 1.0, -id.a);
        case CaseKind::PowerZ: return zpow / (dn * (dn + 1.0));
    }
    return 0.0;
}

}  // namespace

std::string CaseId::label() const {
    char buf[64];
    switch (kind) {
        case CaseKind::P2: return "Ci/n^2";
        case CaseKind::P2Alt: return "(-1)^n Ci/n^2";
        case CaseKind::P4: return "Ci/n^4";
        case CaseKind::P4Alt: return "(-1)^n Ci/n^4";
        case CaseKind::Even2k:
            std::snprintf(buf, sizeof buf, "Ci/n^%d", 2 * k);
            return buf;
        case CaseKind::Even2kAlt:
            std::snprintf(buf, sizeof buf, "(-1)^n Ci/n^%d", 2 * k);
            return buf;
        case CaseKind::RealA:
            std::snprintf(buf, sizeof buf, "Ci/n^%g", a);
            return buf;
        case CaseKind::RealAAlt:
            std::snprintf(buf, sizeof buf, "(-1)^n Ci/n^%g", a);
            return buf;
        case CaseKind::Odd:
            std::snprintf(buf, sizeof buf, "Ci/(2n+1)^%g", a);
            return buf;
        case CaseKind::OddAlt:
            std::snprintf(buf, sizeof buf, "(-1)^n Ci/(2n+1)^%g", a);
            return buf;
        case CaseKind::PowerZ:
            std::snprintf(buf, sizeof buf, "z^n Ci/(n(n+1)) z=%g", z);
            return buf;
    }
    return "?";
}

void CaseId::validate() const {
    switch (kind) {
        case CaseKind::Even2k:
        case CaseKind::Even2kAlt:
            if (k < 1) throw std::domain_error("CaseId: requires k >= 1");
            break;
        case CaseKind::RealA:
        case CaseKind::RealAAlt:
        case CaseKind::Odd:
        case CaseKind::OddAlt:
            if (!(a > 1.0)) throw std::domain_error("CaseId: requires a > 1");
            break;
        case CaseKind::PowerZ:
            if (!(std::fabs(z) <= 1.0)) throw std::domain_error("CaseId: requires |z| <= 1");
            break;
        default:
            break;
    }
}

EvalResult ci_sum_oracle(double beta, const CaseId& id, const Ctrl& ctrl) {
    ctrl.validate();
    id.validate();
    check_beta(beta, "ci_sum_oracle");
    if (id.kind == CaseKind::PowerZ && id.z == 0.0) return {0.0, 0.0, 0, 0, true};

    const bool geometric = (id.kind == CaseKind::PowerZ);
    const double az = geometric ? std::fabs(id.z) : 0.0;
    PowerWeight pw = power_weight(id);
    if (geometric) pw.alternating = (id.z < 0.0);

    NeumaierAcc acc;
    double err = 0.0;
    double scale = 0.0;
    double zpow = 1.0;
    long n = 0;
    while (n < ctrl.max_terms) {
        ++n;
        if (geometric) zpow = (n == 1) ? id.z : zpow * id.z;
        double w = weight_term(id, n, zpow);
        double x = beta * n;
        // |Ci(x)| <= 2/x once x is past a few; safe to stop when the term
        // envelope is far below the accumulated scale.
        if (n > 64 && std::fabs(w) * (2.0 / x) < 1e-18 * scale) {
            --n;
            break;
        }
        CiSi v = cisi(x, ctrl);
        double term = w * v.ci;
        acc.add(term);
        err += std::fabs(w) * v.err_est;
        scale = std::max(scale, std::fabs(term));
    }
    long n_part = n;

    // Two-term asymptotic continuation Ci(x) ~ sin x / x - cos x / x^2.
    const long cap = n_part + 400000;
    const double cut = std::max(ctrl.target_tol * 1e-4, 1e-18);
    if (geometric) zpow = std::pow(id.z, static_cast<double>(n_part));
    long m = n_part + 1;
    while (m <= cap) {
        if (geometric) zpow *= id.z;
        double w = weight_term(id, m, zpow);
        double x = beta * m;
        if (std::fabs(w) / x * (1.0 + 1.0 / x) < cut) break;
        acc.add(w * (std::sin(x) / x - std::cos(x) / (x * x)));
        ++m;
    }

    // Remainder of the sin-part from index m on: absolute bound, an
    // Abel/Dirichlet-kernel bound, and a near-resonance bound (the partial
    // sums of sin(beta n), resp. (-1)^n sin(beta n), are held by
    // 1/|sin(beta/2)|, resp. 1/|cos(beta/2)|, and collapse like |sin(beta/2)| n
    // next to the lattice). The smallest applicable one goes into err_est.
    double dm = static_cast<double>(m);
    double res = pw.alternating ? std::fabs(std::cos(0.5 * beta)) : std::fabs(std::sin(0.5 * beta));
    double env_m, tail_w, tail_wn, tail_wn2, third;
    if (geometric && az < 1.0) {
        double g = std::pow(az, dm) / (1.0 - az);
        env_m = std::pow(az, dm) / (dm * (dm + 1.0));
        tail_w = g / (dm * (dm + 1.0));
        tail_wn = g / (dm * dm * (dm + 1.0));
        tail_wn2 = tail_wn / dm;
        double np1 = static_cast<double>(n_part + 1);
        third = std::pow(az, np1) / (1.0 - az) / (np1 * np1 * (np1 + 1.0)) / (np1 * np1);
    } else {
        // |z| = 1 collapses onto the plain 1/(n(n+1)) < n^{-2} envelope.
        double p = geometric ? 2.0 : pw.decay;
        double coef = geometric ? 1.0 : pw.coef;
        env_m = coef * std::pow(dm, -p);
        tail_w = coef * std::pow(dm, 1.0 - p) / (p - 1.0);
        tail_wn = coef * std::pow(dm, -p) / p;
        tail_wn2 = coef * std::pow(dm, -p - 1.0) / (p + 1.0);
        double np1 = static_cast<double>(n_part + 1);
        third = coef * std::pow(np1, -p - 2.0) / (p + 2.0);
    }
    double abs_b = tail_wn / beta;
    double dir_b = 2.0 * env_m / (beta * dm) / std::max(res, 1e-300);
    double lat_b = 2.0 * res / beta * tail_w;
    err += std::min(abs_b, std::min(dir_b, lat_b));
    err += tail_wn2 / (beta * beta);           // cos-part, absolute
    err += 4.0 * third / (beta * beta * beta);  // omitted asymptotic orders

    EvalResult out;
    out.value = acc.value();
    out.err_est = err + 1e-16 * (1.0 + std::fabs(out.value));
    out.terms_used = m - 1;
    out.nodes_used = 0;
    out.converged = out.err_est <= ctrl.target_tol;
    return out;
}

namespace {

// Shared assembly: quadrature of num(v)/v over (0,1), split at the kernel kink
// v = pi/beta when the alternating argument wraps. The numerators all vanish
// as v -> 0 analytically, but in floats they settle on a small constant (the
// kernel's own evaluation noise), and dividing that by v across the
// double-exponential nodes integrates to noise * ln(1/v_min). Subtracting the
// numerator's computed v -> 0 value cancels this node-by-node.
EvalResult brace_quad(const std::function<double(double)>& num, double beta, bool split,
                      const Ctrl& ctrl) {
    Ctrl qc = ctrl;
    qc.target_tol = std::min(ctrl.target_tol, 1e-12);
    const double floor0 = num(1e-30);
    // Below v ~ 1e-280 the arguments have saturated, the difference is
    // exactly zero, and v itself heads into subnormals; cut it off.
    auto f = [&num, floor0](double v) {
        return v < 1e-280 ? 0.0 : (num(v) - floor0) / v;
    };
    EvalResult total{};
    if (split && beta > kPi) {
        double s = kPi / beta;
        EvalResult lo = quad_de(f, 0.0, s, qc);
        EvalResult hi = quad_de(f, s, 1.0, qc);
        total.value = lo.value + hi.value;
        total.err_est = lo.err_est + hi.err_est;
        total.nodes_used = lo.nodes_used + hi.nodes_used;
        total.converged = lo.converged && hi.converged;
    } else {
        total = quad_de(f, 0.0, 1.0, qc);
    }
    return total;
}

EvalResult even_closed(double beta, int k, const Ctrl& ctrl) {
    if (k < 1) throw std::domain_error("ci_sum_closed: requires k >= 1");
    int two_k = 2 * k;
    EvalResult zk = zeta(static_cast<double>(two_k), ctrl);
    EvalResult zpk = zeta_prime(static_cast<double>(two_k), ctrl);
    double pref = ((k % 2 == 1) ? 1.0 : -1.0) * std::pow(kTwoPi, two_k) /
                  (2.0 * std::tgamma(two_k + 1.0));
    double b2k = bernoulli_number(two_k);
    EvalResult quad = brace_quad(
        [&](double v) { return bernoulli_poly(two_k, beta * v / kTwoPi) - b2k; }, beta,
        false, ctrl);
    EvalResult out;
    out.value = (euler_gamma + std::log(beta)) * zk.value - zpk.value + pref * quad.value;
    out.err_est = 2.0 * zk.err_est + zpk.err_est + std::fabs(pref) * quad.err_est +
                  1e-15 * (1.0 + std::fabs(out.value));
    out.terms_used = zk.terms_used;
    out.nodes_used = quad.nodes_used;
    out.converged = out.err_est <= ctrl.target_tol;
    return out;
}

EvalResult even_alt_closed(double beta, int k, const Ctrl& ctrl) {
    if (k < 1) throw std::domain_error("ci_sum_closed: requires k >= 1");
    int two_k = 2 * k;
    EvalResult zk = zeta(static_cast<double>(two_k), ctrl);
    EvalResult zpk = zeta_prime(static_cast<double>(two_k), ctrl);
    double pref = ((k % 2 == 1) ? 1.0 : -1.0) * std::pow(kTwoPi, two_k) /
                  (2.0 * std::tgamma(two_k + 1.0));
    double half = bernoulli_poly(two_k, 0.5);
    double p21 = std::pow(2.0, 1.0 - two_k);
    EvalResult quad = brace_quad(
        [&](double v) {
            return periodized_bernoulli(two_k, (beta * v + kPi) / kTwoPi) - half;
        },
        beta, true, ctrl);
    EvalResult out;
    out.value = (euler_gamma + std::log(beta)) * (p21 - 1.0) * zk.value +
                (1.0 - p21) * zpk.value + p21 * std::log(2.0) * zk.value + pref * quad.value;
    out.err_est = 2.0 * zk.err_est + zpk.err_est + std::fabs(pref) * quad.err_est +
                  1e-15 * (1.0 + std::fabs(out.value));
    out.terms_used = zk.terms_used;
    out.nodes_used = quad.nodes_used;
    out.converged = out.err_est <= ctrl.target_tol;
    return out;
}

EvalResult real_closed(double beta, double a, bool alt, const Ctrl& ctrl) {
    EvalResult za = zeta(a, ctrl);
    EvalResult zpa = zeta_prime(a, ctrl);
    double pref = std::pow(kTwoPi, a) / (4.0 * std::tgamma(a) * std::cos(0.5 * kPi * a));
    Ctrl hc = ctrl;
    hc.target_tol = std::min(ctrl.target_tol, 1e-12);
    auto hz = [&](double q) { return hurwitz_zeta(1.0 - a, q, hc).value; };
    double p21 = std::pow(2.0, 1.0 - a);

    EvalResult quad;
    double constant;
    if (!alt) {
        quad = brace_quad(
            [&](double v) {
                double q = beta * v / kTwoPi;
                return pref * (hz(1.0 - q) + hz(q)) - za.value;
            },
            beta, false, ctrl);
        constant = (euler_gamma + std::log(beta)) * za.value - zpa.value;
    } else {
        quad = brace_quad(
            [&](double v) {
                double x = beta * v;
                if (x > kPi) x = kTwoPi - x;
                return pref * (hz((kPi - x) / kTwoPi) + hz((kPi + x) / kTwoPi)) +
                       (1.0 - p21) * za.value;
            },
            beta, true, ctrl);
        constant = (euler_gamma + std::log(beta)) * (p21 - 1.0) * za.value +
                   (1.0 - p21) * zpa.value + p21 * za.value * std::log(2.0);
    }
    EvalResult out;
    out.value = constant + quad.value;
    out.err_est = 2.0 * za.err_est + zpa.err_est + quad.err_est +
                  5e-12 * std::fabs(pref) + 1e-13 * (1.0 + std::fabs(quad.value));
    out.terms_used = za.terms_used;
    out.nodes_used = quad.nodes_used;
    out.converged = out.err_est <= ctrl.target_tol;
    return out;
}

EvalResult odd_closed(double beta, double a, bool alt, const Ctrl& ctrl) {
    if (is_integer(a)) throw std::domain_error("ci_sum_closed: cosecant pole at integer a");
    EvalResult za = zeta(a, ctrl);
    double pref = std::pow(kTwoPi, a) / (4.0 * std::tgamma(a) * std::sin(kPi * a));
    Ctrl hc = ctrl;
    hc.target_tol = std::min(ctrl.target_tol, 1e-12);
    auto hz = [&](double q) { return hurwitz_zeta(1.0 - a, q, hc).value; };
    std::pair<EvalResult, EvalResult> st = st_series(a, ctrl);

    EvalResult quad;
    double constant;
    double series_err;
    if (!alt) {
        double lam = (1.0 - std::pow(2.0, -a)) * za.value;  // sum over odd denominators
        quad = brace_quad(
            [&](double v) {
                double x = beta * v;
                double t1 = -std::sin(0.5 * (x + kPi * a)) *
                            (hz((x + kTwoPi) / (2.0 * kTwoPi)) - hz(x / (2.0 * kTwoPi)));
                double t2 = std::sin(0.5 * (x - kPi * a)) *
                            (hz((kTwoPi - x) / (2.0 * kTwoPi)) - hz(1.0 - x / (2.0 * kTwoPi)));
                return pref * (t1 + t2) - lam;
            },
            beta, false, ctrl);
        constant = (euler_gamma + std::log(beta)) * (lam - 1.0) + st.first.value;
        series_err = st.first.err_est;
    } else {
        EvalResult h14 = hurwitz_zeta(a, 0.25, ctrl);
        EvalResult h34 = hurwitz_zeta(a, 0.75, ctrl);
        double dir_beta = std::pow(4.0, -a) * (h14.value - h34.value);  // Dirichlet beta(a)
        quad = brace_quad(
            [&](double v) {
                double x = beta * v;
                if (x > kPi) x = kTwoPi - x;
                double t1 = std::cos(0.5 * (x + kPi * a)) *
                            (hz((x + kPi) / (2.0 * kTwoPi)) - hz((x + 3.0 * kPi) / (2.0 * kTwoPi)));
                double t2 = std::cos(0.5 * (x - kPi * a)) *
                            (hz((kPi - x) / (2.0 * kTwoPi)) - hz((3.0 * kPi - x) / (2.0 * kTwoPi)));
                return pref * (t1 + t2) - dir_beta;
            },
            beta, true, ctrl);
        constant = (euler_gamma + std::log(beta)) * (dir_beta - 1.0) + st.second.value;
        series_err = st.second.err_est + h14.err_est + h34.err_est;
    }
    EvalResult out;
    out.value = constant + quad.value;
    out.err_est = 2.0 * za.err_est + series_err + quad.err_est +
                  5e-12 * std::fabs(pref) + 1e-13 * (1.0 + std::fabs(quad.value));
    out.terms_used = alt ? st.second.terms_used : st.first.terms_used;
    out.nodes_used = quad.nodes_used;
    out.converged = out.err_est <= ctrl.target_tol;
    return out;
}

EvalResult power_z_closed(double beta, double z, const Ctrl& ctrl) {
    if (z == 0.0) return {0.0, 0.0, 0, 0, true};

    // sum_{n>=2} z^n ln n / (n (n+1)); geometric for |z| < 1, Euler-Maclaurin
    // tail at z = 1 and iterated averaging at z = -1.
    NeumaierAcc lacc;
    double lerr = 0.0;
    long lterms = 0;
    if (z == 1.0) {
        const long N = 20000;
        for (long nn = 2; nn <= N; ++nn) {
            double dn = static_cast<double>(nn);
            lacc.add(std::log(dn) / (dn * (dn + 1.0)));
        }
        auto f = [](double x) { return std::log(x) / (x * (x + 1.0)); };
        auto fp = [](double x) {
            double u = 1.0 / x - 1.0 / (x + 1.0);
            return u / x - std::log(x) * (1.0 / (x * x) - 1.0 / ((x + 1.0) * (x + 1.0)));
        };
        double M = static_cast<double>(N + 1);
        Ctrl qc = ctrl;
        qc.target_tol = std::min(ctrl.target_tol, 1e-13);
        EvalResult tail = quad_de(f, M, inf, qc);
        lacc.add(tail.value + 0.5 * f(M) - fp(M) / 12.0);
        double h = 64.0;
        double f3 = (fp(M + h) - 2.0 * fp(M) + fp(M - h)) / (h * h);
        lerr = tail.err_est + std::fabs(f3) / 720.0;
        lterms = N;
    } else if (z == -1.0) {
        std::vector<double> ps;
        NeumaierAcc t_acc;
        const long n0 = 32, kAvg = 48;
        for (long nn = 2; nn <= n0 + kAvg; ++nn) {
            double dn = static_cast<double>(nn);
            t_acc.add(sign_pm(nn) * std::log(dn) / (dn * (dn + 1.0)));
            if (nn >= n0) ps.push_back(t_acc.value());
        }
        double spread = 0.0;
        while (ps.size() > 1) {
            if (ps.size() == 2) spread = std::fabs(ps[0] - ps[1]);
            for (size_t i = 0; i + 1 < ps.size(); ++i) ps[i] = 0.5 * (ps[i] + ps[i + 1]);
            ps.pop_back();
        }
        lacc.add(ps[0]);
        lerr = 0.5 * spread + 1e-16;
        lterms = n0 + kAvg;
    } else {
        double az = std::fabs(z);
        double zpow = z;
        long nn = 1;
        while (nn < std::max<long>(ctrl.max_terms, 4000)) {
            ++nn;
            zpow *= z;
            double dn = static_cast<double>(nn);
            double term = zpow * std::log(dn) / (dn * (dn + 1.0));
            lacc.add(term);
            if (std::fabs(term) < 1e-18 * (1.0 + std::fabs(lacc.value()))) break;
        }
        double dn = static_cast<double>(nn);
        lerr = 1e-17 + std::pow(az, dn + 1.0) / (1.0 - az) * std::log(dn) / (dn * dn);
        lterms = nn;
    }

    double lz = (z == 1.0) ? 0.0 : std::log1p(-z);
    double coef = (z == 1.0) ? 1.0 : 1.0 - lz + lz / z;
    double ct = (z == 1.0) ? 0.0 : (z - 1.0) * lz;
    EvalResult quad = brace_quad(
        [&](double v) {
            double x = beta * v;
            double c = std::cos(x);
            double s = std::sin(x);
            double r = 1.0 - 2.0 * z * c + z * z;
            double lt = (r > 0.0) ? -0.5 * (z - c) * std::log(r) : 0.0;
            double at = s * std::atan(z * s / (1.0 - z * c));
            return ct + lt - at;
        },
        beta, true, ctrl);

    EvalResult out;
    out.value = (euler_gamma + std::log(beta)) * coef + lacc.value() + quad.value / z;
    out.err_est = quad.err_est / std::fabs(z) + lerr + 1e-15 * (1.0 + std::fabs(out.value));
    out.terms_used = lterms;
    out.nodes_used = quad.nodes_used;
    out.converged = out.err_est <= ctrl.target_tol;
    return out;
}

EvalResult poly_result(double value, const EvalResult& zp, const Ctrl& ctrl) {
    EvalResult out;
    out.value = value;
    out.err_est = zp.err_est + 1e-15 * (1.0 + std::fabs(value));
    out.terms_used = zp.terms_used;
    out.nodes_used = 0;
    out.converged = out.err_est <= ctrl.target_tol;
    return out;
}

}  // namespace

EvalResult ci_sum_closed(double beta, const CaseId& id, const Ctrl& ctrl) {
    ctrl.validate();
    id.validate();
    check_beta(beta, "ci_sum_closed");
    double lb = std::log(beta);
    switch (id.kind) {
        case CaseKind::P2: {
            EvalResult zp = zeta_prime(2.0, ctrl);
            double v = (euler_gamma + lb) * kZeta2 - zp.value - 0.5 * kPi * beta +
                       beta * beta / 8.0;
            return poly_result(v, zp, ctrl);
        }
        case CaseKind::P2Alt: {
            if (beta > kPi) return even_alt_closed(beta, 1, ctrl);
            EvalResult zp = zeta_prime(2.0, ctrl);
            double v = 0.5 * (std::log(2.0) - euler_gamma - lb) * kZeta2 + 0.5 * zp.value +
                       beta * beta / 8.0;
            return poly_result(v, zp, ctrl);
        }
        case CaseKind::P4: {
            EvalResult zp = zeta_prime(4.0, ctrl);
            double v = (euler_gamma + lb) * kZeta4 - zp.value +
                       beta * beta / 12.0 *
                           (-beta * beta / 16.0 + kPi * beta / 3.0 - kPi * kPi / 2.0);
            return poly_result(v, zp, ctrl);
        }
        case CaseKind::P4Alt: {
            if (beta > kPi) return even_alt_closed(beta, 2, ctrl);
            EvalResult zp = zeta_prime(4.0, ctrl);
            double v = (std::log(2.0) - 7.0 * euler_gamma - 7.0 * lb) * kZeta4 / 8.0 +
                       7.0 / 8.0 * zp.value - std::pow(beta, 4) / 192.0 +
                       kZeta2 * beta * beta / 8.0;
            return poly_result(v, zp, ctrl);
        }
        case CaseKind::Even2k:
            return even_closed(beta, id.k, ctrl);
        case CaseKind::Even2kAlt:
            return even_alt_closed(beta, id.k, ctrl);
        case CaseKind::RealA:
        case CaseKind::RealAAlt: {
            bool alt = (id.kind == CaseKind::RealAAlt);
            if (is_integer(id.a)) {
                long ia = static_cast<long>(id.a);
                if (ia % 2 != 0)
                    throw std::domain_error("ci_sum_closed: secant pole at odd integer a");
                int k = static_cast<int>(ia / 2);
                return alt ? even_alt_closed(beta, k, ctrl) : even_closed(beta, k, ctrl);
            }
            return real_closed(beta, id.a, alt, ctrl);
        }
        case CaseKind::Odd:
            return odd_closed(beta, id.a, false, ctrl);
        case CaseKind::OddAlt:
            return odd_closed(beta, id.a, true, ctrl);
        case CaseKind::PowerZ:
            return power_z_closed(beta, id.z, ctrl);
    }
    throw std::domain_error("ci_sum_closed: unknown case");
}

IdentityReport ci_sum_identity(double beta, const CaseId& id, const Ctrl& ctrl) {
    IdentityReport rep;
    rep.label = id.label();
    rep.beta = beta;
    rep.lhs = ci_sum_oracle(beta, id, ctrl);
    rep.rhs = ci_sum_closed(beta, id, ctrl);
    rep.residual = rep.lhs.value - rep.rhs.value;
    rep.pass = std::fabs(rep.residual) <=
               std::max(ctrl.target_tol, 4.0 * (rep.lhs.err_est + rep.rhs.err_est));
    return rep;
}

std::pair<EvalResult, EvalResult> st_series(double a, const Ctrl& ctrl) {
    ctrl.validate();
    if (!(a > 1.0)) throw std::domain_error("st_series: requires a > 1");

    // S: partial sum plus Euler-Maclaurin tail through the f'/12 term; the
    // first omitted correction f'''/720 enters the error estimate.
    long n_part = std::min<long>(ctrl.max_terms, 20000);
    if (n_part < 4) n_part = 4;
    NeumaierAcc part;
    for (long n = 2; n <= n_part; ++n)
        part.add(std::log(static_cast<double>(n)) * std::pow(2.0 * n + 1.0, -a));
    auto f = [a](double x) { return std::log(x) * std::pow(2.0 * x + 1.0, -a); };
    auto fp = [a](double x) {
        return std::pow(2.0 * x + 1.0, -a) / x -
               2.0 * a * std::log(x) * std::pow(2.0 * x + 1.0, -a - 1.0);
    };
    double M = static_cast<double>(n_part + 1);
    Ctrl qc = ctrl;
    qc.target_tol = std::min(ctrl.target_tol, 1e-13);
    EvalResult tail = quad_de(f, M, inf, qc);
    double h = 64.0;
    double f3 = (fp(M + h) - 2.0 * fp(M) + fp(M - h)) / (h * h);
    EvalResult s;
    s.value = part.value() + tail.value + 0.5 * f(M) - fp(M) / 12.0;
    s.err_est = tail.err_est + std::fabs(f3) / 720.0 + 1e-16 * (1.0 + std::fabs(s.value));
    s.terms_used = n_part;
    s.nodes_used = tail.nodes_used;
    s.converged = s.err_est <= ctrl.target_tol;

    // T: iterated averaging of the alternating partial sums; the spread of the
    // last two-column stage bounds the extrapolation error.
    std::vector<double> ps;
    NeumaierAcc t_acc;
    const long n0 = 32, k_avg = 48;
    for (long n = 2; n <= n0 + k_avg; ++n) {
        double term = std::log(static_cast<double>(n)) * std::pow(2.0 * n + 1.0, -a);
        t_acc.add(sign_pm(n) * term);
        if (n >= n0) ps.push_back(t_acc.value());
    }
    double spread = 0.0;
    while (ps.size() > 1) {
        if (ps.size() == 2) spread = std::fabs(ps[0] - ps[1]);
        for (size_t i = 0; i + 1 < ps.size(); ++i) ps[i] = 0.5 * (ps[i] + ps[i + 1]);
        ps.pop_back();
    }
    EvalResult t;
    t.value = ps[0];
    t.err_est = 0.5 * spread + 1e-16 * (1.0 + std::fabs(t.value));
    t.terms_used = n0 + k_avg;
    t.nodes_used = 0;
    t.converged = t.err_est <= ctrl.target_tol;
    return {s, t};
}

double fourier_cos_closed(double x, const FourierKind& kind) {
    if (!(x >= 0.0) || x > kTwoPi)
        throw std::domain_error("fourier_cos_closed: requires 0 <= x <= 2 pi");
    Ctrl c;
    c.target_tol = 1e-13;
    auto hz = [&](double s, double q) { return hurwitz_zeta(s, q, c).value; };
    auto require_real_a = [](double a) {
        if (!(a > 1.0)) throw std::domain_error("fourier_cos_closed: requires a > 1");
        if (is_integer(a))
            throw std::domain_error("fourier_cos_closed: pole at integer a");
    };
    using Tag = FourierKind::Tag;
    switch (kind.tag) {
        case Tag::Pow4:
            return -std::pow(x, 4) / 48.0 + kPi * std::pow(x, 3) / 12.0 -
                   kPi * kPi * x * x / 12.0 + kZeta4;
        case Tag::Pow4Alt: {
            double u = (x > kPi) ? kTwoPi - x : x;
            return -std::pow(u, 4) / 48.0 + kPi * kPi * u * u / 24.0 - 7.0 * kZeta4 / 8.0;
        }
        case Tag::Even2k: {
            if (kind.k < 1) throw std::domain_error("fourier_cos_closed: requires k >= 1");
            int two_k = 2 * kind.k;
            double pref = ((kind.k % 2 == 1) ? 1.0 : -1.0) * std::pow(kTwoPi, two_k) /
                          (2.0 * std::tgamma(two_k + 1.0));
            return pref * bernoulli_poly(two_k, x / kTwoPi);
        }
        case Tag::Even2kAlt: {
            if (kind.k < 1) throw std::domain_error("fourier_cos_closed: requires k >= 1");
            int two_k = 2 * kind.k;
            double pref = ((kind.k % 2 == 1) ? 1.0 : -1.0) * std::pow(kTwoPi, two_k) /
                          (2.0 * std::tgamma(two_k + 1.0));
            return pref * periodized_bernoulli(two_k, (x + kPi) / kTwoPi);
        }
        case Tag::RealA: {
            require_real_a(kind.a);
            double a = kind.a;
            if (x == 0.0 || x == kTwoPi) return std::cos(kind.y) * zeta(a, c).value;
            double pref = std::pow(kTwoPi, a) / (2.0 * std::tgamma(a) * std::sin(kPi * a));
            return pref * (std::sin(kind.y + 0.5 * kPi * a) * hz(1.0 - a, 1.0 - x / kTwoPi) -
                           std::sin(kind.y - 0.5 * kPi * a) * hz(1.0 - a, x / kTwoPi));
        }
        case Tag::RealAAlt: {
            require_real_a(kind.a);
            double a = kind.a;
            if (x == kPi) return std::cos(kind.y) * zeta(a, c).value;
            double xe = x, ye = kind.y;
            if (xe > kPi) {
                xe = kTwoPi - xe;  // cos(k(2pi - x) + y) = cos(kx - y)
                ye = -ye;
            }
            double pref = std::pow(kTwoPi, a) / (2.0 * std::tgamma(a) * std::sin(kPi * a));
            return pref * (std::sin(ye + 0.5 * kPi * a) * hz(1.0 - a, (kPi - xe) / kTwoPi) -
                           std::sin(ye - 0.5 * kPi * a) * hz(1.0 - a, (kPi + xe) / kTwoPi));
        }
        case Tag::Odd: {
            require_real_a(kind.a);
            double a = kind.a;
            if (x == 0.0 || x == kTwoPi) return (1.0 - std::pow(2.0, -a)) * zeta(a, c).value;
            double pref = std::pow(kTwoPi, a) / (4.0 * std::tgamma(a) * std::sin(kPi * a));
            double fp = 2.0 * kTwoPi;
            double t1 = -std::sin(0.5 * (x + kPi * a)) *
                        (hz(1.0 - a, (x + kTwoPi) / fp) - hz(1.0 - a, x / fp));
            double t2 = std::sin(0.5 * (x - kPi * a)) *
                        (hz(1.0 - a, (kTwoPi - x) / fp) - hz(1.0 - a, 1.0 - x / fp));
            return pref * (t1 + t2);
        }
        case Tag::OddAlt: {
            require_real_a(kind.a);
            double a = kind.a;
            if (x == kPi) return (1.0 - std::pow(2.0, -a)) * zeta(a, c).value;
            double u = (x > kPi) ? kTwoPi - x : x;
            double pref = std::pow(kTwoPi, a) / (4.0 * std::tgamma(a) * std::sin(kPi * a));
            double fp = 2.0 * kTwoPi;
            double t1 = std::cos(0.5 * (u + kPi * a)) *
                        (hz(1.0 - a, (u + kPi) / fp) - hz(1.0 - a, (u + 3.0 * kPi) / fp));
            double t2 = std::cos(0.5 * (u - kPi * a)) *
                        (hz(1.0 - a, (kPi - u) / fp) - hz(1.0 - a, (3.0 * kPi - u) / fp));
            return pref * (t1 + t2);
        }
        case Tag::PowerZ: {
            double z = kind.z;
            if (!(std::fabs(z) <= 1.0))
                throw std::domain_error("fourier_cos_closed: requires |z| <= 1");
            if (z == 0.0) return 0.0;
            if (x == 0.0 || x == kTwoPi) {
                if (z == 1.0) return 1.0;
                return 1.0 + (1.0 - z) * std::log1p(-z) / z;
            }
            double cx = std::cos(x);
            double sx = std::sin(x);
            double r = 1.0 - 2.0 * z * cx + z * z;
            double lt = (r > 0.0) ? std::log(r) : 0.0;
            return 1.0 - 0.5 / z * (z - cx) * lt - sx / z * std::atan(z * sx / (1.0 - z * cx));
        }
    }
    throw std::domain_error("fourier_cos_closed: unknown kind");
}

}  // namespace psirep
