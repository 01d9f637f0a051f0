#pragma once
// Families of cosine-integral sums sum w_n Ci(beta n) over various weights
// w_n, each evaluated two independent ways: a direct partial sum with
// asymptotic tail (the oracle) and a zeta/Bernoulli closed form with a
// v-integral remainder.

#include "psirep/numkernel.hpp"

#include <string>
#include <utility>

namespace psirep {

enum class CaseKind {
    P2,         // w_n = 1/n^2
    P2Alt,      // w_n = (-1)^n / n^2
    P4,         // w_n = 1/n^4
    P4Alt,      // w_n = (-1)^n / n^4
    Even2k,     // w_n = 1/n^{2k}
    Even2kAlt,  // w_n = (-1)^n / n^{2k}
    RealA,      // w_n = 1/n^a, real a > 1
    RealAAlt,   // w_n = (-1)^n / n^a
    Odd,        // w_n = 1/(2n+1)^a
    OddAlt,     // w_n = (-1)^n / (2n+1)^a
    PowerZ,     // w_n = z^n / (n (n+1)), |z| <= 1
};

struct CaseId {
    CaseKind kind = CaseKind::P2;
    int k = 1;       // Even2k / Even2kAlt
    double a = 2.0;  // RealA / RealAAlt / Odd / OddAlt
    double z = 0.5;  // PowerZ

    static CaseId p2() { return {CaseKind::P2, 1, 2.0, 0.0}; }
    static CaseId p2_alt() { return {CaseKind::P2Alt, 1, 2.0, 0.0}; }
    static CaseId p4() { return {CaseKind::P4, 2, 4.0, 0.0}; }
    static CaseId p4_alt() { return {CaseKind::P4Alt, 2, 4.0, 0.0}; }
    static CaseId even2k(int k) { return {CaseKind::Even2k, k, 2.0 * k, 0.0}; }
    static CaseId even2k_alt(int k) { return {CaseKind::Even2kAlt, k, 2.0 * k, 0.0}; }
    static CaseId real_a(double a) { return {CaseKind::RealA, 0, a, 0.0}; }
    static CaseId real_a_alt(double a) { return {CaseKind::RealAAlt, 0, a, 0.0}; }
    static CaseId odd(double a) { return {CaseKind::Odd, 0, a, 0.0}; }
    static CaseId odd_alt(double a) { return {CaseKind::OddAlt, 0, a, 0.0}; }
    static CaseId power_z(double z) { return {CaseKind::PowerZ, 0, 2.0, z}; }

    std::string label() const;
    void validate() const;
};

// Direct evaluation: partial sum of w_n Ci(beta n) with a two-term asymptotic
// continuation of Ci and a Dirichlet-kernel bound on the oscillatory remainder
// as err_est. Requires 0 < beta <= 2 pi.
EvalResult ci_sum_oracle(double beta, const CaseId& id, const Ctrl& ctrl);

// Closed form: zeta constants plus a v-integral evaluated by quad_de.
// Integer a under RealA/RealAAlt is routed to the Even2k closed form; odd
// integer a raises std::domain_error (secant pole), as does a <= 1.
EvalResult ci_sum_closed(double beta, const CaseId& id, const Ctrl& ctrl);

// Both sides packaged for reporting.
IdentityReport ci_sum_identity(double beta, const CaseId& id, const Ctrl& ctrl);

// The log-sums S(a) = sum_{n>=2} ln n/(2n+1)^a and the alternating T(a),
// needed by the odd-weight closed forms. First member S, second T.
std::pair<EvalResult, EvalResult> st_series(double a, const Ctrl& ctrl);

// Closed forms of the underlying cosine kernels sum w_n cos(n x) (with an
// optional phase y for the real-exponent family), valid on 0 <= x <= 2 pi.
struct FourierKind {
    enum class Tag { Pow4, Pow4Alt, Even2k, Even2kAlt, RealA, RealAAlt, Odd, OddAlt, PowerZ };
    Tag tag = Tag::Pow4;
    int k = 2;
    double a = 2.5;
    double y = 0.0;
    double z = 0.5;
};

double fourier_cos_closed(double x, const FourierKind& kind);

}  // namespace psirep
