#pragma once
// Shared numerical machinery: double-exponential quadrature, compensated
// summation, Bernoulli numbers/polynomials, Riemann/Hurwitz zeta with
// derivative, and the trigonometric integrals Ci/Si.
//
// Error-reporting conventions used across the library:
//   - std::invalid_argument  for violated configuration contracts (Ctrl fields,
//     capacity overruns, malformed enum selections);
//   - std::domain_error      for mathematical domain violations (poles, q <= 0,
//     non-positive arguments);
//   - EvalResult.converged == false for honest non-convergence within budget;
//     the best estimate and its a-posteriori err_est are still returned.

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace psirep {

// Knobs shared by every series/quadrature evaluator.
// max_terms >= 1, 0 < target_tol < 1, tail_order <= 4 (enforced by validate()).
struct Ctrl {
    long max_terms = 100000;
    double target_tol = 1e-10;
    int quad_levels = 10;  // refinement depth for quad_de (hard cap 12)
    int tail_order = 2;    // asymptotic tail-correction terms for Fourier sums

    void validate() const;
};

// Value plus a-posteriori error estimate and work counters.
// Invariant: converged implies err_est <= target_tol of the Ctrl used.
struct EvalResult {
    double value = 0.0;
    double err_est = 0.0;
    long terms_used = 0;
    long nodes_used = 0;
    bool converged = false;
};

// Two-sided evaluation of an identity. `label` names the case or identity.
struct IdentityReport {
    std::string label;
    double beta = 0.0;
    EvalResult lhs;
    EvalResult rhs;
    double residual = 0.0;
    bool pass = false;
};

inline constexpr double euler_gamma = 0.57721566490153286061;

// Bernoulli numbers B_0..B_N, B_1 = -1/2 convention. Built once via the
// tangent-number triangle (integer recurrences, exact in double through B_22,
// relative error ~1 ulp beyond). Shared read-only after construction.
class BernoulliCache {
  public:
    explicit BernoulliCache(int capacity = 64);
    double number(int n) const;  // throws std::invalid_argument past capacity
    int capacity() const { return static_cast<int>(b_.size()) - 1; }

  private:
    std::vector<double> b_;
};

// Process-wide cache, built on first use.
const BernoulliCache& bernoulli_cache();

double bernoulli_number(int n);

// B_n(x) = sum_k C(n,k) B_k x^{n-k}.
double bernoulli_poly(int n, double x);

// P_n(x) = B_n(x - floor(x)).
double periodized_bernoulli(int n, double x);

// Neumaier compensated summation. Guarantees |error| <= 2 eps sum|terms|.
class NeumaierAcc {
  public:
    void add(double x);
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double comp_sum(const std::vector<double>& terms);

// Integral of f over (lo, hi) by double-exponential (tanh-sinh) quadrature;
// hi may be +infinity (exp-sinh map). Endpoint singularities must be at most
// integrable. err_est is the difference of the last two refinement levels;
// node budget doubles per level, at most 12 levels. A NaN from f raises
// std::domain_error.
EvalResult quad_de(const std::function<double(double)>& f, double lo, double hi,
                   const Ctrl& ctrl);

// Hurwitz zeta(s, q), s != 1, q > 0; s may be negative. Euler-Maclaurin:
// shift N chosen so N + q >= max(10, |s|), 10 Bernoulli tail terms, err_est
// the first omitted term.
EvalResult hurwitz_zeta(double s, double q, const Ctrl& ctrl);

EvalResult zeta(double s, const Ctrl& ctrl);

// zeta'(s), s != 1, by term-differentiated Euler-Maclaurin (same shift rule).
EvalResult zeta_prime(double s, const Ctrl& ctrl);

// Trigonometric integrals.
//   Ci(x) = -int_x^inf cos t / t dt      (x > 0)
//   Si(x) =  int_0^x  sin t / t dt       (x >= 0)
// Power-series route for x <= cisi_switch with double-double compensation
// (the series alternates with ~1e10 intermediate terms near the switch point);
// auxiliary asymptotic route beyond. The switch sits where the asymptotic
// floor (~4e-14) meets the compensated series' capability.
inline constexpr double cisi_switch = 30.0;

struct CiSi {
    double ci = 0.0;
    double si = 0.0;
    double err_est = 0.0;
};

CiSi cisi(double x, const Ctrl& ctrl);
double ci(double x, const Ctrl& ctrl);
double si(double x, const Ctrl& ctrl);

// Auxiliary pair for x above (or near) cisi_switch:
//   f(x) =  Ci(x) sin x + (pi/2 - Si(x)) cos x  ~  1/x - 2/x^3 + 24/x^5 - ...
//   g(x) = -Ci(x) cos x + (pi/2 - Si(x)) sin x  ~  1/x^2 - 6/x^4 + 120/x^6 - ...
// Truncated at the smallest term; err_est reports it. These drive every
// oscillatory tail correction in the library.
struct AuxFG {
    double f = 0.0;
    double g = 0.0;
    double err_est = 0.0;
};

AuxFG cisi_aux(double x);

inline constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace psirep
