#include <cmath>
#include <stdexcept>
#include <string>

#include <psirep/digamma.hpp>
#include <psirep/loggamma.hpp>

#include "approx.hpp"
#include "doctest.h"

using namespace psirep;

namespace {

constexpr double kPi = 3.14159265358979323846;

Ctrl tight() {
    Ctrl c;
    c.target_tol = 1e-10;
    return c;
}

const RepLogGamma kAllReps[] = {
    RepLogGamma::BinomialSeries, RepLogGamma::Binet1, RepLogGamma::Binet2,
    RepLogGamma::DoubleIntegral, RepLogGamma::FourierCiSi,
};

}  // namespace

TEST_CASE("stirling reference log gamma") {
    CHECK(std::fabs(lngamma_ref(1.0)) < 1e-13);
    CHECK(std::fabs(lngamma_ref(2.0)) < 1e-13);
    CHECK(std::fabs(lngamma_ref(0.5) - 0.5 * std::log(kPi)) < 1e-13);
    CHECK(std::fabs(lngamma_ref(5.0) - std::log(24.0)) < 1e-13);
    CHECK(std::fabs(lngamma_ref(0.25) - 1.2880225246980774) < 1e-13);
    CHECK(std::fabs(lngamma_ref(3.5) - 1.2009736023470743) < 1e-13);
    CHECK(std::fabs(lngamma_ref(8.0) - 8.525161361065415) < 1e-13);
    for (double a : {0.3, 1.7, 6.4, 25.0}) {
        CHECK(std::fabs(lngamma_ref(a + 1.0) - lngamma_ref(a) - std::log(a)) < 1e-13);
    }
    CHECK_THROWS_AS(lngamma_ref(0.0), std::domain_error);
    CHECK_THROWS_AS(lngamma_ref(-2.0), std::domain_error);
}

TEST_CASE("representations match the reference across the grid") {
    Ctrl c = tight();
    Ctrl dc;
    dc.target_tol = 1e-9;  // double integral: three inner quads per outer node
    for (double a : {0.25, 0.5, 1.0, 2.0, 3.5, 8.0}) {
        double ref = lngamma_ref(a);
        for (RepLogGamma rep : kAllReps) {
            CAPTURE(a);
            CAPTURE(static_cast<int>(rep));
            bool dbl = rep == RepLogGamma::DoubleIntegral;
            double tol = rep == RepLogGamma::FourierCiSi ? 1e-6 : 1e-8;
            EvalResult r = lngamma_rep(a, rep, dbl ? dc : c);
            CHECK(std::fabs(r.value - ref) < tol);
            CHECK(std::fabs(r.value - ref) <= 2.0 * r.err_est + 1e-12);
        }
    }
}

TEST_CASE("right sides vanish at a = 1") {
    Ctrl c = tight();
    for (RepLogGamma rep : kAllReps) {
        CAPTURE(static_cast<int>(rep));
        CHECK(std::fabs(lngamma_rep(1.0, rep, c).value) < 1e-10);
    }
}

TEST_CASE("derivative of log gamma representations matches digamma") {
    Ctrl c = tight();
    double h = 1e-4;
    for (double a : {1.0, 2.5}) {
        CAPTURE(a);
        double fd_binet = (lngamma_rep(a + h, RepLogGamma::Binet2, c).value -
                           lngamma_rep(a - h, RepLogGamma::Binet2, c).value) /
                          (2.0 * h);
        CHECK(std::fabs(fd_binet - psi_rep(a, RepDigamma::UIntegral, c).value) < 1e-6);
        double fd_fourier = (lngamma_rep(a + h, RepLogGamma::FourierCiSi, c).value -
                             lngamma_rep(a - h, RepLogGamma::FourierCiSi, c).value) /
                            (2.0 * h);
        CHECK(std::fabs(fd_fourier - psi_rep(a, RepDigamma::FourierCiSi, c).value) < 1e-6);
    }
}

TEST_CASE("binet integral variants agree") {
    Ctrl c = tight();
    for (double a : {0.25, 0.7, 1.0, 2.0, 5.5}) {
        CAPTURE(a);
        double v1 = lngamma_rep(a, RepLogGamma::Binet1, c).value;
        double v2 = lngamma_rep(a, RepLogGamma::Binet2, c).value;
        CHECK(std::fabs(v1 - v2) < 1e-10);
    }
    CHECK(std::fabs(lngamma_rep(0.5, RepLogGamma::Binet2, c).value -
                    0.5 * std::log(kPi)) < 1e-9);
}

TEST_CASE("duplication formula through the binet integral") {
    Ctrl c = tight();
    for (double a : {0.3, 0.75, 1.6}) {
        CAPTURE(a);
        auto lg = [&](double x) { return lngamma_rep(x, RepLogGamma::Binet2, c).value; };
        double resid = lg(2.0 * a) - (lg(a) + lg(a + 0.5) + (2.0 * a - 1.0) * std::log(2.0) -
                                      0.5 * std::log(kPi));
        CHECK(std::fabs(resid) < 1e-9);
    }
}

TEST_CASE("partial product converges to gamma") {
    CHECK(std::fabs(gamma_product(1.0, 1).value - 1.0) < 1e-15);
    CHECK(std::fabs(gamma_product(1.0, 30).value - 1.0) < 1e-15);

    for (double a : {0.5, 2.0}) {
        CAPTURE(a);
        double ref = lngamma_ref(a);
        double prev = inf;
        for (long k : {5L, 10L, 20L}) {
            double err = std::fabs(std::log(gamma_product(a, k).value) - ref);
            CHECK(err < prev);
            prev = err;
        }
    }
    CHECK(std::fabs(gamma_product(0.5, 40).value - std::sqrt(kPi)) < 0.03);
    CHECK_THROWS_AS(gamma_product(2.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_product(0.0, 5), std::domain_error);
}

TEST_CASE("binet constant by series and by quadrature") {
    double binet = 1.0 - 0.5 * std::log(2.0 * kPi);

    Ctrl bare = tight();
    bare.tail_order = 0;
    auto [p1, q1] = const_binet_sum(1, bare);
    CiSi v = cisi(2.0 * kPi, bare);
    CHECK(std::fabs(p1.value - (kPi - 2.0 * v.si) / (2.0 * kPi)) < 1e-14);
    CHECK(!p1.converged);

    double prev = inf;
    for (long j : {5L, 50L, 500L}) {
        double err = std::fabs(const_binet_sum(j, bare).first.value - binet);
        CHECK(err < prev);
        prev = err;
    }

    Ctrl c = tight();
    auto [series, quad] = const_binet_sum(300, c);
    CHECK(std::fabs(series.value - binet) < 1e-12);
    CHECK(std::fabs(series.value - binet) <= 2.0 * series.err_est + 1e-14);
    CHECK(std::fabs(quad.value - binet) < 1e-9);
    CHECK(std::fabs(quad.value / 2.0 - 0.04053073339766363) < 1e-11) ;
    CHECK(std::fabs(series.value - quad.value) < 1e-9);
    CHECK_THROWS_AS(const_binet_sum(0, c), std::invalid_argument);
}

TEST_CASE("log gamma at one quarter from half-integer sums") {
    Ctrl c = tight();
    IdentityReport rep = lngamma_quarter(c);
    CHECK(rep.pass);
    CHECK(std::fabs(rep.lhs.value - 1.2880225246980774) < 1e-13);
    CHECK(std::fabs(rep.residual) < 1e-10);
    CHECK(rep.label.find("factor 2") != std::string::npos);

    Ctrl c10 = c;
    c10.max_terms = 10;
    Ctrl c100 = c;
    c100.max_terms = 100;
    CHECK(std::fabs(lngamma_quarter(c100).residual) <
          std::fabs(lngamma_quarter(c10).residual));
}

TEST_CASE("log gamma domain and configuration errors") {
    Ctrl c = tight();
    CHECK_THROWS_AS(lngamma_rep(0.0, RepLogGamma::Binet1, c), std::domain_error);
    CHECK_THROWS_AS(lngamma_rep(-1.0, RepLogGamma::FourierCiSi, c), std::domain_error);
    Ctrl bad = c;
    bad.max_terms = 0;
    CHECK_THROWS_AS(lngamma_rep(1.0, RepLogGamma::Binet1, bad), std::invalid_argument);
}
