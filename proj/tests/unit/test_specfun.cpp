#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "susy/errors.hpp"
#include "susy/models.hpp"
#include "susy/propagators.hpp"
#include "susy/quadrature.hpp"
#include "susy/specfun.hpp"

#include <cmath>
#include <random>

using namespace susy;
using namespace susy::specfun;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}

// reference values computed once with an arbitrary-precision library
TEST_CASE("theta3 matches frozen reference values")
{
    struct Ref {
        cplx z, tau, v, d1, d2;
    };
    const Ref refs[] = {
        {0.3, {0, 0.5}, 1.3444938712219860469, -0.48344326155947996583, -1.3942053189186289279},
        {{0.7, 0.2}, {0.1, 0.8}, {1.0485658461822753778, -0.053278580795239649891},
         {-0.3216192397080701581, -0.12823826069673172466}, {-0.19415338138251582807, 0.21444766735290730243}},
        {1.1, {0, 2}, 0.99780201572448365476, -0.0060392828391160614699, 0.0087919371917688879872},
    };
    for (const auto& r : refs) {
        const ThetaArgs a(r.z, r.tau);
        CHECK(rel(theta3(a), r.v) < 1e-14);
        const auto j = theta3_jet(a, 2);
        CHECK(rel(j[0], r.v) < 1e-14);
        CHECK(rel(j[1], r.d1) < 1e-13);
        CHECK(rel(j[2], r.d2) < 1e-13);
    }
}

TEST_CASE("theta3 small nome limit, parity and periodicity")
{
    const ThetaArgs deep(0.0, cplx(0, 8.0));
    const double q = std::exp(-8.0 * M_PI);
    CHECK(std::abs(theta3(deep) - (1.0 + 2.0 * q)) < 1e-15);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-2, 2), T(0.05, 2);
    for (int i = 0; i < 100; ++i) {
        const cplx z(U(rng), U(rng) * 0.2), tau(U(rng) * 0.5, T(rng));
        const cplx a = theta3(ThetaArgs(z, tau)), b = theta3(ThetaArgs(-z, tau));
        CHECK(rel(a, b) < 1e-14);
        CHECK(rel(theta3(ThetaArgs(z + M_PI, tau)), a) < 1e-12);
    }
}

TEST_CASE("theta3 rejects non-convergent nomes and bad tolerances")
{
    CHECK_THROWS_AS(ThetaArgs(0.1, cplx(0.3, 0.0)), DomainError);
    CHECK_THROWS_AS(ThetaArgs(0.1, cplx(0.3, -0.1)), DomainError);
    CHECK_THROWS_AS(theta3(ThetaArgs(0.1, cplx(0, 1)), 0.0), ArgumentError);
}

TEST_CASE("box kernel reproduces the truncated spectral sum")
{
    double s = 0;
    for (int n = 1; n <= 400; ++n) s += 2 * std::pow(std::sin(n * M_PI / 2), 2) * std::exp(-n * n * M_PI * M_PI * 0.02);
    CHECK(rel(box_propagator0(0.5, 0.5, ComplexTime::wick(0.02)), s) < 1e-10);
}

TEST_CASE("erfc_complex against frozen values")
{
    struct Ref {
        cplx z, v;
    };
    const Ref refs[] = {
        {0.5, 0.47950012218695346232},
        {{-1.2, 0.7}, {2.0663700129803380527, -0.12024336401600993436}},
        {{3, 4}, {121.1869913950794441, 27.750337293623902498}},
        {{-4, -2}, {2.0000005652170027935, -5.131005296081876296e-7}},
        {{0, 0.01}, {1.0, -0.011284167808628218149}},
        {{6, -0.5}, {2.6982467499622581441e-17, -5.5310394052704538135e-18}},
    };
    for (const auto& r : refs) CHECK(rel(erfc_complex(r.z), r.v) < 1e-12);
    CHECK(std::abs(erfc_complex(0.0) - 1.0) < 1e-16);
    CHECK(std::abs(erfc_complex(1.0) - 0.157299207050285130658) < 1e-15);
}

TEST_CASE("faddeeva against frozen values")
{
    CHECK(rel(faddeeva({1, 1}), {0.30474420525691259246, 0.20821893820283162729}) < 1e-13);
    CHECK(rel(faddeeva({10, 0.5}), {0.0028569536993223131805, 0.056560328935308771178}) < 1e-13);
    CHECK(rel(faddeeva({0.2, -3}), {5641.9909278591881549, 14512.525744675552588}) < 1e-13);
}

TEST_CASE("erfc reflection and agreement with a quadrature oracle")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-5, 5);
    for (int i = 0; i < 100; ++i) {
        const cplx z(U(rng), U(rng));
        CHECK(std::abs(erfc_complex(z) + erfc_complex(-z) - 2.0) < 1e-12 * std::max(1.0, std::abs(erfc_complex(z))));
    }
    quad::Options o;
    o.abs_tol = 1e-16;
    o.rel_tol = 1e-14;
    for (double x = -5.0; x <= 5.0; x += 0.5) {
        const double q = 2.0 / std::sqrt(M_PI) * quad::integrate_real([](double s) { return std::exp(-s * s); }, x, quad::inf, o);
        CHECK(std::abs(erfc_complex(x).real() - q) < 1e-12 * std::max(1.0, q));
    }
}

TEST_CASE("erfc underflows gracefully")
{
    CHECK(std::abs(erfc_complex(40.0)) == doctest::Approx(0.0));
    CHECK(std::abs(erfc_complex(-40.0) - 2.0) < 1e-15);
}

TEST_CASE("erfcx Taylor coefficients agree with finite differences")
{
    for (cplx z0 : {cplx(0.4, 0.3), cplx(2.5, -1.0), cplx(0.0, 0.0)}) {
        const auto c = erfcx_taylor(z0, 6);
        CHECK(rel(c[0], erfcx_complex(z0)) < 1e-13);
        // erfcx' = 2 z erfcx - 2/sqrt(pi)
        CHECK(rel(c[1], 2.0 * z0 * c[0] - 2.0 / std::sqrt(M_PI)) < 1e-11);
        // erfcx'' = 2 erfcx + 2 z erfcx'
        CHECK(rel(2.0 * c[2], 2.0 * c[0] + 2.0 * z0 * c[1]) < 1e-11);
    }
}

TEST_CASE("hermite_p values, guard and eigen equation")
{
    CHECK(hermite_p(0, 3.7) == 1.0);
    CHECK(hermite_p(2, 1.0) == doctest::Approx(0.0));
    CHECK(hermite_p(2, 0.0) == doctest::Approx(-1.0));
    CHECK(hermite_p(3, 2.0) == doctest::Approx(2.0));
    CHECK(hermite_p(3, 0.7) == doctest::Approx(-1.757).epsilon(1e-14));
    CHECK(hermite_p(5, -1.3) == doctest::Approx(-1.24293).epsilon(1e-14));
    CHECK(hermite_p(10, 2.1) == doctest::Approx(-2688.9073846298999432).epsilon(1e-13));
    CHECK_THROWS_AS(hermite_p(65, 0.1), ArgumentError);
    const auto c = hermite_p_coefficients(4);
    double v = 0;
    for (int i = 4; i >= 0; --i) v = v * 0.9 + c[i];
    CHECK(v == doctest::Approx(hermite_p(4, 0.9)).epsilon(1e-14));
    for (int k = 0; k <= 8; ++k) {
        const auto f = BasisFunction::hermite_gaussian(k);
        for (double x : {-1.7, 0.3, 2.2}) CHECK(schrodinger_residual_of(f, [](double z) { return z * z / 4; }, x) < 1e-9);
    }
}
