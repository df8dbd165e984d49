#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "susy/errors.hpp"
#include "susy/quadrature.hpp"
#include "susy/series.hpp"

#include <cmath>

using namespace susy;

TEST_CASE("series algebra")
{
    // exp(s) about 0
    Series s = Series::variable(6, 0.0);
    const auto e = s.exp();
    for (int k = 0; k <= 6; ++k) CHECK(std::abs(e[k] - 1.0 / factorial(k)) < 1e-15);
    // 1/(1 - s) = sum s^k
    Series one(6, 1.0);
    const auto r = (one - s).reciprocal();
    for (int k = 0; k <= 6; ++k) CHECK(std::abs(r[k] - 1.0) < 1e-14);
    // (x0 + s)^2 derivatives
    const auto x = Series::variable(4, 1.5);
    const auto d = (x * x).derivatives();
    CHECK(std::abs(d[0] - 2.25) < 1e-15);
    CHECK(std::abs(d[1] - 3.0) < 1e-15);
    CHECK(std::abs(d[2] - 2.0) < 1e-15);
    CHECK(std::abs(d[3]) < 1e-15);
    const auto q = (x * x) / x;
    CHECK(std::abs(q[0] - 1.5) < 1e-15);
    CHECK(std::abs(q[1] - 1.0) < 1e-15);
    CHECK(std::abs(q[2]) < 1e-15);
    const auto f = Series::from_derivatives({1.0, 2.0, 6.0});
    CHECK(std::abs(f[2] - 3.0) < 1e-15);
    CHECK(std::abs(f.derivative()[1] - 6.0) < 1e-15);
    CHECK(binomial(6, 2) == 15.0);
}

TEST_CASE("bivariate series exp and linear composition")
{
    // exp(a s + b r + c s r)
    Series2 g(3, 3);
    const cplx a = 0.3, b = -0.7, c = 0.2;
    g(1, 0) = a;
    g(0, 1) = b;
    g(1, 1) = c;
    const auto E = g.exp();
    // d/ds d/dr at 0: a b + c
    CHECK(std::abs(E.derivative(1, 1) - (a * b + c)) < 1e-15);
    CHECK(std::abs(E.derivative(2, 0) - a * a) < 1e-15);
    // F = exp composed with h0 + hs s + hr r
    std::vector<cplx> fe(7);
    for (int k = 0; k <= 6; ++k) fe[k] = std::exp(0.4) / factorial(k);
    const auto C = Series2::compose_linear(fe, 2.0, -1.0, 3, 3);
    CHECK(std::abs(C.derivative(2, 1) - std::exp(0.4) * 4.0 * -1.0) < 1e-13);
}

TEST_CASE("adaptive quadrature on finite and infinite ranges")
{
    CHECK(quad::integrate_real([](double x) { return std::sin(x); }, 0, M_PI) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(quad::integrate_real([](double x) { return std::exp(-x * x); }, -quad::inf, quad::inf)
          == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(quad::integrate_real([](double x) { return std::exp(-x); }, 0, quad::inf) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quad::integrate_real([](double x) { return std::exp(x); }, -quad::inf, 0) == doctest::Approx(1.0).epsilon(1e-12));
    // kink handled by adaptivity
    CHECK(quad::integrate_real([](double x) { return std::abs(x - 0.3); }, 0, 1) == doctest::Approx(0.29).epsilon(1e-9));
    // vector integrand
    const auto r = quad::integrate(
        [](double x, cplx* o) {
            o[0] = x;
            o[1] = cplx(0, x * x);
        },
        2, 0, 1);
    CHECK(std::abs(r.value[0] - 0.5) < 1e-15);
    CHECK(std::abs(r.value[1] - cplx(0, 1.0 / 3)) < 1e-15);
}

TEST_CASE("quadrature reports divergence")
{
    CHECK_THROWS_AS(quad::integrate_real([](double x) { return std::exp(x); }, 0, quad::inf), ConvergenceError);
}
