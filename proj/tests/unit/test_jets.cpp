#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "susy/errors.hpp"
#include "susy/jets.hpp"

#include <cmath>
#include <random>

using namespace susy;

TEST_CASE("jet examples")
{
    const auto c = eval_jet(BasisFunction::cosh(1, 0), 0.0, 3);
    CHECK(c.derivs.size() == 4);
    CHECK(std::abs(c[0] - 1.0) < 1e-15);
    CHECK(std::abs(c[1]) < 1e-15);
    CHECK(std::abs(c[2] - 1.0) < 1e-15);
    CHECK(std::abs(c[3]) < 1e-15);

    const auto t = eval_jet(BasisFunction::trig_box(1), 0.5, 2);
    CHECK(std::abs(t[0] - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(t[1]) < 1e-14);
    CHECK(std::abs(t[2] + std::sqrt(2.0) * M_PI * M_PI) < 1e-13);

    CHECK(std::abs(eval_jet(BasisFunction::hermite_gaussian(2), 1.0, 0)[0]) < 1e-15);
}

TEST_CASE("energies of the families")
{
    CHECK(BasisFunction::trig_box(3).energy() == doctest::Approx(9 * M_PI * M_PI));
    CHECK(BasisFunction::cosh(2, 1).energy() == doctest::Approx(-4));
    CHECK(BasisFunction::hermite_gaussian(3).energy() == doctest::Approx(3.5));
    CHECK(BasisFunction::plane_exp(-1, 1.5).energy() == doctest::Approx(-2.25));
    CHECK_THROWS_AS(BasisFunction::cosh(-1, 0), ArgumentError);
    CHECK_THROWS_AS(BasisFunction::trig_box(0), ArgumentError);
}

TEST_CASE("schrodinger residuals")
{
    auto zero = [](double) { return 0.0; };
    auto osc = [](double x) { return x * x / 4; };
    for (double x : {-2.0, 0.1, 1.7}) {
        CHECK(schrodinger_residual_of(BasisFunction::cosh(2, 1), zero, x) < 1e-12);
        CHECK(schrodinger_residual_of(BasisFunction::sinh(1.3, -0.2), zero, x) < 1e-12);
        CHECK(schrodinger_residual_of(BasisFunction::plane_exp(1, 0.7), zero, x) < 1e-12);
    }
    CHECK(schrodinger_residual_of(BasisFunction::hermite_gaussian(3), osc, 0.7) < 1e-10);
    CHECK(schrodinger_residual_of(BasisFunction::trig_box(2), zero, 0.3) < 1e-12);
}

TEST_CASE("jets agree with finite differences of the previous order")
{
    const double h = 1e-5;
    const std::vector<std::pair<BasisFunction, double>> cases{
        {BasisFunction::trig_box(2), 0.37},        {BasisFunction::cosh(1.2, 0.3), 0.4},
        {BasisFunction::sinh(0.8, 0.1), -0.6},     {BasisFunction::hermite_gaussian(4), 0.9},
        {BasisFunction::plane_exp(-1, 0.5), 1.1},
    };
    for (const auto& [f, x] : cases) {
        const auto j = eval_jet(f, x, 8);
        const auto jp = eval_jet(f, x + h, 7), jm = eval_jet(f, x - h, 7);
        for (int m = 1; m <= 8; ++m) {
            const cplx fd = (jp[m - 1] - jm[m - 1]) / (2 * h);
            CHECK(std::abs(fd - j[m]) <= 1e-5 * std::max(1.0, std::abs(j[m])));
        }
    }
}

TEST_CASE("unphysical partner has unit Wronskian")
{
    std::mt19937_64 rng(3);
    {
        const auto u = BasisFunction::cosh(1.0, 0.2);
        const auto p = BasisFunction::partner(u, 0.0);
        std::uniform_real_distribution<double> X(-3, 3);
        for (int i = 0; i < 50; ++i) {
            const double x = X(rng);
            const auto a = eval_jet(u, x, 1), b = eval_jet(p, x, 1);
            CHECK(std::abs(a[0] * b[1] - a[1] * b[0] - 1.0) < 1e-9);
        }
        const auto j = eval_jet(p, 0.8, 6);
        const auto jp = eval_jet(p, 0.8 + 1e-5, 5), jm = eval_jet(p, 0.8 - 1e-5, 5);
        for (int m = 1; m <= 6; ++m)
            CHECK(std::abs((jp[m - 1] - jm[m - 1]) / 2e-5 - j[m]) <= 1e-5 * std::max(1.0, std::abs(j[m])));
    }
    {
        const auto u = BasisFunction::trig_box(2);
        const auto p = BasisFunction::partner(u, 0.25);
        std::uniform_real_distribution<double> X(0.05, 0.45);
        for (int i = 0; i < 50; ++i) {
            const double x = X(rng);
            const auto a = eval_jet(u, x, 1), b = eval_jet(p, x, 1);
            CHECK(std::abs(a[0] * b[1] - a[1] * b[0] - 1.0) < 1e-9);
        }
        CHECK_THROWS_AS(eval_jet(p, 0.7, 1), SingularityError);
    }
}

TEST_CASE("domain checks and nodes")
{
    CHECK_THROWS_AS(eval_jet(BasisFunction::trig_box(1), 1.5, 0), DomainError);
    const auto nodes = nodes_in(BasisFunction::hermite_gaussian(3), -5, 5);
    REQUIRE(nodes.size() == 3);
    CHECK(nodes[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(nodes[2] - std::sqrt(3.0)) < 1e-12);
    CHECK(nodal_midpoint(BasisFunction::trig_box(2), 0.2) == doctest::Approx(0.25));
}
