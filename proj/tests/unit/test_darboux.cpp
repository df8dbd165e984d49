#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "susy/darboux.hpp"
#include "susy/errors.hpp"
#include "susy/oracle.hpp"
#include "susy/propagators.hpp"

#include <cmath>
#include <random>

using namespace susy;

namespace {
const double pi = M_PI;
DarbouxChain box_chain(std::vector<int> levels)
{
    std::vector<BasisFunction> fs;
    for (int n : levels) fs.push_back(BasisFunction::trig_box(n));
    return DarbouxChain(BaseKind::Box, fs, std::vector<Action>(fs.size(), Action::RemoveLevel));
}
} // namespace

TEST_CASE("wronskian examples")
{
    const std::vector<BasisFunction> cs{BasisFunction::cosh(1, 0), BasisFunction::sinh(2, 0)};
    CHECK(std::abs(wronskian(cs, 0.0).value() - 2.0) < 1e-15);
    CHECK(std::abs(wronskian({BasisFunction::cosh(1, 0)}, 0.7).value() - std::cosh(0.7)) < 1e-15);
    const std::vector<BasisFunction> hg{BasisFunction::hermite_gaussian(2), BasisFunction::hermite_gaussian(3)};
    for (int i = 0; i < 20; ++i) {
        const double x = -3.0 + 0.3 * i;
        const double ref = (std::pow(x, 4) + 3.0) * std::exp(-x * x / 2);
        CHECK(std::abs(wronskian(hg, x).value() - ref) < 1e-10 * ref);
    }
}

TEST_CASE("wronskian derivatives follow the row rule")
{
    const std::vector<BasisFunction> fs{BasisFunction::cosh(0.8, 0.1), BasisFunction::sinh(1.7, 0.2),
                                        BasisFunction::cosh(2.5, -0.3)};
    const auto w = wronskian(fs, 0.4, 3);
    const double h = 1e-5;
    for (int d = 1; d <= 3; ++d) {
        const cplx fd = (wronskian(fs, 0.4 + h, d - 1).derivs[d - 1] - wronskian(fs, 0.4 - h, d - 1).derivs[d - 1]) / (2 * h);
        CHECK(std::abs(fd - w.derivs[d]) < 1e-6 * std::abs(w.derivs[d]));
    }
}

TEST_CASE("minor wronskians")
{
    const std::vector<BasisFunction> one{BasisFunction::cosh(1, 0)};
    CHECK(minor_wronskian(one, 0, 0.3).value() == cplx(1.0));
    const std::vector<BasisFunction> two{BasisFunction::cosh(1, 0), BasisFunction::sinh(2, 0)};
    CHECK(std::abs(minor_wronskian(two, 0, 0.3).value() - std::sinh(0.6)) < 1e-15);
    const auto tr = transparent_chain({1.0, 2.0, 3.0});
    for (int i = 0; i < 20; ++i) {
        const double x = -2.0 + 0.2 * i;
        const std::vector<BasisFunction> sub{tr.functions()[0], tr.functions()[2]};
        CHECK(std::abs(minor_wronskian(tr.functions(), 1, x).value() - wronskian(sub, x).value())
              <= 1e-12 * std::abs(wronskian(sub, x).value()));
    }
}

TEST_CASE("transformed potentials")
{
    CHECK(transformed_potential(box_chain({1}), 0.25) == doctest::Approx(4 * pi * pi).epsilon(1e-12));
    const DarbouxChain c(BaseKind::FreeLine, {BasisFunction::cosh(1, 0)}, {Action::CreateLevel});
    CHECK(transformed_potential(c, 0.0) == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(transformed_potential(oscillator_pair_chain(2), 0.0) == doctest::Approx(2.0).epsilon(1e-13));
    for (double x : {-1.3, 0.4, 2.2})
        CHECK(transformed_potential(oscillator_pair_chain(2), x) == doctest::Approx(oscillator_pair_potential(2, x)).epsilon(1e-10));
    const auto tr = transparent_chain({1.0, 2.0});
    CHECK(std::abs(transformed_potential(tr, 20.0)) < 1e-8);
    CHECK(std::abs(transformed_potential(tr, -20.0)) < 1e-8);
}

TEST_CASE("intertwiner examples and kernel property")
{
    const DarbouxChain c(BaseKind::FreeLine, {BasisFunction::cosh(1, 0)}, {Action::CreateLevel});
    CHECK(std::abs(apply_intertwiner(c, plane_wave_supplier(1.0), 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(kernel_solution(c, 0, 0.0) - 1.0) < 1e-15);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> X(-3, 3), B(0.05, 0.95);
    const auto tr = transparent_chain({0.7, 1.4, 2.2});
    for (int i = 0; i < 50; ++i) {
        const double x = X(rng);
        for (const auto& u : tr.functions()) {
            const double scale = std::abs(eval_jet(u, x, 0)[0]);
            CHECK(std::abs(apply_intertwiner(tr, supplier(u), x)) <= 1e-10 * std::max(1.0, scale));
        }
    }
    const auto b2 = box_chain({1, 2});
    for (int i = 0; i < 50; ++i) {
        const double x = B(rng);
        for (const auto& u : b2.functions()) CHECK(std::abs(apply_intertwiner(b2, supplier(u), x)) <= 1e-10 * 100);
    }
}

TEST_CASE("intertwining and kernel-solution eigen equations")
{
    // h_N (L f) = E (L f) with second derivatives from jets of L f
    auto residual = [](const DarbouxChain& ch, const JetSupplier& f, double E, double x) {
        const Jet j = intertwiner_jet(ch, f, x, 2);
        const cplx r = -j[2] + transformed_potential(ch, x) * j[0] - E * j[0];
        return std::abs(r) / std::max({1.0, std::abs(E * j[0]), std::abs(j[2])});
    };
    const auto tr = transparent_chain({1.0, 2.0});
    for (double x : {-1.5, 0.2, 1.9}) {
        CHECK(residual(tr, plane_wave_supplier(cplx(0, 1.3)), 1.69, x) < 1e-7);
        for (int n = 0; n < 2; ++n) {
            const Jet v = kernel_solution_jet(tr, n, x, 2);
            const double al = tr.alphas()[n];
            CHECK(std::abs(-v[2] + transformed_potential(tr, x) * v[0] - al * v[0])
                  < 1e-8 * std::max({1.0, std::abs(v[2]), std::abs(al * v[0])}));
        }
    }
    const auto b2 = box_chain({1, 2});
    for (double x : {0.2, 0.55, 0.8}) CHECK(residual(b2, supplier(BasisFunction::trig_box(4)), 16 * pi * pi, x) < 1e-7);
}

TEST_CASE("kernel solutions and finite-difference eigen residual")
{
    const auto tr = transparent_chain({1.0, 2.0});
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> X(-3, 3);
    const double h = 1e-3;
    for (int i = 0; i < 50; ++i) {
        const double x = X(rng);
        for (int n = 0; n < 2; ++n) {
            auto v = [&](double z) { return kernel_solution(tr, n, z).real(); };
            const double d2 = (-v(x + 2 * h) + 16 * v(x + h) - 30 * v(x) + 16 * v(x - h) - v(x - 2 * h)) / (12 * h * h);
            const double r = -d2 + transformed_potential(tr, x) * v(x) - tr.alphas()[n] * v(x);
            CHECK(std::abs(r) < 1e-8 * std::max(1.0, std::abs(v(x))) * 10);
        }
    }
    const auto op = oscillator_pair_chain(2);
    const double x = 0.6;
    CHECK(std::abs(kernel_solution(op, 1, x)
                   - minor_wronskian(op.functions(), 1, x).value() / wronskian(op.functions(), x).value())
          < 1e-15);
    CHECK(std::abs(kernel_solution(op, 1, x).real() - (x * x - 1) * std::exp(x * x / 4) / (std::pow(x, 4) + 3))
          < 1e-13);
}

TEST_CASE("normalization constants and condition (usl)")
{
    CHECK(normalization_constant(4, {0}) == doctest::Approx(0.5));
    CHECK(normalization_constant(pi * pi, {-1, -4}) == doctest::Approx(1 / std::sqrt((pi * pi + 1) * (pi * pi + 4))));
    CHECK_THROWS_AS(normalization_constant(pi * pi, {pi * pi}), ConditionViolation);

    std::vector<double> spec;
    for (int n = 1; n <= 100; ++n) spec.push_back(n * n * pi * pi);
    CHECK(check_usl(spec, {pi * pi}));
    CHECK(check_usl({}, {-1, -4}));
    CHECK_FALSE(check_usl({0.5, 1.5, 2.5}, {1.5}));
}

TEST_CASE("nodeless checks and chain validation")
{
    CHECK(check_nodeless(std::vector<BasisFunction>{BasisFunction::cosh(1, 0), BasisFunction::sinh(2, 0)},
                         working_grid(BaseKind::FreeLine)));
    CHECK(check_nodeless(std::vector<BasisFunction>{BasisFunction::hermite_gaussian(2), BasisFunction::hermite_gaussian(3)},
                         working_grid(BaseKind::Oscillator)));
    CHECK_FALSE(check_nodeless(std::vector<BasisFunction>{BasisFunction::sinh(1, 0)}, working_grid(BaseKind::FreeLine)));

    CHECK_THROWS_AS(DarbouxChain(BaseKind::FreeLine, {BasisFunction::sinh(1, 0)}, {Action::CreateLevel}), NodelessViolation);
    CHECK_THROWS_AS(DarbouxChain(BaseKind::Oscillator, {BasisFunction::hermite_gaussian(1)}, {Action::RemoveLevel}),
                    ConditionViolation);
    CHECK_THROWS_AS(DarbouxChain(BaseKind::FreeLine, {BasisFunction::cosh(1, 0), BasisFunction::sinh(1, 0)},
                                 {Action::CreateLevel, Action::CreateLevel}),
                    DegenerateError);
    CHECK_THROWS_AS(DarbouxChain(BaseKind::Box, {BasisFunction::trig_box(1)}, {Action::CreateLevel}), ConfigurationError);
    // deliberately irreducible chains pass with the override flag
    CHECK_NOTHROW(DarbouxChain(BaseKind::Oscillator, {BasisFunction::hermite_gaussian(1)}, {Action::RemoveLevel},
                               {true}));
}

TEST_CASE("composition and permutation invariance")
{
    const auto tr = transparent_chain({1.0, 2.0});
    std::vector<double> xs;
    for (int i = 0; i < 10; ++i) xs.push_back(-2.0 + 0.4 * i);
    const auto rep = chain_compose_check(tr, plane_wave_supplier(3.0), xs, 1e-9);
    CHECK(rep.ok);
    CHECK(rep.sequential_deviation < 1e-9);
    CHECK(rep.permutation_deviation < 1e-12);
    CHECK(chain_compose_check(box_chain({1, 2})));
    CHECK(chain_compose_check(box_chain({1})));
}

TEST_CASE("Wronskian-fraction representation")
{
    const auto b1 = box_chain({1});
    const auto s = appendix_un(b1, 0, std::nullopt, 0.5);
    CHECK(std::abs(s.lhs - 1.0 / std::sqrt(2.0)) < 1e-9);
    const auto b2 = box_chain({1, 2});
    for (int i = 0; i < 10; ++i) {
        const double x = 0.07 + 0.09 * i;
        for (int n = 0; n < 2; ++n) CHECK(oracle::appendix_identity(b2, n, x) < 1e-7);
    }
    const auto s0 = appendix_un(b2, 0, std::nullopt, 0.3);
    CHECK(std::abs(s0.rhs * s0.factor - s0.lhs) < 1e-7 * std::abs(s0.lhs));
}
