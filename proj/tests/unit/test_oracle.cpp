#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "susy/errors.hpp"
#include "susy/oracle.hpp"
#include "susy/propagators.hpp"

#include <boost/rational.hpp>

#include <cmath>
#include <numeric>
#include <random>

using namespace susy;
using namespace susy::oracle;

namespace {
const double pi = M_PI;

EigenSystem box_fd(int n_points, int states)
{
    return fd_eigensolve([](double) { return 0.0; }, GridSpec(0, 1, n_points), states);
}
} // namespace

TEST_CASE("finite-difference box levels")
{
    const auto e = box_fd(1001, 5);
    REQUIRE(e.size() == 5);
    CHECK(std::abs(e.energies[0] / (pi * pi) - 1) < 1e-3);
    for (int m = 0; m < 5; ++m) CHECK(std::abs(e.energies[m] / ((m + 1) * (m + 1) * pi * pi) - 1) < 1e-3);
    // Dirichlet ends and discrete orthonormality
    for (int m = 0; m < 5; ++m) {
        CHECK(e.wavefunctions[m].front() == 0.0);
        CHECK(e.wavefunctions[m].back() == 0.0);
        for (int k = 0; k <= m; ++k) {
            double s = 0;
            for (int i = 0; i < e.grid.n_points; ++i) s += e.grid.h() * e.wavefunctions[m][i] * e.wavefunctions[k][i];
            CHECK(std::abs(s - (m == k ? 1.0 : 0.0)) < 1e-10);
        }
    }
    CHECK(e.psi(0, -0.1) == 0.0);
    CHECK(e.psi(0, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("finite-difference line problems")
{
    const auto sech = fd_eigensolve([](double x) { return -2 / std::pow(std::cosh(x), 2); }, GridSpec::with_spacing(-25, 25, 0.01), 3);
    CHECK(std::abs(sech.energies[0] + 1) < 1e-3);
    CHECK(sech.energies[1] > 0);
    const auto osc = fd_eigensolve([](double x) { return x * x / 4; }, GridSpec::with_spacing(-12, 12, 0.005), 4);
    for (int m = 0; m < 4; ++m) CHECK(std::abs(osc.energies[m] - (m + 0.5)) < 1e-4);
}

TEST_CASE("finite-difference argument errors")
{
    CHECK_THROWS_AS(fd_eigensolve([](double) { return 0.0; }, GridSpec(0, 1, 5), 4), ArgumentError);
    CHECK_THROWS_AS(fd_eigensolve([](double x) { return x == 0.5 ? NAN : 0.0; }, GridSpec(0, 1, 11), 2), DomainError);
    const auto e = box_fd(101, 3);
    CHECK_THROWS_AS(spectral_kernel(e, 0.2, 0.3, 0.0), DomainError);
}

TEST_CASE("spectral kernel of the box")
{
    const auto e = box_fd(2001, 600);
    for (auto [x, y] : {std::pair{0.3, 0.6}, std::pair{0.5, 0.5}}) {
        const cplx fd = spectral_kernel(e, x, y, 0.05);
        const cplx ex = box_propagator0(x, y, ComplexTime::wick(0.05));
        CHECK(std::abs(fd - ex) / std::abs(ex) < 1e-4);
        CHECK(fd.real() > 0);
    }
    // short-time growth of the diagonal kernel ~ tau^(-1/2)
    const double k1 = spectral_kernel(e, 0.5, 0.5, 1e-3).real(), k2 = spectral_kernel(e, 0.5, 0.5, 2e-3).real();
    CHECK(std::log(k2 / k1) / std::log(2.0) == doctest::Approx(-0.5).epsilon(0.02));
    const auto basis = box_basis(200);
    CHECK(std::abs(spectral_kernel(basis, 0.3, 0.6, 0.05) - box_propagator0(0.3, 0.6, ComplexTime::wick(0.05))) < 1e-12);
}

TEST_CASE("power sums over partial fractions: examples and random instances")
{
    CHECK(lemma3_identity({1.0, 2.0}, 0) < 1e-14);
    CHECK(lemma3_identity({1.0, 2.0}, 1) < 1e-14);
    CHECK(lemma3_identity({-1.0, 0.5, 3.0}, 2) < 1e-14);
    CHECK_THROWS_AS(lemma3_identity({1.0, 1.0}, 0), DegenerateError);
    CHECK_THROWS_AS(lemma3_identity({1.0, 2.0}, 2), ArgumentError);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> Nd(1, 8);
    std::uniform_real_distribution<double> A(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const int N = Nd(rng);
        std::vector<double> a;
        while (static_cast<int>(a.size()) < N) {
            const double v = A(rng);
            bool far = true;
            for (double w : a) far = far && std::abs(v - w) > 0.1;
            if (far) a.push_back(v);
        }
        for (int n = 0; n < N; ++n) CHECK(lemma3_identity(a, n) <= 1e-10);
    }
}

TEST_CASE("power sums over partial fractions in exact rational arithmetic")
{
    using Q = boost::rational<long long>;
    const std::vector<long long> a = {-3, -1, 2, 4, 7};
    const int N = static_cast<int>(a.size());
    for (int n = 0; n <= N; ++n) {
        Q s = 0;
        for (int i = 0; i < N; ++i) {
            Q term = 1;
            for (int k = 0; k < n; ++k) term *= a[i];
            for (int j = 0; j < N; ++j)
                if (j != i) term /= Q(a[i] - a[j]);
            s += term;
        }
        if (n < N - 1) CHECK(s == Q(0));
        if (n == N - 1) CHECK(s == Q(1));
        if (n == N) CHECK(s == Q(std::accumulate(a.begin(), a.end(), 0LL)));
    }
    std::vector<double> ad(a.begin(), a.end());
    for (int n = 0; n < N; ++n) CHECK(lemma3_identity(ad, n) < 1e-13);
}

TEST_CASE("cofactor identity")
{
    CHECK(identity_id_target(1, 0) == 1.0);
    CHECK(identity_id_target(2, 1) == -1.0);
    CHECK(identity_id_target(3, 1) == 0.0);
    const std::vector<DarbouxChain> chains = {
        transparent_chain({1.0}), transparent_chain({1.0, 2.0}), transparent_chain({0.5, 1.3, 2.1}),
        DarbouxChain(BaseKind::Box, {BasisFunction::trig_box(1), BasisFunction::trig_box(2)}, {Action::RemoveLevel, Action::RemoveLevel}),
        oscillator_pair_chain(2)};
    for (const auto& c : chains)
        for (int j = 0; j < c.size(); ++j)
            for (double x : {0.21, 0.47, 0.83}) CHECK(identity_id(c, j, x) <= 1e-9);
}

TEST_CASE("exponential images under the intertwiner")
{
    for (const auto& a : std::vector<std::vector<double>>{{1.0}, {1.0, 2.0}, {0.7, 1.5, 2.4}}) {
        const auto c = transparent_chain(a);
        for (int n = 0; n < c.size(); ++n)
            for (int s : {1, -1}) {
                CHECK(s0_identity(c, n, s, 0.4) <= 1e-9);
                CHECK(s0_identity(c, n, s, -1.3) <= 1e-9);
                CHECK(sl_identity(c, n, s, 0.4, -0.9) <= 1e-9);
            }
    }
    const auto shifted = transparent_chain({1.0, 2.0}, {0.3, 0.0});
    CHECK_THROWS_AS(s0_identity(shifted, 0, 1, 0.1), ConfigurationError);
    CHECK_THROWS_AS(s0_identity(transparent_chain({1.0}), 0, 2, 0.1), ArgumentError);
}

TEST_CASE("Wronskian-fraction representation")
{
    const DarbouxChain c(BaseKind::Box, {BasisFunction::trig_box(1), BasisFunction::trig_box(2)},
                         {Action::RemoveLevel, Action::RemoveLevel});
    for (int n = 0; n < 2; ++n)
        for (double x : {0.2, 0.55, 0.8}) CHECK(appendix_identity(c, n, x) <= 1e-7);
}

TEST_CASE("delta sequence")
{
    const auto K = free_kernel();
    const auto fit = delta_sequence_check(K, [](double y) { return std::exp(-y * y); }, 0.3, {1e-2, 1e-3, 1e-4});
    REQUIRE(fit.errors.size() == 3);
    CHECK(fit.errors[2] < fit.errors[0]);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.05));
    CHECK_THROWS_AS(delta_sequence_check(K, [](double) { return 1.0; }, 0, {1e-3}), ArgumentError);
    CHECK_THROWS_AS(delta_sequence_check(K, [](double) { return 1.0; }, 0, {1e-3, 1e-2}), ArgumentError);
}

TEST_CASE("kernel diagnostics on base models")
{
    const auto K = box_kernel();
    CHECK(schrodinger_residual(K, [](double) { return 0.0; }, 0.3, 0.6, 0.05) < 1e-6);
    CHECK(semigroup_deviation(K, 0.3, 0.6, 0.02, 0.03) < 1e-8);
    CHECK(symmetry_deviation(K, 0.3, 0.6, ComplexTime::wick(0.05)) < 1e-12);
    const auto O = oscillator_kernel();
    CHECK(schrodinger_residual(O, [](double x) { return x * x / 4; }, 0.3, -0.6, 0.5) < 1e-6);
    CHECK(semigroup_deviation(O, 0.3, -0.6, 0.2, 0.3) < 1e-8);
    // a wrong potential is detected
    CHECK(schrodinger_residual(O, [](double) { return 0.0; }, 0.3, -0.6, 0.5) > 1e-2);
}
