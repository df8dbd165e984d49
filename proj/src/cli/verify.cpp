#include "susy/cli.hpp"
#include "susy/errors.hpp"
#include "susy/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

namespace susy::cli {

namespace {

struct Suite {
    std::vector<CheckResult>& out;

    void record(const std::string& name, double tol, const std::function<double()>& measure)
    {
        CheckResult r;
        r.name = name;
        r.tolerance = tol;
        try {
            r.deviation = measure();
            r.pass = std::isfinite(r.deviation) && r.deviation <= tol;
        } catch (const std::exception& e) {
            r.deviation = std::nan("");
            r.pass = false;
            r.note = e.what();
        }
        out.push_back(r);
    }
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void identities(Suite& s, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(-10.0, 10.0), X(-2.0, 2.0);
    std::uniform_int_distribution<int> Nd(2, 8);

    s.record("lemma3_random_200", 1e-10, [&] {
        double worst = 0.0;
        for (int inst = 0; inst < 200; ++inst) {
            const int N = Nd(rng);
            std::vector<double> a;
            while (static_cast<int>(a.size()) < N) {
                const double v = U(rng);
                bool ok = true;
                for (double w : a) ok = ok && std::abs(v - w) >= 0.1;
                if (ok) a.push_back(v);
            }
            for (int n = 0; n < N; ++n) worst = std::max(worst, oracle::lemma3_identity(a, n));
        }
        return worst;
    });

    const std::vector<std::vector<double>> wavenumbers{{1.0}, {1.0, 2.0}, {0.8, 1.5, 2.3}};
    for (const auto& a : wavenumbers) {
        const auto chain = transparent_chain(a);
        const int N = chain.size();
        s.record("identity_id_N" + std::to_string(N), 1e-9, [&] {
            double worst = 0.0;
            for (int rep = 0; rep < 5; ++rep) {
                const double x = X(rng);
                for (int j = 0; j < N; ++j) worst = std::max(worst, oracle::identity_id(chain, j, x));
            }
            return worst;
        });
        s.record("s0_N" + std::to_string(N), 1e-9, [&] {
            double worst = 0.0;
            for (int rep = 0; rep < 5; ++rep) {
                const double x = X(rng);
                for (int n = 0; n < N; ++n)
                    for (int sg : {1, -1}) worst = std::max(worst, oracle::s0_identity(chain, n, sg, x));
            }
            return worst;
        });
        s.record("sl_N" + std::to_string(N), 1e-9, [&] {
            double worst = 0.0;
            for (int rep = 0; rep < 5; ++rep) {
                const double x = X(rng), y = X(rng);
                for (int n = 0; n < N; ++n)
                    for (int sg : {1, -1}) worst = std::max(worst, oracle::sl_identity(chain, n, sg, x, y));
            }
            return worst;
        });
    }
    s.record("appendix_box_N2", 1e-7, [&] {
        const DarbouxChain c(BaseKind::Box, {BasisFunction::trig_box(1), BasisFunction::trig_box(2)},
                             {Action::RemoveLevel, Action::RemoveLevel});
        std::uniform_real_distribution<double> B(0.05, 0.95);
        double worst = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const double x = B(rng);
            for (int n = 0; n < 2; ++n) worst = std::max(worst, oracle::appendix_identity(c, n, x));
        }
        return worst;
    });
}

void propagators(Suite& s, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> B(0.1, 0.9), L(-2.0, 2.0), T(0.3, 1.0), Tb(0.02, 0.1);
    const DarbouxChain box1(BaseKind::Box, {BasisFunction::trig_box(1)}, {Action::RemoveLevel});
    const DarbouxChain box2(BaseKind::Box, {BasisFunction::trig_box(1), BasisFunction::trig_box(2)},
                            {Action::RemoveLevel, Action::RemoveLevel});
    const auto pair = oscillator_pair_chain(2);
    const auto tr1 = transparent_chain({1.0});
    const auto tr2 = transparent_chain({1.0, 2.0});

    s.record("theorem2_two_branches_box", 1e-8, [&] {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double x = B(rng), y = B(rng);
            const auto t = ComplexTime::wick(Tb(rng));
            worst = std::max(worst, rel(theorem2_kernel(box1, x, y, t, Side::Left),
                                        theorem2_kernel(box1, x, y, t, Side::Right)));
        }
        return worst;
    });
    s.record("closed_vs_theorem2_box", 1e-6, [&] {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double x = B(rng), y = B(rng);
            const auto t = ComplexTime::wick(0.05);
            worst = std::max(worst, rel(theorem2_kernel(box1, x, y, t), box_removed_ground_kernel(x, y, t)));
        }
        return worst;
    });
    s.record("theorem3_two_branches_pair", 1e-7, [&] {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double x = L(rng), y = L(rng);
            const auto t = ComplexTime::wick(T(rng));
            worst = std::max(worst, rel(theorem3_kernel(pair, x, y, t, Side::Left),
                                        theorem3_kernel(pair, x, y, t, Side::Right)));
        }
        return worst;
    });
    s.record("closed_vs_theorem3_pair", 1e-6, [&] {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double x = L(rng), y = L(rng);
            const auto t = ComplexTime::wick(0.5);
            worst = std::max(worst, rel(theorem3_kernel(pair, x, y, t), oscillator_pair_kernel(2, x, y, t)));
        }
        return worst;
    });
    s.record("general_route_vs_theorem3_box_N2", 1e-5, [&] {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double x = B(rng), y = B(rng);
            const auto t = ComplexTime::wick(0.05);
            worst = std::max(worst, rel(general_poly_kernel(box2, x, y, t), theorem3_kernel(box2, x, y, t)));
        }
        return worst;
    });
    s.record("general_route_vs_transparent_N2", 1e-5, [&] {
        const GreenRoute g(tr2);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double x = L(rng), y = L(rng);
            const auto t = ComplexTime::wick(0.5);
            worst = std::max(worst, rel(g(x, y, t), transparent_propagator(tr2, x, y, t)));
        }
        return worst;
    });
    s.record("theorem4_vs_theorem1_isospectral", 1e-5, [&] {
        const DarbouxChain iso(BaseKind::FreeLine, {BasisFunction::plane_exp(1, 1.0)}, {Action::Isospectral});
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double x = L(rng), y = L(rng);
            const auto t = ComplexTime::wick(0.5);
            worst = std::max(worst, rel(theorem4_kernel(iso, {Side::Left}, x, y, t),
                                        theorem1_kernel(Theorem1Kind::Isospectral, iso, x, y, t)));
        }
        return worst;
    });
    s.record("transparent_N1_vs_fd_oracle", 1e-4, [&] {
        const auto eigs = oracle::fd_eigensolve([&](double x) { return transformed_potential(tr1, x); },
                                                oracle::GridSpec::with_spacing(-25.0, 25.0, 0.01), 1200);
        double dev = 0.0, scale = 0.0;
        for (double x = -3.0; x <= 3.0 + 1e-9; x += 1.0)
            for (double y = -3.0; y <= 3.0 + 1e-9; y += 1.0) {
                const cplx ref = oracle::spectral_kernel(eigs, x, y, 0.5);
                dev = std::max(dev, std::abs(transparent_propagator(tr1, x, y, ComplexTime::wick(0.5)) - ref));
                scale = std::max(scale, std::abs(ref));
            }
        return dev / scale;
    });
    const std::vector<Kernel> kernels{free_kernel(),  oscillator_kernel(), box_kernel(),      box_removed_ground(),
                                      oscillator_pair(2), transparent(tr1), transparent(tr2)};
    for (const auto& K : kernels) {
        const bool box = K.base == BaseKind::Box;
        s.record("symmetry_" + K.name, 1e-9, [&] {
            double worst = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double x = box ? B(rng) : L(rng), y = box ? B(rng) : L(rng);
                worst = std::max(worst, oracle::symmetry_deviation(K, x, y, ComplexTime(0.2, box ? 0.05 : 0.5)));
            }
            return worst;
        });
        s.record("semigroup_" + K.name, 1e-5, [&] {
            const double x = box ? B(rng) : L(rng), y = box ? B(rng) : L(rng);
            return oracle::semigroup_deviation(K, x, y, box ? 0.02 : 0.25, box ? 0.03 : 0.25);
        });
    }
}

} // namespace

bool VerifyReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::to_json(bool include_runtime) const
{
    nlohmann::ordered_json j;
    j["library"] = std::string("susyprop ") + SUSYPROP_VERSION;
    j["suite"] = suite;
    j["seed"] = seed;
    j["all_pass"] = all_pass();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        if (std::isfinite(c.deviation))
            e["deviation"] = c.deviation;
        else
            e["deviation"] = nullptr;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        if (!c.note.empty()) e["note"] = c.note;
        arr.push_back(e);
    }
    j["checks"] = arr;
    if (include_runtime) j["runtime_seconds"] = runtime_seconds;
    return j.dump(1) + "\n";
}

VerifyReport cmd_verify(const std::string& suite, std::uint64_t seed)
{
    if (suite != "identities" && suite != "propagators" && suite != "all")
        throw ArgumentError("verify: unknown suite '" + suite + "' (expected identities | propagators | all)");
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.suite = suite;
    rep.seed = seed;
    Suite s{rep.checks};
    std::mt19937_64 rng(seed);
    if (suite != "propagators") identities(s, rng);
    if (suite != "identities") propagators(s, rng);
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace susy::cli
