#include "susy/oracle.hpp"
#include "susy/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace susy::oracle {

GridSpec GridSpec::with_spacing(double a, double b, double h)
{
    const int n = static_cast<int>(std::lround((b - a) / h)) + 1;
    return {a, b, n};
}

double EigenSystem::psi(int m, double x) const
{
    if (x <= grid.a || x >= grid.b) return 0.0;
    const double s = (x - grid.a) / grid.h();
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, grid.n_points - 2);
    const double w = s - i;
    const auto& v = wavefunctions[m];
    return (1.0 - w) * v[i] + w * v[i + 1];
}

EigenSystem fd_eigensolve(const Potential& V, const GridSpec& grid, int m_states)
{
    const int n = grid.n_points - 2;
    if (grid.n_points < 3 || !(grid.b > grid.a)) throw ArgumentError("fd_eigensolve: degenerate grid");
    if (m_states < 1 || m_states > n) throw ArgumentError("fd_eigensolve: requested more states than interior points");
    const double h = grid.h();
    std::vector<double> d(n), e(std::max(n - 1, 1));
    for (int i = 0; i < n; ++i) {
        const double v = V(grid.x(i + 1));
        if (!std::isfinite(v)) throw DomainError("fd_eigensolve: potential is not finite on the grid");
        d[i] = 2.0 / (h * h) + v;
    }
    for (int i = 0; i + 1 < n; ++i) e[i] = -1.0 / (h * h);

    // the full decomposition is faster once a sizeable fraction of the spectrum is wanted
    const bool full = m_states > n / 10;
    const int cols = full ? n : m_states;
    lapack_int m = 0;
    std::vector<double> w(n), z(static_cast<std::size_t>(n) * cols);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(cols));
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', full ? 'A' : 'I', n, d.data(), e.data(), 0.0, 0.0, 1,
                                           m_states, 0.0, &m, w.data(), z.data(), n, isuppz.data());
    if (info != 0 || m < m_states) throw ConvergenceError("fd_eigensolve: tridiagonal eigensolver failed");
    m = m_states;

    EigenSystem s;
    s.grid = grid;
    s.energies.assign(w.begin(), w.begin() + m);
    const double scale = 1.0 / std::sqrt(h);
    for (int k = 0; k < m; ++k) {
        std::vector<double> v(grid.n_points, 0.0);
        const double* col = z.data() + static_cast<std::size_t>(k) * n;
        // fix the sign so that the first significant sample is positive
        double sgn = 1.0;
        for (int i = 0; i < n; ++i)
            if (std::abs(col[i]) > 1e-8) {
                sgn = col[i] > 0 ? 1.0 : -1.0;
                break;
            }
        for (int i = 0; i < n; ++i) v[i + 1] = sgn * scale * col[i];
        s.wavefunctions.push_back(std::move(v));
    }
    return s;
}

cplx spectral_kernel(const EigenSystem& eigs, double x, double y, double tau)
{
    if (!(tau > 0.0)) throw DomainError("spectral_kernel: tau must be positive");
    double s = 0.0;
    for (int m = 0; m < eigs.size(); ++m) s += eigs.psi(m, x) * eigs.psi(m, y) * std::exp(-eigs.energies[m] * tau);
    return s;
}

cplx spectral_kernel(const SpectralBasis& basis, double x, double y, double tau)
{
    if (!(tau > 0.0)) throw DomainError("spectral_kernel: tau must be positive");
    double s = 0.0;
    for (int m = 0; m < static_cast<int>(basis.energies.size()); ++m)
        s += basis.psi(m, x) * basis.psi(m, y) * std::exp(-basis.energies[m] * tau);
    return s;
}

double lemma3_identity(const std::vector<double>& alphas, int n)
{
    const int N = static_cast<int>(alphas.size());
    if (n < 0 || n > N - 1) throw ArgumentError("lemma3_identity: power out of range");
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (alphas[i] == alphas[j]) throw DegenerateError("lemma3_identity: coinciding alphas");
    double s = 0.0;
    for (int i = 0; i < N; ++i) {
        double p = std::pow(alphas[i], n);
        for (int j = 0; j < N; ++j)
            if (j != i) p /= (alphas[i] - alphas[j]);
        s += p;
    }
    return std::abs(s - (n == N - 1 ? 1.0 : 0.0));
}

double identity_id_target(int N, int j)
{
    if (j != N - 1) return 0.0;
    return (N % 2 == 1) ? 1.0 : -1.0;
}

double identity_id(const DarbouxChain& chain, int j, double x)
{
    const int N = chain.size();
    if (j < 0 || j > N - 1) throw ArgumentError("identity_id: derivative order out of range");
    const cplx W = wronskian(chain.functions(), x).value();
    if (W == cplx(0.0)) throw NodelessViolation("identity_id: W = 0");
    cplx s = 0.0;
    for (int n = 0; n < N; ++n) {
        const cplx Wn = minor_wronskian(chain.functions(), n, x).value();
        s += ((n % 2 == 0) ? 1.0 : -1.0) * Wn * eval_jet(chain.functions()[n], x, j)[j];
    }
    return std::abs(s / W - identity_id_target(N, j));
}

namespace {

std::vector<double> zero_offset_wavenumbers(const DarbouxChain& chain)
{
    const auto a = transparent_wavenumbers(chain);
    for (const auto& f : chain.functions()) {
        const bool ok = std::visit(
            [](const auto& fam) {
                using T = std::decay_t<decltype(fam)>;
                if constexpr (std::is_same_v<T, family::Cosh> || std::is_same_v<T, family::Sinh>)
                    return fam.b == 0.0;
                else
                    return false;
            },
            f.family());
        if (!ok) throw ConfigurationError("s0 identity: zero offsets b_j are required");
    }
    return a;
}

} // namespace

cplx s0_closed_form(const DarbouxChain& chain, int n, int sign, double x)
{
    const auto a = zero_offset_wavenumbers(chain);
    const int N = chain.size();
    if (n < 0 || n >= N) throw ArgumentError("s0 identity: index out of range");
    if (sign != 1 && sign != -1) throw ArgumentError("s0 identity: sign must be +1 or -1");
    double c = a[n];
    for (int j = 0; j < N; ++j)
        if (j != n) c *= (a[j] * a[j] - a[n] * a[n]);
    // levels are counted from one in the sign factors
    const int m = n + 1;
    const double s1 = (m % 2 == 0) ? 1.0 : -sign;
    const double s2 = ((N + m - 1) % 2 == 0) ? 1.0 : -1.0;
    const cplx W = wronskian(chain.functions(), x).value();
    return s1 * s2 * c * minor_wronskian(chain.functions(), n, x).value() / W;
}

double s0_identity(const DarbouxChain& chain, int n, int sign, double x)
{
    const cplx closed = s0_closed_form(chain, n, sign, x);
    const auto a = transparent_wavenumbers(chain);
    const cplx lhs = apply_intertwiner(chain, plane_wave_supplier(sign * a[n]), x);
    return std::abs(lhs - closed) / std::max(1.0, std::abs(closed));
}

double sl_identity(const DarbouxChain& chain, int n, int sign, double x, double y)
{
    const auto a = transparent_wavenumbers(chain);
    if (n < 0 || n >= chain.size()) throw ArgumentError("sl identity: index out of range");
    // e^{sign a (x - y)} = e^{sign a x} e^{-sign a y}
    const cplx lhs = apply_intertwiner(chain, plane_wave_supplier(sign * a[n]), x)
                     * apply_intertwiner(chain, plane_wave_supplier(-sign * a[n]), y);
    const cplx rhs = s0_closed_form(chain, n, sign, x) * s0_closed_form(chain, n, -sign, y);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

double appendix_identity(const DarbouxChain& chain, int n, double x)
{
    const AppendixSides s = appendix_un(chain, n, std::nullopt, x);
    const cplx lhs = s.lhs, rhs = s.factor * s.rhs;
    return std::abs(lhs - rhs) / std::max(1e-300, std::abs(lhs));
}

DeltaFit delta_sequence_check(const Kernel& K, const std::function<double(double)>& f, double x,
                              const std::vector<double>& eps_list)
{
    if (eps_list.size() < 2) throw ArgumentError("delta_sequence_check: at least two eps values are required");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw ArgumentError("delta_sequence_check: eps must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw ArgumentError("delta_sequence_check: eps must be descending");
    }
    const auto [lo, hi] = base_interval(K.base);
    DeltaFit fit;
    fit.eps = eps_list;
    for (double e : eps_list) {
        const double w = std::sqrt(4.0 * e);
        std::vector<double> pts{lo};
        for (double p : {x - 10.0 * w, x - 2.0 * w, x, x + 2.0 * w, x + 10.0 * w})
            if (p > lo && p < hi) pts.push_back(p);
        pts.push_back(hi);
        std::sort(pts.begin(), pts.end());
        quad::Options o;
        o.abs_tol = 1e-13;
        o.rel_tol = 1e-12;
        cplx v = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double a = std::isinf(pts[i]) ? -40.0 + x : pts[i];
            const double b = std::isinf(pts[i + 1]) ? 40.0 + x : pts[i + 1];
            if (b > a)
                v += quad::integrate([&](double y) { return K(x, y, ComplexTime::wick(e)) * f(y); }, a, b, o);
        }
        fit.errors.push_back(std::abs(v - f(x)));
    }
    // least-squares slope of log(error) against log(eps)
    const std::size_t m = eps_list.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(fit.eps[i]), ly = std::log(std::max(fit.errors[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return fit;
}

double schrodinger_residual(const Kernel& K, const Potential& V, double x, double y, double tau, double h)
{
    auto k = [&](double xx, double tt) { return K(xx, y, ComplexTime::wick(tt)); };
    const cplx k0 = k(x, tau);
    const cplx dxx = (-k(x + 2 * h, tau) + 16.0 * k(x + h, tau) - 30.0 * k0 + 16.0 * k(x - h, tau) - k(x - 2 * h, tau))
                     / (12.0 * h * h);
    const double ht = std::min(h, tau / 8.0);
    const cplx dt = (-k(x, tau + 2 * ht) + 8.0 * k(x, tau + ht) - 8.0 * k(x, tau - ht) + k(x, tau - 2 * ht)) / (12.0 * ht);
    const cplx vk = V(x) * k0;
    const double scale = std::max({std::abs(k0), std::abs(dxx), std::abs(vk), std::abs(dt)});
    return std::abs(-dt + dxx - vk) / scale;
}

double semigroup_deviation(const Kernel& K, double x, double y, double tau1, double tau2)
{
    const auto [lo0, hi0] = base_interval(K.base);
    const double reach = 12.0 * std::sqrt(std::max(tau1, tau2)) + 12.0;
    const double lo = std::isinf(lo0) ? std::min(x, y) - reach : lo0;
    const double hi = std::isinf(hi0) ? std::max(x, y) + reach : hi0;
    quad::Options o;
    o.abs_tol = 1e-13;
    o.rel_tol = 1e-11;
    std::vector<double> pts{lo};
    for (double p : {std::min(x, y), std::max(x, y), 0.0})
        if (p > lo && p < hi) pts.push_back(p);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    cplx v = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] > pts[i])
            v += quad::integrate(
                [&](double z) { return K(x, z, ComplexTime::wick(tau1)) * K(z, y, ComplexTime::wick(tau2)); },
                pts[i], pts[i + 1], o);
    const cplx ref = K(x, y, ComplexTime::wick(tau1 + tau2));
    return std::abs(v - ref) / std::abs(ref);
}

double symmetry_deviation(const Kernel& K, double x, double y, ComplexTime t)
{
    const cplx a = K(x, y, t), b = K(y, x, t);
    return std::abs(a - b) / std::max(std::abs(a), 1e-300);
}

} // namespace susy::oracle
