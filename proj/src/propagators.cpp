#include "susy/propagators.hpp"
#include "susy/errors.hpp"
#include "susy/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace susy {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1(0.0, 1.0);

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Integrate over [lo, hi] with extra breakpoints around the kernel peak.
quad::Result integrate_range(const quad::VecIntegrand& f, int dim, double lo, double hi, double c, double w,
                             const quad::Options& opt)
{
    quad::Result total;
    total.value.assign(dim, 0.0);
    if (!(lo < hi)) return total;
    auto add = [&](const quad::Result& r) {
        for (int d = 0; d < dim; ++d) total.value[d] += r.value[d];
        total.error += r.error;
        total.evaluations += r.evaluations;
    };
    auto finite_part = [&](double a, double b) {
        std::vector<double> pts{a};
        for (double p : {c - 6.0 * w, c - w, c, c + w, c + 6.0 * w})
            if (p > a && p < b) pts.push_back(p);
        pts.push_back(b);
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i + 1] > pts[i]) add(quad::integrate(f, dim, pts[i], pts[i + 1], opt));
    };
    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) {
        finite_part(lo, hi);
    } else if (!lo_inf) {
        const double B = std::max(lo, c + 12.0 * w) + 1.0;
        finite_part(lo, B);
        quad::Options o = opt;
        o.panel = std::max(1.0, w);
        add(quad::integrate(f, dim, B, quad::inf, o));
    } else if (!hi_inf) {
        const double A = std::min(hi, c - 12.0 * w) - 1.0;
        finite_part(A, hi);
        quad::Options o = opt;
        o.panel = std::max(1.0, w);
        add(quad::integrate(f, dim, -quad::inf, A, o));
    } else {
        const double A = c - 12.0 * w - 1.0, B = c + 12.0 * w + 1.0;
        finite_part(A, B);
        quad::Options o = opt;
        o.panel = std::max(1.0, w);
        add(quad::integrate(f, dim, -quad::inf, A, o));
        add(quad::integrate(f, dim, B, quad::inf, o));
    }
    return total;
}

void require_wick(ComplexTime t, const char* what)
{
    if (!(t.wick_part > 0.0))
        throw DomainError(std::string(what) + ": quadrature routes require a positive Wick time");
}

bool on_base_spectrum(BaseKind k, double a)
{
    for (double e : point_spectrum(k))
        if (std::abs(a - e) <= 1e-9 * std::max(1.0, std::abs(e))) return true;
    return false;
}

// Crum integral route: sum_n s_n (-1)^n W_n(y)/W(y) L_x int K_0 u_n over the side of u_n.
cplx crum_route(const DarbouxChain& chain, const std::vector<Side>& sides, double x, double y, ComplexTime t,
                const quad::Options& opt)
{
    require_wick(t, "Crum integral route");
    const int N = chain.size();
    const BaseModel base(chain.base());
    const auto [a, b] = base.interval();
    if (!(y > a && y < b) || !(x > a && x < b)) throw DomainError("Crum integral route: point outside the open interval");

    const auto cx = intertwiner_coefficients(chain, x);
    const cplx W = wronskian(chain.functions(), y).value();
    if (W == cplx(0.0)) throw SingularityError("Crum integral route: W(y) = 0");

    std::vector<int> left, right;
    for (int n = 0; n < N; ++n) (sides[n] == Side::Left ? left : right).push_back(n);

    const double c = base.kernel_center(x, t), w = base.kernel_width(t);
    auto run = [&](const std::vector<int>& idx, double lo, double hi) {
        std::vector<cplx> out(idx.size() * (N + 1), 0.0);
        if (idx.empty()) return out;
        quad::VecIntegrand f = [&](double z, cplx* o) {
            const MixedJet kj = base.kernel_jet(x, z, t, N, 0);
            for (std::size_t i = 0; i < idx.size(); ++i) {
                const cplx u = eval_jet(chain.functions()[idx[i]], z, 0)[0];
                for (int k = 0; k <= N; ++k) o[i * (N + 1) + k] = kj(k, 0) * u;
            }
        };
        return integrate_range(f, static_cast<int>(out.size()), lo, hi, c, w, opt).value;
    };
    const auto IL = run(left, a, y);
    const auto IR = run(right, y, b);

    cplx total = 0.0;
    auto accumulate = [&](const std::vector<int>& idx, const std::vector<cplx>& vals, double side_sign) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const int n = idx[i];
            const cplx ratio = minor_wronskian(chain.functions(), n, y).value() / W;
            cplx lx = 0.0;
            for (int k = 0; k <= N; ++k) lx += cx[k] * vals[i * (N + 1) + k];
            total += side_sign * sign_pow(n) * ratio * lx;
        }
    };
    accumulate(left, IL, sign_pow(N));
    accumulate(right, IR, sign_pow(N - 1));
    return total;
}

// sign factor of the oscillator generating function erfc argument etc.
struct SParts {
    cplx pref;
    Series2 g;    // exponent, bivariate in (J, x)
    cplx h0, hJ, hx;
};

} // namespace

std::string to_string(Method m)
{
    switch (m) {
    case Method::ClosedForm: return "closed";
    case Method::TheoremQuadrature: return "theorem";
    case Method::SpectralSum: return "oracle";
    }
    return "?";
}

SpectralBasis box_basis(int M)
{
    SpectralBasis s;
    for (int n = 1; n <= M; ++n) s.energies.push_back(double(n) * n * pi * pi);
    s.psi = [](int m, double x) { return std::sqrt(2.0) * std::sin((m + 1) * pi * x); };
    return s;
}

cplx free_propagator(double x, double y, ComplexTime t)
{
    if (t.is_zero()) throw DomainError("free propagator: t = 0");
    return BaseModel(BaseKind::FreeLine).kernel(x, y, t);
}

cplx free_green(double x, double y, cplx E)
{
    if (E.imag() == 0.0 && E.real() >= 0.0) throw DomainError("free Green function: E on the branch cut [0, inf)");
    cplx kappa = std::sqrt(E);
    if (kappa.imag() < 0.0) kappa = -kappa;
    return I1 / (2.0 * kappa) * std::exp(I1 * kappa * std::abs(x - y));
}

cplx oscillator_propagator(double x, double y, ComplexTime t)
{
    if (t.wick_part == 0.0 && std::abs(std::sin(t.real_part)) < 1e-14)
        throw DomainError("oscillator propagator: caustic time");
    return BaseModel(BaseKind::Oscillator).kernel(x, y, t);
}

cplx box_propagator0(double x, double y, ComplexTime t)
{
    if (!(t.wick_part > 0.0)) throw DomainError("box propagator: requires a positive Wick time");
    if (x <= 0.0 || x >= 1.0 || y <= 0.0 || y >= 1.0) {
        if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) throw DomainError("box propagator: point outside [0,1]");
        return 0.0;
    }
    const cplx tau = -pi * t.value();
    const cplx tm = specfun::theta3(specfun::ThetaArgs(pi * (x - y) / 2.0, tau));
    const cplx tp = specfun::theta3(specfun::ThetaArgs(pi * (x + y) / 2.0, tau));
    return 0.5 * (tm - tp);
}

cplx spectral_green(const SpectralBasis& eigs, double x, double y, cplx E, std::optional<int> exclude)
{
    cplx s = 0.0;
    for (int m = 0; m < static_cast<int>(eigs.energies.size()); ++m) {
        if (exclude && *exclude == m) continue;
        const cplx den = eigs.energies[m] - E;
        if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(E)))
            throw PoleError("spectral Green function: energy collides with an included level");
        s += eigs.psi(m, x) * eigs.psi(m, y) / den;
    }
    return s;
}

GreenFn base_green(BaseKind kind, std::optional<double> regularized_at)
{
    GreenFn g;
    g.regularized_at = regularized_at;
    if (kind == BaseKind::FreeLine && !regularized_at) {
        g.evaluator = [](double x, double y, cplx E) { return free_green(x, y, E); };
        return g;
    }
    const BaseModel m(kind);
    g.evaluator = [m, regularized_at](double x, double y, cplx E) -> cplx {
        if (E.imag() != 0.0) throw DomainError("base Green function: complex energies only on the free line");
        if (regularized_at && std::abs(E.real() - *regularized_at) > 1e-12 * std::max(1.0, std::abs(*regularized_at)))
            throw ArgumentError("regularized Green function evaluated away from its level");
        return m.green(E.real(), regularized_at.has_value())(x, y);
    };
    return g;
}

quad::Options route_quadrature_defaults()
{
    quad::Options o;
    o.abs_tol = 1e-11;
    o.rel_tol = 1e-12;
    o.max_intervals = 4000;
    return o;
}

// ---------------------------------------------------------------------------
// Green-function route

GreenRoute::GreenRoute(const DarbouxChain& chain, WeightConvention wc, quad::Options opt)
    : chain_(chain), base_(chain.base()), opt_(opt)
{
    const int N = chain.size();
    const auto& al = chain.alphas();
    for (int n = 0; n < N; ++n) {
        double w = 1.0;
        for (int j = 0; j < N; ++j) {
            if (j == n) continue;
            w *= (wc == WeightConvention::Standard) ? 1.0 / (al[n] - al[j]) : 1.0 / (al[j] - al[n]);
        }
        weights_.push_back(w);
        const bool on_spec = on_base_spectrum(chain.base(), al[n]);
        greens_.push_back(base_.green(al[n], on_spec));
        const Action act = chain.actions()[n];
        if (act == Action::CreateLevel || (act == Action::Isospectral && on_spec)) bound_index_.push_back(n);
    }
    const auto [a, b] = base_.interval();
    for (int n : bound_index_) {
        quad::Options o = opt_;
        o.abs_tol = 1e-13;
        o.rel_tol = 1e-13;
        const double nn = quad::integrate_real(
            [&](double z) {
                const cplx v = kernel_solution(chain_, n, z);
                return std::norm(v);
            },
            a, b, o);
        bound_norm_.push_back(1.0 / std::sqrt(nn));
    }
}

cplx GreenRoute::continuous(double x, double y, ComplexTime t) const
{
    require_wick(t, "Green-function route");
    const int N = chain_.size();
    const auto [lo, hi] = base_.interval();
    const auto cx = intertwiner_coefficients(chain_, x);
    const auto cy = intertwiner_coefficients(chain_, y);

    // layout: per Green function, per separable term, N+1 x-derivative orders
    std::vector<std::size_t> offL(N), offR(N);
    std::size_t dimL = 0, dimR = 0;
    for (int n = 0; n < N; ++n) {
        offL[n] = dimL;
        dimL += greens_[n].left.size() * (N + 1);
        offR[n] = dimR;
        dimR += greens_[n].right.size() * (N + 1);
    }
    const double c = base_.kernel_center(x, t), w = base_.kernel_width(t);
    auto run = [&](bool leftside, std::size_t dim, double a, double b) {
        quad::VecIntegrand f = [&](double z, cplx* o) {
            const MixedJet kj = base_.kernel_jet(x, z, t, N, 0);
            for (int n = 0; n < N; ++n) {
                const auto& terms = leftside ? greens_[n].left : greens_[n].right;
                const std::size_t off = leftside ? offL[n] : offR[n];
                for (std::size_t p = 0; p < terms.size(); ++p) {
                    const double av = terms[p].a(z, 0)[0];
                    for (int k = 0; k <= N; ++k) o[off + p * (N + 1) + k] = kj(k, 0) * av;
                }
            }
        };
        return integrate_range(f, static_cast<int>(dim), a, b, c, w, opt_).value;
    };
    const auto A = run(true, dimL, lo, y);
    const auto B = run(false, dimR, y, hi);

    const MixedJet kxy = base_.kernel_jet(x, y, t, N, std::max(N - 1, 0));
    cplx total = 0.0;
    for (int n = 0; n < N; ++n) {
        const auto& G = greens_[n];
        std::vector<std::vector<double>> aL, bL, aR, bR;
        for (const auto& tm : G.left) {
            aL.push_back(tm.a(y, std::max(N - 1, 0)));
            bL.push_back(tm.b(y, N));
        }
        for (const auto& tm : G.right) {
            aR.push_back(tm.a(y, std::max(N - 1, 0)));
            bR.push_back(tm.b(y, N));
        }
        // D_j^{(r)}(y): r-th derivative of the jump sum_p a_p b_p^{(j)}
        auto D = [&](int j, int r) {
            double s = 0.0;
            for (int q = 0; q <= r; ++q) {
                const double bc = binomial(r, q);
                for (std::size_t p = 0; p < aL.size(); ++p) s += bc * aL[p][q] * bL[p][j + r - q];
                for (std::size_t p = 0; p < aR.size(); ++p) s -= bc * aR[p][q] * bR[p][j + r - q];
            }
            return s;
        };
        cplx sum_n = 0.0;
        for (int k = 0; k <= N; ++k) {
            for (int m = 0; m <= N; ++m) {
                cplx F = 0.0;
                for (std::size_t p = 0; p < bL.size(); ++p) F += A[offL[n] + p * (N + 1) + k] * bL[p][m];
                for (std::size_t p = 0; p < bR.size(); ++p) F += B[offR[n] + p * (N + 1) + k] * bR[p][m];
                for (int j = 0; j <= m - 1; ++j)
                    for (int l = 0; l <= m - 1 - j; ++l)
                        F += binomial(m - 1 - j, l) * kxy(k, l) * D(j, m - 1 - j - l);
                sum_n += cx[k] * cy[m] * F;
            }
        }
        total += weights_[n] * sum_n;
    }
    return total;
}

cplx GreenRoute::bound(double x, double y, ComplexTime t) const
{
    cplx s = 0.0;
    for (std::size_t i = 0; i < bound_index_.size(); ++i) {
        const int n = bound_index_[i];
        const double al = chain_.alphas()[n];
        s += bound_norm_[i] * bound_norm_[i] * kernel_solution(chain_, n, x) * kernel_solution(chain_, n, y)
             * std::exp(-I1 * al * t.value());
    }
    return s;
}

cplx theorem1_kernel(Theorem1Kind kind, const DarbouxChain& chain, double x, double y, ComplexTime t)
{
    if (chain.size() != 1) throw ConfigurationError("theorem 1: a single transformation function is required");
    const Action act = chain.actions()[0];
    const double alpha = chain.alphas()[0];
    switch (kind) {
    case Theorem1Kind::Deletion: {
        const auto spec = point_spectrum(chain.base(), 1);
        if (act != Action::RemoveLevel || spec.empty() || std::abs(alpha - spec[0]) > 1e-9 * std::abs(spec[0]))
            throw ConfigurationError("theorem 1 (i): the transformation function must be the ground state");
        return GreenRoute(chain).continuous(x, y, t);
    }
    case Theorem1Kind::Creation: {
        if (act != Action::CreateLevel) throw ConfigurationError("theorem 1 (ii): a level-creating function is required");
        GreenRoute r(chain);
        return r.continuous(x, y, t) + r.bound(x, y, t);
    }
    case Theorem1Kind::Isospectral: {
        if (act == Action::RemoveLevel) throw ConfigurationError("theorem 1 (iii): removal chains are of kind (i)");
        const auto spec = point_spectrum(chain.base(), 1);
        if (!spec.empty() && !(alpha < spec[0]))
            throw ConfigurationError("theorem 1 (iii): the factorization constant must lie below the ground level");
        return GreenRoute(chain).continuous(x, y, t);
    }
    }
    throw ConfigurationError("theorem 1: unknown kind");
}

cplx theorem2_kernel(const DarbouxChain& chain, double x, double y, ComplexTime t, Side branch)
{
    if (chain.size() != 1) throw ConfigurationError("theorem 2: a single transformation function is required");
    const cplx uy = eval_jet(chain.functions()[0], y, 0)[0];
    if (uy == cplx(0.0)) throw SingularityError("theorem 2: u(y) = 0");
    return crum_route(chain, {branch}, x, y, t, route_quadrature_defaults());
}

cplx theorem3_kernel(const DarbouxChain& chain, double x, double y, ComplexTime t, Side branch)
{
    for (Action a : chain.actions())
        if (a != Action::RemoveLevel) throw ConfigurationError("theorem 3: every function must remove a level");
    return crum_route(chain, std::vector<Side>(chain.size(), branch), x, y, t, route_quadrature_defaults());
}

cplx theorem4_kernel(const DarbouxChain& chain, const std::vector<Side>& sides, double x, double y, ComplexTime t)
{
    if (static_cast<int>(sides.size()) != chain.size())
        throw ConfigurationError("theorem 4: one side assignment per transformation function is required");
    return crum_route(chain, sides, x, y, t, route_quadrature_defaults());
}

cplx general_poly_kernel(const DarbouxChain& chain, double x, double y, ComplexTime t, WeightConvention wc)
{
    return GreenRoute(chain, wc)(x, y, t);
}

cplx general_poly_kernel(BaseKind base, double x, double y, ComplexTime t)
{
    return BaseModel(base).kernel(x, y, t);
}

// ---------------------------------------------------------------------------
// box with the ground level removed

cplx box_removed_ground_kernel(double x, double y, ComplexTime t)
{
    if (!(t.wick_part > 0.0)) throw DomainError("box kernel: requires a positive Wick time");
    if (!(x > 0.0 && x < 1.0) || !(y > 0.0 && y < 1.0))
        throw DomainError("box kernel: points must lie in the open interval (0,1)");
    const cplx tc = t.value();
    const double sy = std::sin(pi * y);

    // termwise integrals of the theta series against sin(pi z), cos(pi z) on [0, y]
    auto int_ss = [&](int n) {
        if (n == 1) return y / 2.0 - std::sin(2.0 * pi * y) / (4.0 * pi);
        return 0.5 * (std::sin((n - 1) * pi * y) / ((n - 1) * pi) - std::sin((n + 1) * pi * y) / ((n + 1) * pi));
    };
    auto int_cc = [&](int n) {
        if (n == 1) return y / 2.0 + std::sin(2.0 * pi * y) / (4.0 * pi);
        return 0.5 * (std::sin((n - 1) * pi * y) / ((n - 1) * pi) + std::sin((n + 1) * pi * y) / ((n + 1) * pi));
    };
    cplx S1 = 0.0;
    cplx S2 = std::sin(pi * y) / pi;
    for (int n = 1;; ++n) {
        const cplx qn = std::exp(-I1 * double(n) * double(n) * pi * pi * tc);
        const cplx a = 2.0 * qn * std::sin(n * pi * x) * int_ss(n);
        const cplx b = 2.0 * qn * std::cos(n * pi * x) * int_cc(n);
        S1 += a;
        S2 += b;
        if (std::abs(qn) < 1e-18 * std::max({std::abs(S1), std::abs(S2), 1e-300}) || std::abs(qn) < 1e-300) break;
        if (n > 200000) throw ConvergenceError("box kernel: theta series did not converge");
    }
    const cplx tau = -pi * tc;
    const cplx T3 = 0.5 * (specfun::theta3(specfun::ThetaArgs(pi * (x - y) / 2.0, tau))
                           + specfun::theta3(specfun::ThetaArgs(pi * (x + y) / 2.0, tau)));
    const double cotx = std::cos(pi * x) / std::sin(pi * x);
    return pi * cotx / sy * S1 - pi / sy * S2 + T3;
}

// ---------------------------------------------------------------------------
// oscillator generating function

MixedJet oscillator_generating_S_jet(double J, double x, double y, ComplexTime t, int nJ, int nx)
{
    if (t.is_zero()) throw DomainError("generating function: t = 0");
    const cplx tc = t.value();
    const cplx S = std::sin(tc), C = std::cos(tc);
    if (std::abs(S) < 1e-14) throw DomainError("generating function: sin t = 0");
    // exponent -A z^2 + B z + Cc with A = -i e^{it}/(4 sin t)
    const cplx A = -I1 * std::exp(I1 * tc) / (4.0 * S);
    if (!(A.real() > 0.0)) throw DomainError("generating function: the defining integral diverges at this time");
    const cplx sA = std::sqrt(A);
    const cplx pref = (std::sqrt(pi) / 2.0) / (std::sqrt(4.0 * pi * I1 * S) * sA);

    // B = (J + j) - i (x + s)/(2 sin t);  Cc = i (x + s)^2 cos t / (4 sin t)
    Series2 Bs(nJ, nx), Cs(nJ, nx);
    Bs(0, 0) = J - I1 * x / (2.0 * S);
    if (nJ >= 1) Bs(1, 0) = 1.0;
    if (nx >= 1) Bs(0, 1) = -I1 / (2.0 * S);
    Cs(0, 0) = I1 * x * x * C / (4.0 * S);
    if (nx >= 1) Cs(0, 1) = I1 * 2.0 * x * C / (4.0 * S);
    if (nx >= 2) Cs(0, 2) = I1 * C / (4.0 * S);
    Series2 g = Bs * Bs;
    g *= 1.0 / (4.0 * A);
    for (int i = 0; i <= nJ; ++i)
        for (int j = 0; j <= nx; ++j) g(i, j) += Cs(i, j);

    // erfc argument h = sqrt(A) y - B / (2 sqrt(A)), linear in (J, x)
    const cplx h0 = sA * y - Bs(0, 0) / (2.0 * sA);
    const cplx hJ = -1.0 / (2.0 * sA);
    const cplx hx = I1 / (2.0 * S) / (2.0 * sA);
    Series2 h(nJ, nx);
    h(0, 0) = h0;
    if (nJ >= 1) h(1, 0) = hJ;
    if (nx >= 1) h(0, 1) = hx;
    Series2 gm = h * h;
    for (int i = 0; i <= nJ; ++i)
        for (int j = 0; j <= nx; ++j) gm(i, j) = g(i, j) - gm(i, j);

    const int n = nJ + nx;
    Series2 out(nJ, nx);
    if (h0.real() >= 0.0) {
        const auto X = Series2::compose_linear(specfun::erfcx_taylor(h0, n), hJ, hx, nJ, nx);
        out = gm.exp() * X;
    } else {
        // erfc(h) = 2 - exp(-h^2) erfcx(-h)
        const auto X = Series2::compose_linear(specfun::erfcx_taylor(-h0, n), -hJ, -hx, nJ, nx);
        const Series2 e1 = g.exp();
        const Series2 e2 = gm.exp() * X;
        for (int i = 0; i <= nJ; ++i)
            for (int j = 0; j <= nx; ++j) out(i, j) = 2.0 * e1(i, j) - e2(i, j);
    }
    MixedJet r(nJ, nx);
    for (int i = 0; i <= nJ; ++i)
        for (int j = 0; j <= nx; ++j) r(i, j) = pref * out.derivative(i, j);
    return r;
}

std::vector<cplx> oscillator_generating_S(double J, double x, double y, ComplexTime t, int order)
{
    const MixedJet j = oscillator_generating_S_jet(J, x, y, t, order, 0);
    std::vector<cplx> d(order + 1);
    for (int m = 0; m <= order; ++m) d[m] = j(m, 0);
    return d;
}

double oscillator_pair_Q(int k, double x)
{
    const double p1 = specfun::hermite_p(k + 1, x);
    return p1 * p1 - specfun::hermite_p(k, x) * specfun::hermite_p(k + 2, x);
}

double oscillator_pair_potential(int k, double x)
{
    // Q_k is a polynomial: differentiate via its coefficients
    const auto a = specfun::hermite_p_coefficients(k);
    const auto b = specfun::hermite_p_coefficients(k + 1);
    const auto c = specfun::hermite_p_coefficients(k + 2);
    std::vector<double> q(2 * k + 3, 0.0);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) q[i + j] += b[i] * b[j];
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) q[i + j] -= a[i] * c[j];
    double Q = 0, Q1 = 0, Q2 = 0;
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        Q2 = Q2 * x + 2.0 * Q1;
        Q1 = Q1 * x + Q;
        Q = Q * x + q[i];
    }
    return -2.0 * Q2 / Q + 2.0 * (Q1 / Q) * (Q1 / Q) + x * x / 4.0 + 2.0;
}

DarbouxChain oscillator_pair_chain(int k)
{
    if (k < 0) throw ArgumentError("oscillator pair: negative level index");
    return DarbouxChain(BaseKind::Oscillator, {BasisFunction::hermite_gaussian(k), BasisFunction::hermite_gaussian(k + 1)},
                        {Action::RemoveLevel, Action::RemoveLevel});
}

cplx oscillator_pair_kernel(int k, double x, double y, ComplexTime t)
{
    if (k < 0 || k + 2 > specfun::hermite_max_degree) throw ArgumentError("oscillator pair: level index out of range");
    static thread_local std::vector<std::optional<DarbouxChain>> cache;
    if (static_cast<int>(cache.size()) <= k) cache.resize(k + 1);
    if (!cache[k]) cache[k] = oscillator_pair_chain(k);
    const DarbouxChain& chain = *cache[k];

    const auto pk = specfun::hermite_p_coefficients(k);
    const auto pk1 = specfun::hermite_p_coefficients(k + 1);
    const MixedJet S = oscillator_generating_S_jet(0.0, x, y, t, k + 1, 2);
    const auto cx = intertwiner_coefficients(chain, x);
    const double Q = oscillator_pair_Q(k, y);
    const double ak = specfun::hermite_p(k + 1, y) / Q;
    const double ak1 = specfun::hermite_p(k, y) / Q;
    cplx s = 0.0;
    for (int m = 0; m <= 2; ++m) {
        cplx P0 = 0.0, P1 = 0.0;
        for (std::size_t n = 0; n < pk.size(); ++n) P0 += pk[n] * S(static_cast<int>(n), m);
        for (std::size_t n = 0; n < pk1.size(); ++n) P1 += pk1[n] * S(static_cast<int>(n), m);
        s += cx[m] * (ak * P0 - ak1 * P1);
    }
    return -std::exp(y * y / 4.0) * s;
}

// ---------------------------------------------------------------------------
// transparent potentials

DarbouxChain transparent_chain(std::vector<double> a, std::vector<double> b)
{
    if (a.empty()) throw ArgumentError("transparent chain: at least one wavenumber is required");
    if (b.empty()) b.assign(a.size(), 0.0);
    if (b.size() != a.size()) throw ArgumentError("transparent chain: offsets and wavenumbers differ in length");
    std::vector<int> idx(a.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i] < a[j]; });
    std::vector<BasisFunction> fs;
    for (std::size_t p = 0; p < idx.size(); ++p) {
        const double ai = a[idx[p]], bi = b[idx[p]];
        if (!(ai > 0.0)) throw ArgumentError("transparent chain: wavenumbers must be positive");
        if (p > 0 && ai == a[idx[p - 1]]) throw DegenerateError("transparent chain: coinciding wavenumbers");
        fs.push_back(p % 2 == 0 ? BasisFunction::cosh(ai, bi) : BasisFunction::sinh(ai, bi));
    }
    return DarbouxChain(BaseKind::FreeLine, std::move(fs), std::vector<Action>(a.size(), Action::CreateLevel));
}

std::vector<double> transparent_wavenumbers(const DarbouxChain& chain)
{
    std::vector<double> a;
    for (const auto& f : chain.functions()) {
        const double v = std::visit(overloaded{
                                        [](const family::Cosh& c) { return c.a; },
                                        [](const family::Sinh& s) { return s.a; },
                                        [](const auto&) -> double {
                                            throw ConfigurationError("not a transparent chain (cosh/sinh expected)");
                                        },
                                    },
                                    f.family());
        a.push_back(v);
    }
    if (chain.base() != BaseKind::FreeLine) throw ConfigurationError("transparent chain: free-line base required");
    return a;
}

double transparent_eigenfunction(const DarbouxChain& chain, int n, double x)
{
    const auto a = transparent_wavenumbers(chain);
    if (n < 0 || n >= static_cast<int>(a.size())) throw ArgumentError("transparent eigenfunction: index out of range");
    double p = a[n] / 2.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (static_cast<int>(j) != n) p *= std::abs(a[n] * a[n] - a[j] * a[j]);
    return std::sqrt(p) * kernel_solution(chain, n, x).real();
}

namespace {

struct TransparentParts {
    cplx s;    // sqrt(i t), principal branch
    cplx it;
};

TransparentParts transparent_time(ComplexTime t)
{
    if (t.is_zero()) throw DomainError("transparent kernel: t = 0");
    if (t.wick_part < 0.0) throw DomainError("transparent kernel: sqrt(i t) is ambiguous for negative Wick time");
    const cplx it = I1 * t.value();
    return {std::sqrt(it), it};
}

// T(a, d) = e^{i a^2 t} e^{a d} erfc(a s + d / (2 s))
cplx T_term(double a, double d, const TransparentParts& p)
{
    const cplx z = a * p.s + d / (2.0 * p.s);
    const cplx gauss = -(d * d) / (4.0 * p.it);   // i d^2 / 4t
    if (z.real() >= 0.0) return std::exp(gauss) * specfun::erfcx_complex(z);
    return 2.0 * std::exp(a * a * p.it + a * d) - std::exp(gauss) * specfun::erfcx_complex(-z);
}

// U(a, d) = e^{-a d} T(a, d) = e^{i a^2 t} erfc(a s + d / (2 s))
cplx U_term(double a, double d, const TransparentParts& p)
{
    const cplx z = a * p.s + d / (2.0 * p.s);
    const cplx gauss = -(d * d) / (4.0 * p.it) - a * d;
    if (z.real() >= 0.0) return std::exp(gauss) * specfun::erfcx_complex(z);
    return 2.0 * std::exp(a * a * p.it) - std::exp(gauss) * specfun::erfcx_complex(-z);
}

} // namespace

cplx transparent_I(double a, double x, double y, ComplexTime t)
{
    return transparent_I_derivatives(a, x - y, t, 0)[0];
}

std::vector<cplx> transparent_I_derivatives(double a, double d, ComplexTime t, int order)
{
    if (!(a > 0.0)) throw ArgumentError("transparent I: a must be positive");
    const auto p = transparent_time(t);
    std::vector<cplx> out(order + 1);
    const cplx Tp = T_term(a, d, p), Tm = T_term(a, -d, p);
    out[0] = (Tp + Tm) / (4.0 * a);
    if (order >= 1) out[1] = (Tp - Tm) / 4.0;
    if (order >= 2) {
        // K0 as a function of d and its derivatives
        Series q(order);
        const cplx tc = t.value();
        q[0] = I1 * d * d / (4.0 * tc);
        if (order >= 1) q[1] = I1 * d / (2.0 * tc);
        if (order >= 2) q[2] = I1 / (4.0 * tc);
        const auto K = (q.exp() * (1.0 / std::sqrt(4.0 * pi * I1 * tc))).derivatives();
        for (int m = 2; m <= order; ++m) out[m] = a * a * out[m - 2] - K[m - 2];
    }
    return out;
}

cplx transparent_continuous_part(const DarbouxChain& chain, double x, double y, ComplexTime t)
{
    const auto a = transparent_wavenumbers(chain);
    const int N = chain.size();
    const auto cx = intertwiner_coefficients(chain, x);
    const auto cy = intertwiner_coefficients(chain, y);
    const auto& al = chain.alphas();
    cplx total = 0.0;
    for (int n = 0; n < N; ++n) {
        double w = 1.0;
        for (int j = 0; j < N; ++j)
            if (j != n) w /= (al[n] - al[j]);
        const auto Id = transparent_I_derivatives(a[n], x - y, t, 2 * N);
        cplx s = 0.0;
        for (int k = 0; k <= N; ++k)
            for (int m = 0; m <= N; ++m) s += cx[k] * cy[m] * sign_pow(m) * Id[k + m];
        total += w * s;
    }
    return total;
}

cplx transparent_discrete_part(const DarbouxChain& chain, double x, double y, ComplexTime t)
{
    const auto a = transparent_wavenumbers(chain);
    cplx s = 0.0;
    for (int n = 0; n < chain.size(); ++n)
        s += transparent_eigenfunction(chain, n, x) * transparent_eigenfunction(chain, n, y)
             * std::exp(I1 * a[n] * a[n] * t.value());
    return s;
}

cplx transparent_propagator(const DarbouxChain& chain, double x, double y, ComplexTime t)
{
    const auto a = transparent_wavenumbers(chain);
    const auto p = transparent_time(t);
    const int N = chain.size();
    const double d = x - y;
    const cplx Wx = wronskian(chain.functions(), x).value();
    const cplx Wy = wronskian(chain.functions(), y).value();
    if (Wx == cplx(0.0) || Wy == cplx(0.0)) throw NodelessViolation("transparent kernel: W = 0");
    cplx s = free_propagator(x, y, t);
    for (int n = 0; n < N; ++n) {
        double c = a[n] / 4.0;
        for (int j = 0; j < N; ++j)
            if (j != n) c *= std::abs(a[n] * a[n] - a[j] * a[j]);
        const cplx ratio = minor_wronskian(chain.functions(), n, x).value() * minor_wronskian(chain.functions(), n, y).value()
                           / (Wx * Wy);
        // e^{i a^2 t} [erf_+ + erf_-] = 2 e^{i a^2 t} - U(a, d) - U(a, -d)
        const cplx e = 2.0 * std::exp(a[n] * a[n] * p.it) - U_term(a[n], d, p) - U_term(a[n], -d, p);
        s += c * ratio * e;
    }
    return s;
}

// ---------------------------------------------------------------------------
// factories

Kernel free_kernel()
{
    return {[](double x, double y, ComplexTime t) { return free_propagator(x, y, t); }, BaseKind::FreeLine,
            std::nullopt, Method::ClosedForm, "free"};
}

Kernel oscillator_kernel()
{
    return {[](double x, double y, ComplexTime t) { return oscillator_propagator(x, y, t); }, BaseKind::Oscillator,
            std::nullopt, Method::ClosedForm, "oscillator"};
}

Kernel box_kernel()
{
    return {[](double x, double y, ComplexTime t) { return box_propagator0(x, y, t); }, BaseKind::Box, std::nullopt,
            Method::ClosedForm, "box"};
}

Kernel box_removed_ground()
{
    DarbouxChain c(BaseKind::Box, {BasisFunction::trig_box(1)}, {Action::RemoveLevel});
    return {[](double x, double y, ComplexTime t) { return box_removed_ground_kernel(x, y, t); }, BaseKind::Box, c,
            Method::ClosedForm, "box_removed_ground"};
}

Kernel oscillator_pair(int k)
{
    return {[k](double x, double y, ComplexTime t) { return oscillator_pair_kernel(k, x, y, t); },
            BaseKind::Oscillator, oscillator_pair_chain(k), Method::ClosedForm,
            "oscillator_pair_" + std::to_string(k)};
}

Kernel transparent(const DarbouxChain& chain)
{
    transparent_wavenumbers(chain);
    return {[chain](double x, double y, ComplexTime t) { return transparent_propagator(chain, x, y, t); },
            BaseKind::FreeLine, chain, Method::ClosedForm, "transparent_" + std::to_string(chain.size())};
}

Kernel theorem_route(const DarbouxChain& chain)
{
    bool all_remove = true;
    for (Action a : chain.actions())
        if (a != Action::RemoveLevel) all_remove = false;
    if (all_remove) {
        return {[chain](double x, double y, ComplexTime t) { return theorem3_kernel(chain, x, y, t); }, chain.base(),
                chain, Method::TheoremQuadrature, "theorem3"};
    }
    if (chain.base() == BaseKind::Oscillator)
        throw ConfigurationError("oscillator chains with creation or isospectral steps have no Green-function route; "
                                 "valid routes: oracle");
    auto route = std::make_shared<GreenRoute>(chain);
    return {[route](double x, double y, ComplexTime t) { return (*route)(x, y, t); }, chain.base(), chain,
            Method::TheoremQuadrature, "general_poly"};
}

} // namespace susy
