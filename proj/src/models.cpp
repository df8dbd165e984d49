#include "susy/models.hpp"
#include "susy/errors.hpp"
#include "susy/specfun.hpp"

#include <cmath>
#include <numbers>

namespace susy {

namespace {

constexpr double pi = std::numbers::pi;

// d^m/dz^m sin(k z + phase)
std::vector<double> sin_jet(double k, double phase, double z, int order)
{
    std::vector<double> d(order + 1);
    double pw = 1.0;
    for (int m = 0; m <= order; ++m) {
        d[m] = pw * std::sin(k * z + phase + m * pi / 2);
        pw *= k;
    }
    return d;
}

// d^m/dz^m sinh(k z + c)
std::vector<double> sinh_jet(double k, double c, double z, int order)
{
    std::vector<double> d(order + 1);
    const double sh = std::sinh(k * z + c), ch = std::cosh(k * z + c);
    double pw = 1.0;
    for (int m = 0; m <= order; ++m) {
        d[m] = pw * ((m % 2 == 0) ? sh : ch);
        pw *= k;
    }
    return d;
}

// d^m/dz^m exp(k z)
std::vector<double> exp_jet(double k, double z, int order)
{
    std::vector<double> d(order + 1);
    const double e = std::exp(k * z);
    double pw = 1.0;
    for (int m = 0; m <= order; ++m) {
        d[m] = pw * e;
        pw *= k;
    }
    return d;
}

// (alpha + beta z) g(z) by Leibniz
std::vector<double> times_linear(double alpha, double beta, const std::vector<double>& g, double z)
{
    std::vector<double> d(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        d[m] = (alpha + beta * z) * g[m];
        if (m > 0) d[m] += double(m) * beta * g[m - 1];
    }
    return d;
}

RealJetFn scaled(RealJetFn f, double s)
{
    return [f = std::move(f), s](double z, int order) {
        auto d = f(z, order);
        for (auto& v : d) v *= s;
        return d;
    };
}

RealJetFn sum(RealJetFn f, RealJetFn g)
{
    return [f = std::move(f), g = std::move(g)](double z, int order) {
        auto a = f(z, order);
        const auto b = g(z, order);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
}

MixedJet gaussian_jet(cplx pref, cplx q00, cplx q10, cplx q01, cplx q20, cplx q02, cplx q11, int nx, int ny)
{
    Series2 q(nx, ny);
    q(0, 0) = q00;
    if (nx >= 1) q(1, 0) = q10;
    if (ny >= 1) q(0, 1) = q01;
    if (nx >= 2) q(2, 0) = q20;
    if (ny >= 2) q(0, 2) = q02;
    if (nx >= 1 && ny >= 1) q(1, 1) = q11;
    const Series2 e = q.exp();
    MixedJet j(nx, ny);
    for (int i = 0; i <= nx; ++i)
        for (int k = 0; k <= ny; ++k) j(i, k) = pref * e.derivative(i, k);
    return j;
}

} // namespace

double SeparableGreen::operator()(double z, double y) const
{
    const auto& terms = (z < y) ? left : right;
    double s = 0.0;
    for (const auto& t : terms) s += t.a(z, 0)[0] * t.b(y, 0)[0];
    return s;
}

cplx BaseModel::kernel(double x, double y, ComplexTime t) const
{
    return kernel_jet(x, y, t, 0, 0)(0, 0);
}

MixedJet BaseModel::kernel_jet(double x, double y, ComplexTime t, int nx, int ny) const
{
    if (t.is_zero()) throw DomainError("kernel: t = 0");
    const cplx tc = t.value();
    const cplx I(0.0, 1.0);
    switch (kind_) {
    case BaseKind::FreeLine: {
        if (t.wick_part < 0.0) throw DomainError("kernel: negative Wick time");
        const double d = x - y;
        const cplx pref = 1.0 / std::sqrt(4.0 * pi * I * tc);
        return gaussian_jet(pref, I * d * d / (4.0 * tc), I * d / (2.0 * tc), -I * d / (2.0 * tc), I / (4.0 * tc),
                            I / (4.0 * tc), -I / (2.0 * tc), nx, ny);
    }
    case BaseKind::Oscillator: {
        if (t.wick_part < 0.0) throw DomainError("kernel: negative Wick time");
        const cplx s = std::sin(tc), c = std::cos(tc);
        if (std::abs(s) == 0.0) throw DomainError("oscillator kernel: caustic time");
        const cplx den = 4.0 * s;
        const cplx pref = 1.0 / std::sqrt(4.0 * pi * I * s);
        return gaussian_jet(pref, I * ((x * x + y * y) * c - 2.0 * x * y) / den, I * (2.0 * x * c - 2.0 * y) / den,
                            I * (2.0 * y * c - 2.0 * x) / den, I * c / den, I * c / den, -2.0 * I / den, nx, ny);
    }
    case BaseKind::Box: {
        if (!(t.wick_part > 0.0)) throw DomainError("box kernel: requires a positive Wick time (the theta nome has |q| = 1)");
        const cplx tau = -pi * tc;
        const int n = nx + ny;
        const auto tm = specfun::theta3_jet(specfun::ThetaArgs(pi * (x - y) / 2.0, tau), n);
        const auto tp = specfun::theta3_jet(specfun::ThetaArgs(pi * (x + y) / 2.0, tau), n);
        MixedJet j(nx, ny);
        for (int i = 0; i <= nx; ++i)
            for (int k = 0; k <= ny; ++k) {
                const double f = std::pow(pi / 2.0, i + k);
                const double sm = (k % 2 == 0) ? 1.0 : -1.0;
                j(i, k) = 0.5 * f * (sm * tm[i + k] - tp[i + k]);
            }
        return j;
    }
    }
    throw DomainError("kernel: unknown base model");
}

SeparableGreen BaseModel::green(double E, bool regularized) const
{
    SeparableGreen g;
    g.energy = E;
    g.regularized = regularized;
    switch (kind_) {
    case BaseKind::FreeLine: {
        if (regularized) throw ConfigurationError("free line: no point spectrum to regularize");
        if (!(E < 0.0)) throw ConfigurationError("free line Green function: only E < 0 is supported on the real axis");
        const double a = std::sqrt(-E);
        g.left.push_back({[a](double z, int o) { return exp_jet(a, z, o); },
                          scaled([a](double y, int o) { return exp_jet(-a, y, o); }, 1.0 / (2.0 * a))});
        g.right.push_back({[a](double z, int o) { return exp_jet(-a, z, o); },
                           scaled([a](double y, int o) { return exp_jet(a, y, o); }, 1.0 / (2.0 * a))});
        return g;
    }
    case BaseKind::Box: {
        RealJetFn fl, fr;
        if (!regularized) {
            double W;
            if (E > 0.0) {
                const double k = std::sqrt(E);
                if (std::abs(std::sin(k)) < 1e-12)
                    throw PoleError("box Green function: energy coincides with an eigenvalue");
                fl = [k](double z, int o) { return sin_jet(k, 0.0, z, o); };
                fr = [k](double z, int o) { return sin_jet(-k, k, z, o); };
                W = k * std::sin(k);
            } else if (E < 0.0) {
                const double k = std::sqrt(-E);
                fl = [k](double z, int o) { return sinh_jet(k, 0.0, z, o); };
                fr = [k](double z, int o) { return sinh_jet(-k, k, z, o); };
                W = k * std::sinh(k);
            } else {
                fl = [](double z, int o) {
                    std::vector<double> d(o + 1, 0.0);
                    d[0] = z;
                    if (o >= 1) d[1] = 1.0;
                    return d;
                };
                fr = [](double z, int o) {
                    std::vector<double> d(o + 1, 0.0);
                    d[0] = 1.0 - z;
                    if (o >= 1) d[1] = -1.0;
                    return d;
                };
                W = 1.0;
            }
            g.left.push_back({fl, scaled(fr, 1.0 / W)});
            g.right.push_back({fr, scaled(fl, 1.0 / W)});
            return g;
        }
        // regularized at E = (m pi)^2
        const double k = std::sqrt(E);
        const double mreal = k / pi;
        const long m = std::lround(mreal);
        if (m < 1 || std::abs(mreal - m) > 1e-9)
            throw ConfigurationError("box: regularization requested away from an eigenvalue");
        const double kk = m * pi;
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;   // cos(m pi)
        const double W1 = sgn / 2.0;                     // dW/dE
        const double W2 = sgn / (4.0 * kk * kk);         // d^2W/dE^2
        fl = [kk](double z, int o) { return sin_jet(kk, 0.0, z, o); };
        fr = [kk](double z, int o) { return sin_jet(-kk, kk, z, o); };
        // E-derivatives of the two solutions
        RealJetFn dfl = [kk](double z, int o) {
            return times_linear(0.0, 1.0 / (2.0 * kk), sin_jet(kk, pi / 2, z, o), z);
        };
        RealJetFn dfr = [kk](double z, int o) {
            return times_linear(1.0 / (2.0 * kk), -1.0 / (2.0 * kk), sin_jet(-kk, kk + pi / 2, z, o), z);
        };
        const double c2 = -W2 / (2.0 * W1 * W1);
        // z < y: [dfl(z) fr(y) + fl(z) dfr(y)]/W1 + c2 fl(z) fr(y)
        g.left.push_back({dfl, scaled(fr, 1.0 / W1)});
        g.left.push_back({fl, sum(scaled(dfr, 1.0 / W1), scaled(fr, c2))});
        // z > y by symmetry
        g.right.push_back({fr, sum(scaled(dfl, 1.0 / W1), scaled(fl, c2))});
        g.right.push_back({dfr, scaled(fl, 1.0 / W1)});
        return g;
    }
    case BaseKind::Oscillator:
        throw ConfigurationError("oscillator: Green-function routes are not available; use the Crum integral routes");
    }
    throw ConfigurationError("green: unknown base model");
}

double BaseModel::kernel_width(ComplexTime t) const
{
    const double a = std::abs(t.value());
    if (kind_ == BaseKind::Oscillator) {
        const double tw = t.wick_part;
        return std::sqrt(4.0 * std::tanh(std::max(tw, 1e-300))) + (tw > 0 ? 0.0 : 1.0);
    }
    return std::sqrt(4.0 * a);
}

double BaseModel::kernel_center(double x, ComplexTime t) const
{
    if (kind_ == BaseKind::Oscillator && t.real_part == 0.0 && t.wick_part > 0.0) return x / std::cosh(t.wick_part);
    return x;
}

} // namespace susy
