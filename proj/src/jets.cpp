#include "susy/jets.hpp"
#include "susy/errors.hpp"
#include "susy/quadrature.hpp"
#include "susy/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace susy {

namespace {

constexpr double pi = std::numbers::pi;

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const Jet& j)
{
    for (const auto& d : j.derivs)
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
            throw DomainError("jet: non-finite derivative");
}

// Zeros of p_k from the Jacobi matrix of the probabilists' Hermite recurrence.
std::vector<double> hermite_roots(int k)
{
    if (k == 0) return {};
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
    for (int j = 1; j < k; ++j) J(j - 1, j) = J(j, j - 1) = std::sqrt(double(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    std::vector<double> r(es.eigenvalues().data(), es.eigenvalues().data() + k);
    // polish with Newton on the recurrence
    for (auto& x : r) {
        for (int it = 0; it < 3; ++it) {
            const double p = specfun::hermite_p(k, x);
            const double dp = k * specfun::hermite_p(k - 1, x);
            if (dp != 0.0) x -= p / dp;
        }
    }
    return r;
}

Jet partner_jet(const family::Constantx0Integral& c, double x, int order)
{
    const BasisFunction& u = *c.inner;
    const double lo = std::min(c.x0, x), hi = std::max(c.x0, x);
    for (double z : nodes_in(u, lo, hi)) {
        (void)z;
        throw SingularityError("partner function: a node of the inner function lies between x0 and x");
    }
    const Jet uj = eval_jet(u, x, order);
    if (uj[0] == cplx(0.0)) throw SingularityError("partner function: evaluation at a node");

    // I(x) = int_{x0}^{x} dy / u^2; its derivatives follow from 1/u^2
    quad::Options opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-13;
    const cplx I0 = quad::integrate(
        [&](double y) {
            const cplx v = eval_jet(u, y, 0)[0];
            return 1.0 / (v * v);
        },
        c.x0, x, opt);

    std::vector<cplx> Id(order + 1);
    Id[0] = I0;
    if (order >= 1) {
        const Series us = Series::from_derivatives(
            std::vector<cplx>(uj.derivs.begin(), uj.derivs.begin() + order));
        const Series inv = (us * us).reciprocal();
        const auto d = inv.derivatives();
        for (int j = 1; j <= order; ++j) Id[j] = d[j - 1];
    }
    std::vector<cplx> out(order + 1, 0.0);
    for (int m = 0; m <= order; ++m)
        for (int j = 0; j <= m; ++j) out[m] += binomial(m, j) * uj[m - j] * Id[j];
    return Jet(x, std::move(out));
}

} // namespace

Jet::Jet(double x, std::vector<cplx> d) : base_point(x), derivs(std::move(d))
{
    if (derivs.empty()) throw ArgumentError("jet: at least the value is required");
}

BasisFunction::BasisFunction(Family f) : family_(std::move(f)), energy_(0.0)
{
    energy_ = std::visit(
        overloaded{
            [](const family::TrigBox& t) {
                if (t.n < 1) throw ArgumentError("TrigBox: level index must be >= 1");
                return t.n * t.n * pi * pi;
            },
            [](const family::Cosh& c) {
                if (!(c.a > 0.0)) throw ArgumentError("Cosh: wavenumber must be positive");
                return -c.a * c.a;
            },
            [](const family::Sinh& s) {
                if (!(s.a > 0.0)) throw ArgumentError("Sinh: wavenumber must be positive");
                return -s.a * s.a;
            },
            [](const family::HermiteGaussian& h) {
                if (h.k < 0 || h.k > specfun::hermite_max_degree)
                    throw ArgumentError("HermiteGaussian: level index outside [0, 64]");
                return h.k + 0.5;
            },
            [](const family::PlaneExp& p) {
                if (p.sign != 1 && p.sign != -1) throw ArgumentError("PlaneExp: sign must be +1 or -1");
                if (!(p.a > 0.0)) throw ArgumentError("PlaneExp: wavenumber must be positive");
                return -p.a * p.a;
            },
            [](const family::Constantx0Integral& c) {
                if (!c.inner) throw ArgumentError("partner function without inner function");
                return c.inner->energy();
            },
        },
        family_);
}

BasisFunction BasisFunction::partner(const BasisFunction& u, double x0)
{
    return BasisFunction(family::Constantx0Integral{std::make_shared<const BasisFunction>(u), x0});
}

std::string BasisFunction::describe() const
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const family::TrigBox& t) { os << "TrigBox(" << t.n << ")"; },
                   [&](const family::Cosh& c) { os << "Cosh(" << c.a << "," << c.b << ")"; },
                   [&](const family::Sinh& s) { os << "Sinh(" << s.a << "," << s.b << ")"; },
                   [&](const family::HermiteGaussian& h) { os << "HermiteGaussian(" << h.k << ")"; },
                   [&](const family::PlaneExp& p) { os << "PlaneExp(" << p.sign << "," << p.a << ")"; },
                   [&](const family::Constantx0Integral& c) {
                       os << "Partner(" << c.inner->describe() << ", x0=" << c.x0 << ")";
                   },
               },
               family_);
    return os.str();
}

double BasisFunction::domain_lo() const
{
    if (std::holds_alternative<family::TrigBox>(family_)) return 0.0;
    if (auto* c = std::get_if<family::Constantx0Integral>(&family_)) return c->inner->domain_lo();
    return -quad::inf;
}

double BasisFunction::domain_hi() const
{
    if (std::holds_alternative<family::TrigBox>(family_)) return 1.0;
    if (auto* c = std::get_if<family::Constantx0Integral>(&family_)) return c->inner->domain_hi();
    return quad::inf;
}

Jet eval_jet(const BasisFunction& f, double x, int order)
{
    if (order < 0) throw ArgumentError("eval_jet: negative order");
    if (!std::isfinite(x)) throw DomainError("eval_jet: non-finite abscissa");
    std::vector<cplx> d(order + 1);
    Jet out = std::visit(
        overloaded{
            [&](const family::TrigBox& t) {
                if (x < 0.0 || x > 1.0) throw DomainError("TrigBox: abscissa outside [0,1]");
                const double k = t.n * pi;
                double pw = std::sqrt(2.0);
                for (int m = 0; m <= order; ++m) {
                    d[m] = pw * std::sin(k * x + m * pi / 2);
                    pw *= k;
                }
                // exact zeros at the walls
                if (x == 0.0 || x == 1.0)
                    for (int m = 0; m <= order; m += 2) d[m] = 0.0;
                return Jet(x, d);
            },
            [&](const family::Cosh& c) {
                const double ch = std::cosh(c.a * x + c.b), sh = std::sinh(c.a * x + c.b);
                double pw = 1.0;
                for (int m = 0; m <= order; ++m) {
                    d[m] = pw * ((m % 2 == 0) ? ch : sh);
                    pw *= c.a;
                }
                return Jet(x, d);
            },
            [&](const family::Sinh& s) {
                const double ch = std::cosh(s.a * x + s.b), sh = std::sinh(s.a * x + s.b);
                double pw = 1.0;
                for (int m = 0; m <= order; ++m) {
                    d[m] = pw * ((m % 2 == 0) ? sh : ch);
                    pw *= s.a;
                }
                return Jet(x, d);
            },
            [&](const family::HermiteGaussian& h) {
                // p_k^{(j)} = k!/(k-j)! p_{k-j}
                std::vector<cplx> pd(order + 1, 0.0);
                double fall = 1.0;
                for (int j = 0; j <= order && j <= h.k; ++j) {
                    pd[j] = fall * specfun::hermite_p(h.k - j, x);
                    fall *= (h.k - j);
                }
                Series gauss(order);
                gauss[0] = -x * x / 4.0;
                if (order >= 1) gauss[1] = -x / 2.0;
                if (order >= 2) gauss[2] = -0.25;
                const Series u = Series::from_derivatives(pd) * gauss.exp();
                return Jet(x, u.derivatives());
            },
            [&](const family::PlaneExp& p) {
                const double k = p.sign * p.a;
                const double e = std::exp(k * x);
                double pw = 1.0;
                for (int m = 0; m <= order; ++m) {
                    d[m] = pw * e;
                    pw *= k;
                }
                return Jet(x, d);
            },
            [&](const family::Constantx0Integral& c) { return partner_jet(c, x, order); },
        },
        f.family());
    require_finite(out);
    return out;
}

double schrodinger_residual_of(const BasisFunction& f, const Potential& V0, double x)
{
    const Jet j = eval_jet(f, x, 2);
    const double E = f.energy();
    const cplx r = -j[2] + V0(x) * j[0] - E * j[0];
    return std::abs(r) / std::max(1.0, std::abs(E * j[0]));
}

std::vector<double> nodes_in(const BasisFunction& f, double lo, double hi)
{
    std::vector<double> all = std::visit(
        overloaded{
            [](const family::TrigBox& t) {
                std::vector<double> r;
                for (int j = 1; j < t.n; ++j) r.push_back(double(j) / t.n);
                return r;
            },
            [](const family::Cosh&) { return std::vector<double>{}; },
            [](const family::Sinh& s) { return std::vector<double>{-s.b / s.a}; },
            [](const family::HermiteGaussian& h) { return hermite_roots(h.k); },
            [](const family::PlaneExp&) { return std::vector<double>{}; },
            [](const family::Constantx0Integral&) -> std::vector<double> {
                throw ArgumentError("nodes of a partner function are not tabulated");
            },
        },
        f.family());
    std::vector<double> r;
    for (double z : all)
        if (z >= lo && z <= hi) r.push_back(z);
    return r;
}

double nodal_midpoint(const BasisFunction& u, double x)
{
    double lo = u.domain_lo(), hi = u.domain_hi();
    for (double z : nodes_in(u, lo, hi)) {
        if (z <= x) lo = std::max(lo, z);
        if (z >= x) hi = std::min(hi, z);
    }
    if (lo == x || hi == x) throw SingularityError("nodal_midpoint: abscissa is a node");
    if (std::isinf(lo) && std::isinf(hi)) return 0.0;
    if (std::isinf(lo)) return hi - 1.0;
    if (std::isinf(hi)) return lo + 1.0;
    return 0.5 * (lo + hi);
}

} // namespace susy
