#include "susy/specfun.hpp"
#include "susy/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace susy::specfun {

namespace {

constexpr double pi = std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

ThetaArgs::ThetaArgs(cplx z_, cplx tau_) : z(z_), tau(tau_)
{
    if (!finite(z) || !finite(tau))
        throw DomainError("theta3: non-finite argument");
    if (!(tau.imag() > 0.0))
        throw DomainError("theta3: nome |q| >= 1, the series does not converge");
}

cplx ThetaArgs::nome() const { return std::exp(cplx(0.0, pi) * tau); }

cplx theta3(const ThetaArgs& args, double tol)
{
    return theta3_jet(args, 0, tol)[0];
}

std::vector<cplx> theta3_jet(const ThetaArgs& args, int order, double tol)
{
    if (!(tol > 0.0)) throw ArgumentError("theta3: tol must be positive");
    if (order < 0) throw ArgumentError("theta3: negative derivative order");

    // log|q^{n^2}| = -pi Im(tau) n^2
    const double lq = -pi * args.tau.imag();
    const double rq = args.tau.real() * pi;
    const double zi = std::abs(args.z.imag());

    std::vector<cplx> out(order + 1, cplx(0.0));
    out[0] = 1.0;
    for (int n = 1;; ++n) {
        const double dn = n;
        const double logmag = lq * dn * dn;
        if (logmag < -745.0) break;
        const cplx qn2 = std::exp(cplx(logmag, rq * dn * dn));
        const cplx arg = 2.0 * dn * args.z;
        double pw = 1.0;
        double bound = 0.0;
        for (int m = 0; m <= order; ++m) {
            // d^m/dz^m cos(arg) = (2n)^m cos(arg + m pi/2)
            cplx c;
            switch (m & 3) {
            case 0: c = std::cos(arg); break;
            case 1: c = -std::sin(arg); break;
            case 2: c = -std::cos(arg); break;
            default: c = std::sin(arg); break;
            }
            const cplx term = 2.0 * qn2 * pw * c;
            out[m] += term;
            bound = std::max(bound, std::exp(logmag + 2.0 * dn * zi) * pw
                                        / std::max(std::abs(out[m]), 1e-300));
            pw *= 2.0 * dn;
        }
        // terms decay monotonically once n exceeds the saddle of the derivative weight
        if (bound < tol && (order == 0 || 2.0 * dn * dn * (-lq) > order)) break;
        if (n > 100000) throw ConvergenceError("theta3: series did not converge");
    }
    return out;
}

// Algorithm 680 (Poppe and Wijers) for the Faddeeva function.
cplx faddeeva(cplx z)
{
    if (!finite(z)) throw DomainError("faddeeva: non-finite argument");
    constexpr double factor = 1.12837916709551257388;
    constexpr double rmaxreal = 0.5e154;
    constexpr double rmaxexp = 708.503061461606;
    constexpr double rmaxgoni = 3.53711887601422e15;

    const double xi = z.real(), yi = z.imag();
    const double xabs = std::abs(xi), yabs = std::abs(yi);
    const double x = xabs / 6.3, y = yabs / 4.4;
    if (xabs > rmaxreal || yabs > rmaxreal) throw DomainError("faddeeva: argument overflow");

    double qrho = x * x + y * y;
    const double xabsq = xabs * xabs;
    double xquad = xabsq - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;
    const bool a = qrho < 0.085264;

    double u = 0, v = 0, u2 = 0, v2 = 0;
    if (a) {
        qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j, ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -factor * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = factor * (xsum * xabs - ysum * yabs);
        const double daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        double h = 0.0, h2 = 0.0, qlambda = 0.0;
        int kapn = 0, nu = 0;
        if (qrho > 1.0) {
            qrho = std::sqrt(qrho);
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
        } else {
            qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            h2 = 2.0 * h;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
        }
        const bool b = h > 0.0;
        if (b) qlambda = std::pow(h2, kapn);
        double rx = 0, ry = 0, sx = 0, sy = 0;
        for (int n = nu; n >= 0; --n) {
            const double np1 = n + 1;
            double tx = yabs + h + np1 * rx;
            const double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (b && n <= kapn) {
                tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if (h == 0.0) {
            u = factor * rx;
            v = factor * ry;
        } else {
            u = factor * sx;
            v = factor * sy;
        }
        if (yabs == 0.0) u = std::exp(-xabs * xabs);
    }

    if (yi < 0.0) {
        if (a) {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            xquad = -xquad;
            if (yquad > rmaxgoni || xquad > rmaxexp)
                throw DomainError("faddeeva: result overflows");
            const double w1 = 2.0 * std::exp(xquad);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0) v = -v;
    } else if (xi < 0.0) {
        v = -v;
    }
    return {u, v};
}

cplx erfcx_complex(cplx z)
{
    if (!finite(z)) throw DomainError("erfcx: non-finite argument");
    // erfcx(z) = w(iz); the algorithm is used in the upper half plane only
    if (z.real() >= 0.0) return faddeeva(cplx(-z.imag(), z.real()));
    const cplx mz = -z;
    return 2.0 * std::exp(z * z) - faddeeva(cplx(-mz.imag(), mz.real()));
}

cplx erfc_complex(cplx z, double tol)
{
    if (!(tol > 0.0)) throw ArgumentError("erfc: tol must be positive");
    if (!finite(z)) throw DomainError("erfc: non-finite argument");
    if (z.real() >= 0.0) {
        const cplx e = -(z * z);
        if (e.real() < -745.0) return 0.0;
        return std::exp(e) * faddeeva(cplx(-z.imag(), z.real()));
    }
    const cplx mz = -z;
    const cplx e = -(mz * mz);
    if (e.real() < -745.0) return 2.0;
    return 2.0 - std::exp(e) * faddeeva(cplx(-mz.imag(), mz.real()));
}

std::vector<cplx> erfcx_taylor(cplx z0, int order)
{
    if (order < 0) throw ArgumentError("erfcx_taylor: negative order");
    // Cauchy integral on a circle; for large |z0| the radius grows with |z0|
    // so that the coefficients decay geometrically and stay well conditioned.
    const double r = std::max(1.0, 0.5 * std::abs(z0));
    constexpr int M = 64;
    std::vector<cplx> samples(M);
    for (int j = 0; j < M; ++j) {
        const double th = 2.0 * pi * j / M;
        samples[j] = erfcx_complex(z0 + r * std::polar(1.0, th));
    }
    std::vector<cplx> c(order + 1);
    double rk = 1.0;
    for (int k = 0; k <= order; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < M; ++j)
            s += samples[j] * std::polar(1.0, -2.0 * pi * double(k) * j / M);
        c[k] = s / (double(M) * rk);
        rk *= r;
    }
    return c;
}

double hermite_p(int k, double x)
{
    if (k < 0 || k > hermite_max_degree)
        throw ArgumentError("hermite_p: degree " + std::to_string(k) + " outside [0, 64]");
    if (k == 0) return 1.0;
    double pm = 1.0, p = x;
    for (int j = 1; j < k; ++j) {
        const double pn = x * p - j * pm;
        pm = p;
        p = pn;
    }
    return p;
}

std::vector<double> hermite_p_coefficients(int k)
{
    if (k < 0 || k > hermite_max_degree)
        throw ArgumentError("hermite_p: degree " + std::to_string(k) + " outside [0, 64]");
    std::vector<double> pm{1.0}, p{0.0, 1.0};
    if (k == 0) return pm;
    for (int j = 1; j < k; ++j) {
        std::vector<double> pn(j + 2, 0.0);
        for (int i = 0; i <= j; ++i) pn[i + 1] += p[i];
        for (int i = 0; i < j; ++i) pn[i] -= j * pm[i];
        pm = std::move(p);
        p = std::move(pn);
    }
    return p;
}

} // namespace susy::specfun
