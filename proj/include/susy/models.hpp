#pragma once

#include "susy/darboux.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace susy {

/// t = t_r - i tau_w.
struct ComplexTime {
    double real_part = 0.0;
    double wick_part = 0.0;

    ComplexTime() = default;
    ComplexTime(double tr, double tw) : real_part(tr), wick_part(tw) {}
    static ComplexTime wick(double tau) { return {0.0, tau}; }
    static ComplexTime real(double t) { return {t, 0.0}; }

    cplx value() const { return {real_part, -wick_part}; }
    bool is_zero() const { return real_part == 0.0 && wick_part == 0.0; }
};

/// Matrix of mixed derivatives d^i/dx^i d^j/dy^j, i <= nx, j <= ny.
struct MixedJet {
    int nx = 0, ny = 0;
    std::vector<cplx> d;

    MixedJet(int nx_, int ny_) : nx(nx_), ny(ny_), d((nx_ + 1) * (ny_ + 1), cplx(0.0)) {}
    cplx& operator()(int i, int j) { return d[i * (ny + 1) + j]; }
    const cplx& operator()(int i, int j) const { return d[i * (ny + 1) + j]; }
};

/// A real function of one variable returning f, f', ..., f^{(order)}.
using RealJetFn = std::function<std::vector<double>(double z, int order)>;

/// Green function written as sum_p a_p(z) b_p(y) on either side of z = y.
struct SeparableGreen {
    struct Term {
        RealJetFn a;   // z-dependence
        RealJetFn b;   // y-dependence
    };
    std::vector<Term> left;    // z < y
    std::vector<Term> right;   // z > y
    double energy = 0.0;
    bool regularized = false;

    double operator()(double z, double y) const;
};

/// Evaluable Green function G(x, y, E) with an optional regularized level.
struct GreenFn {
    std::function<cplx(double, double, cplx)> evaluator;
    std::optional<double> regularized_at;

    cplx operator()(double x, double y, cplx E) const { return evaluator(x, y, E); }
};

/// Exactly solvable base models: free line, Dirichlet box (0,1), oscillator -d^2 + x^2/4.
class BaseModel {
public:
    explicit BaseModel(BaseKind kind) : kind_(kind) {}

    BaseKind kind() const { return kind_; }
    Potential potential() const { return base_potential(kind_); }
    std::pair<double, double> interval() const { return base_interval(kind_); }

    cplx kernel(double x, double y, ComplexTime t) const;
    /// Mixed x/y derivatives of the kernel.
    MixedJet kernel_jet(double x, double y, ComplexTime t, int nx, int ny) const;

    /// Separable Green function at real energy E; `regularized` removes the
    /// pole of the base eigenvalue E.
    SeparableGreen green(double E, bool regularized) const;

    /// Width of the kernel in y around its peak, used to place quadrature panels.
    double kernel_width(ComplexTime t) const;
    /// Location of the kernel peak in y for a given x.
    double kernel_center(double x, ComplexTime t) const;

private:
    BaseKind kind_;
};

} // namespace susy
