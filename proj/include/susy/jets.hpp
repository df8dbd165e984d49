#pragma once

#include "susy/series.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace susy {

using cplx = std::complex<double>;
using Potential = std::function<double(double)>;

/// Value and derivatives f, f', ..., f^{(order)} at a point.
struct Jet {
    double base_point = 0.0;
    std::vector<cplx> derivs;

    Jet() = default;
    Jet(double x, std::vector<cplx> d);

    int order() const { return static_cast<int>(derivs.size()) - 1; }
    const cplx& operator[](int k) const { return derivs[k]; }
    Series series() const { return Series::from_derivatives(derivs); }
};

class BasisFunction;

namespace family {
/// sqrt(2) sin(n pi x) on (0,1), energy n^2 pi^2.
struct TrigBox { int n; };
/// cosh(a x + b), energy -a^2.
struct Cosh { double a; double b; };
/// sinh(a x + b), energy -a^2.
struct Sinh { double a; double b; };
/// p_k(x) exp(-x^2/4), energy k + 1/2 under -d^2 + x^2/4.
struct HermiteGaussian { int k; };
/// exp(sign * a * x), energy -a^2.
struct PlaneExp { int sign; double a; };
/// u(x) * int_{x0}^{x} dy / u(y)^2, the second solution with W(u, .) = 1.
struct Constantx0Integral {
    std::shared_ptr<const BasisFunction> inner;
    double x0;
};
} // namespace family

using Family = std::variant<family::TrigBox, family::Cosh, family::Sinh, family::HermiteGaussian,
                            family::PlaneExp, family::Constantx0Integral>;

/// A closed-form solution of a base Schrodinger equation with its energy.
class BasisFunction {
public:
    explicit BasisFunction(Family f);

    static BasisFunction trig_box(int n) { return BasisFunction(family::TrigBox{n}); }
    static BasisFunction cosh(double a, double b = 0.0) { return BasisFunction(family::Cosh{a, b}); }
    static BasisFunction sinh(double a, double b = 0.0) { return BasisFunction(family::Sinh{a, b}); }
    static BasisFunction hermite_gaussian(int k) { return BasisFunction(family::HermiteGaussian{k}); }
    static BasisFunction plane_exp(int sign, double a) { return BasisFunction(family::PlaneExp{sign, a}); }
    /// Second solution of the same equation, normalized by W(u, partner) = 1.
    static BasisFunction partner(const BasisFunction& u, double x0);

    const Family& family() const { return family_; }
    double energy() const { return energy_; }
    std::string describe() const;

    /// Open interval on which the function is defined.
    double domain_lo() const;
    double domain_hi() const;

    bool is_partner() const { return std::holds_alternative<family::Constantx0Integral>(family_); }

private:
    Family family_;
    double energy_;
};

/// Analytic derivative jet of a basis function.
Jet eval_jet(const BasisFunction& f, double x, int order);

/// Relative residual |-f'' + V0 f - E f| / max(1, |E f|).
double schrodinger_residual_of(const BasisFunction& f, const Potential& V0, double x);

/// Nodes of the function inside [lo, hi] (used to place the base point of partners).
std::vector<double> nodes_in(const BasisFunction& f, double lo, double hi);

/// Midpoint of the nodal interval of u that contains x.
double nodal_midpoint(const BasisFunction& u, double x);

} // namespace susy
