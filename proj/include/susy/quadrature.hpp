#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace susy::quad {

using cplx = std::complex<double>;

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
    // Semi-infinite ranges are covered by successive panels of growing width.
    double panel = 1.0;
    // The panel march does not stop before passing this coordinate
    // (measured from the finite end in the direction of integration).
    double min_extent = 0.0;
    int max_panels = 200;
};

struct Result {
    std::vector<cplx> value;
    double error = 0.0;
    int evaluations = 0;
};

/// Integrand writing `dim` complex components at z.
using VecIntegrand = std::function<void(double z, cplx* out)>;

/// Adaptive Gauss-Kronrod (10/21) quadrature of a vector integrand.
/// Either limit may be infinite.  Throws ConvergenceError on failure.
Result integrate(const VecIntegrand& f, int dim, double a, double b, const Options& opt = {});

/// Scalar convenience wrapper.
cplx integrate(const std::function<cplx(double)>& f, double a, double b, const Options& opt = {});

/// Real scalar convenience wrapper.
double integrate_real(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

inline constexpr double inf = std::numeric_limits<double>::infinity();

} // namespace susy::quad
