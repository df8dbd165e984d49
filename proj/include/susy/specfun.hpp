#pragma once

#include <complex>
#include <vector>

namespace susy {

using cplx = std::complex<double>;

namespace specfun {

/// Arguments of the third Jacobi theta function.  The nome is
/// q = exp(i*pi*tau); construction fails unless |q| < 1.
struct ThetaArgs {
    cplx z;
    cplx tau;

    ThetaArgs(cplx z_, cplx tau_);
    cplx nome() const;
};

/// theta_3(z|tau) = 1 + 2 sum_{n>=1} q^{n^2} cos(2 n z).
cplx theta3(const ThetaArgs& args, double tol = 1e-16);

/// Derivatives d^m/dz^m theta_3(z|tau) for m = 0..order.
std::vector<cplx> theta3_jet(const ThetaArgs& args, int order, double tol = 1e-16);

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
cplx faddeeva(cplx z);

/// Complementary error function of complex argument.
cplx erfc_complex(cplx z, double tol = 1e-12);

/// Scaled complementary error function exp(z^2) erfc(z).
cplx erfcx_complex(cplx z);

/// Taylor coefficients c_k, k = 0..order, of erfcx about z0.
std::vector<cplx> erfcx_taylor(cplx z0, int order);

/// Rescaled Hermite polynomial p_k(x) = 2^{-k/2} H_k(x / sqrt 2).
double hermite_p(int k, double x);

/// Monomial coefficients of p_k, lowest degree first.
std::vector<double> hermite_p_coefficients(int k);

inline constexpr int hermite_max_degree = 64;

} // namespace specfun
} // namespace susy
