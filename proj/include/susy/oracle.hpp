#pragma once

#include "susy/darboux.hpp"
#include "susy/propagators.hpp"

#include <functional>
#include <vector>

namespace susy::oracle {

/// Uniform grid on [a, b] including both ends.
struct GridSpec {
    double a = 0.0, b = 1.0;
    int n_points = 501;

    GridSpec() = default;
    GridSpec(double a_, double b_, int n) : a(a_), b(b_), n_points(n) {}
    static GridSpec with_spacing(double a, double b, double h);

    double h() const { return (b - a) / (n_points - 1); }
    double x(int i) const { return a + i * h(); }
};

/// Lowest eigenpairs of the Dirichlet finite-difference Hamiltonian.
struct EigenSystem {
    GridSpec grid;
    std::vector<double> energies;
    // wavefunctions[m][i] on the full grid, endpoints zero, sum h psi^2 = 1
    std::vector<std::vector<double>> wavefunctions;

    int size() const { return static_cast<int>(energies.size()); }
    /// Linear interpolation of psi_m.
    double psi(int m, double x) const;
};

EigenSystem fd_eigensolve(const Potential& V, const GridSpec& grid, int m_states);

/// sum_m psi_m(x) psi_m(y) exp(-E_m tau).
cplx spectral_kernel(const EigenSystem& eigs, double x, double y, double tau);

/// Same sum over an arbitrary orthonormal basis.
cplx spectral_kernel(const SpectralBasis& basis, double x, double y, double tau);

/// |sum_i alpha_i^n prod_{j != i} (alpha_i - alpha_j)^{-1} - delta_{n,N-1}|.
double lemma3_identity(const std::vector<double>& alphas, int n);

/// Sign convention of the cofactor sum: (1/W) sum_n (-1)^n W_n u_n^{(N-1)}.
double identity_id_target(int N, int j);
/// |(1/W) sum_n (-1)^n W_n u_n^{(j)} - identity_id_target(N, j)|.
double identity_id(const DarbouxChain& chain, int j, double x);

/// Closed form of L e^{sign a_n x} for a transparent chain with zero offsets.
cplx s0_closed_form(const DarbouxChain& chain, int n, int sign, double x);
/// |L e^{sign a_n .}(x) - closed form| / max(1, |closed form|).
double s0_identity(const DarbouxChain& chain, int n, int sign, double x);
/// Product form of L_x L_y e^{sign a_n (x - y)}; deviation scaled as above.
double sl_identity(const DarbouxChain& chain, int n, int sign, double x, double y);

/// Relative deviation of the two sides of the Wronskian-fraction representation of u_n.
double appendix_identity(const DarbouxChain& chain, int n, double x);

struct DeltaFit {
    std::vector<double> eps;
    std::vector<double> errors;
    double slope = 0.0;
};

/// Log-log slope of |int K(x, y, -i eps) f(y) dy - f(x)| against eps.
DeltaFit delta_sequence_check(const Kernel& K, const std::function<double(double)>& f, double x,
                              const std::vector<double>& eps_list);

/// |-d_tau K + d_x^2 K - V K| / scale at Wick time tau (finite differences).
double schrodinger_residual(const Kernel& K, const Potential& V, double x, double y, double tau, double h = 1e-3);

/// |int K(x, z, t1) K(z, y, t2) dz - K(x, y, t1 + t2)| / |K(x, y, t1 + t2)|.
double semigroup_deviation(const Kernel& K, double x, double y, double tau1, double tau2);

/// |K(x, y) - K(y, x)| / max(|K(x, y)|, 1e-300).
double symmetry_deviation(const Kernel& K, double x, double y, ComplexTime t);

} // namespace susy::oracle
