#pragma once

#include "susy/darboux.hpp"
#include "susy/models.hpp"
#include "susy/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace susy {

enum class Method { ClosedForm, TheoremQuadrature, SpectralSum };
std::string to_string(Method m);

/// Evaluable propagator K(x, y, t) with its provenance.
struct Kernel {
    std::function<cplx(double, double, ComplexTime)> evaluator;
    BaseKind base = BaseKind::FreeLine;
    std::optional<DarbouxChain> chain;
    Method method = Method::ClosedForm;
    std::string name;

    cplx operator()(double x, double y, ComplexTime t) const { return evaluator(x, y, t); }
};

/// Orthonormal eigenbasis given by energies and an evaluator psi(m, x).
struct SpectralBasis {
    std::vector<double> energies;
    std::function<double(int, double)> psi;
};

/// sqrt(2) sin(n pi x), n = 1..M.
SpectralBasis box_basis(int M);

// ---- base models ----------------------------------------------------------

cplx free_propagator(double x, double y, ComplexTime t);
/// i/(2 kappa) exp(i kappa |x - y|) with E = kappa^2, Im kappa > 0.
cplx free_green(double x, double y, cplx E);
cplx oscillator_propagator(double x, double y, ComplexTime t);
/// Dirichlet box (0,1): (theta_3^- - theta_3^+)/2.
cplx box_propagator0(double x, double y, ComplexTime t);

/// sum' psi_m(x) psi_m(y) / (E_m - E), the prime omitting level `exclude`.
cplx spectral_green(const SpectralBasis& eigs, double x, double y, cplx E, std::optional<int> exclude = std::nullopt);

/// Closed-form Green function of a base model (real energies), optionally
/// regularized at an eigenvalue.
GreenFn base_green(BaseKind kind, std::optional<double> regularized_at = std::nullopt);

// ---- theorem routes (quadrature) -------------------------------------------

enum class Side { Left, Right };
enum class Theorem1Kind { Deletion, Creation, Isospectral };
enum class WeightConvention {
    Standard,          // prod_{j != n} 1/(alpha_n - alpha_j)
    AdditionLiteral    // prod_{j != n} 1/(alpha_j - alpha_n)
};

quad::Options route_quadrature_defaults();

/// One-step relations through the Green function of the base model.
cplx theorem1_kernel(Theorem1Kind kind, const DarbouxChain& chain, double x, double y, ComplexTime t);
/// K_1 = -(1/u(y)) L_x int_a^y K_0 u = (1/u(y)) L_x int_y^b K_0 u.
cplx theorem2_kernel(const DarbouxChain& chain, double x, double y, ComplexTime t, Side branch = Side::Left);
/// N-fold deletion through Wronskian minors; both integral branches.
cplx theorem3_kernel(const DarbouxChain& chain, double x, double y, ComplexTime t, Side branch = Side::Left);
/// Isospectral chains: side[n] records at which infinity u_n vanishes.
cplx theorem4_kernel(const DarbouxChain& chain, const std::vector<Side>& sides, double x, double y, ComplexTime t);

/// L_x L_y sum_n w_n int K_0 G~_0(., ., alpha_n) plus bound-state terms.
cplx general_poly_kernel(const DarbouxChain& chain, double x, double y, ComplexTime t,
                         WeightConvention wc = WeightConvention::Standard);
/// Empty chain: the base kernel itself.
cplx general_poly_kernel(BaseKind base, double x, double y, ComplexTime t);

/// Precomputed general route (bound-state norms are computed once).
class GreenRoute {
public:
    GreenRoute(const DarbouxChain& chain, WeightConvention wc = WeightConvention::Standard,
               quad::Options opt = route_quadrature_defaults());

    /// The Green-function integral term only.
    cplx continuous(double x, double y, ComplexTime t) const;
    /// Bound-state terms phi(x) phi(y) exp(-i alpha t) of created / re-created levels.
    cplx bound(double x, double y, ComplexTime t) const;
    cplx operator()(double x, double y, ComplexTime t) const { return continuous(x, y, t) + bound(x, y, t); }

    const std::vector<double>& weights() const { return weights_; }

private:
    DarbouxChain chain_;
    BaseModel base_;
    std::vector<double> weights_;
    std::vector<SeparableGreen> greens_;
    std::vector<int> bound_index_;
    std::vector<double> bound_norm_;
    quad::Options opt_;
};

// ---- closed forms -----------------------------------------------------------

/// Box with the ground level removed (V_1 = 2 pi^2 / sin^2 pi x).
cplx box_removed_ground_kernel(double x, double y, ComplexTime t);

/// J-derivatives d^m S / dJ^m, m = 0..order, of
/// S = int_y^inf K_osc(x, z, t) exp(-z^2/4 + J z) dz.
std::vector<cplx> oscillator_generating_S(double J, double x, double y, ComplexTime t, int order);
/// Mixed derivatives d^i/dJ^i d^j/dx^j S at (J, x), i <= nJ, j <= nx.
MixedJet oscillator_generating_S_jet(double J, double x, double y, ComplexTime t, int nJ, int nx);

/// Q_k = p_{k+1}^2 - p_k p_{k+2}.
double oscillator_pair_Q(int k, double x);
/// V^{(k,k+1)} from Q_k.
double oscillator_pair_potential(int k, double x);
/// Chain {u_k, u_{k+1}} of the oscillator.
DarbouxChain oscillator_pair_chain(int k);
/// Propagator of -d^2 + V^{(k,k+1)}.
cplx oscillator_pair_kernel(int k, double x, double y, ComplexTime t);

/// Alternating cosh / sinh chain with ascending wavenumbers.
DarbouxChain transparent_chain(std::vector<double> a, std::vector<double> b = {});
/// Wavenumbers of a transparent chain in chain order.
std::vector<double> transparent_wavenumbers(const DarbouxChain& chain);
/// Normalized bound state at -a_n^2.
double transparent_eigenfunction(const DarbouxChain& chain, int n, double x);
/// (4 pi i t)^{-1/2} int exp(i (x-z)^2/4t - a|z-y|) dz / 2a.
cplx transparent_I(double a, double x, double y, ComplexTime t);
/// Derivatives of I with respect to d = x - y, orders 0..order.
std::vector<cplx> transparent_I_derivatives(double a, double d, ComplexTime t, int order);
/// L_x L_y sum_n w_n I(a_n), closed form.
cplx transparent_continuous_part(const DarbouxChain& chain, double x, double y, ComplexTime t);
/// sum_n phi_n(x) phi_n(y) exp(i a_n^2 t).
cplx transparent_discrete_part(const DarbouxChain& chain, double x, double y, ComplexTime t);
cplx transparent_propagator(const DarbouxChain& chain, double x, double y, ComplexTime t);

// ---- kernel factories ---------------------------------------------------------

Kernel free_kernel();
Kernel oscillator_kernel();
Kernel box_kernel();
Kernel box_removed_ground();
Kernel oscillator_pair(int k);
Kernel transparent(const DarbouxChain& chain);
/// Quadrature route matching the chain (Crum integrals for deletions, Green route otherwise).
Kernel theorem_route(const DarbouxChain& chain);

} // namespace susy
