#pragma once

#include "susy/jets.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace susy {

enum class BaseKind { FreeLine, Box, Oscillator };
enum class Action { RemoveLevel, CreateLevel, Isospectral };

std::string to_string(BaseKind k);
std::string to_string(Action a);

/// V0 of the base model: 0 on the line and in the box, x^2/4 for the oscillator.
Potential base_potential(BaseKind k);
/// The lowest `count` point-spectrum energies (empty for the free line).
std::vector<double> point_spectrum(BaseKind k, int count = 64);
/// Bottom of the continuous spectrum, if any.
std::optional<double> continuum_threshold(BaseKind k);
/// Interior sample points used for admissibility scans.
std::vector<double> working_grid(BaseKind k, int n = 401);
/// Integration limits of the base model.
std::pair<double, double> base_interval(BaseKind k);

/// Ordered list of transformation functions with factorization constants.
class DarbouxChain {
public:
    struct Options {
        bool override_admissibility = false;
    };

    DarbouxChain(BaseKind base, std::vector<BasisFunction> functions, std::vector<Action> actions);
    DarbouxChain(BaseKind base, std::vector<BasisFunction> functions, std::vector<Action> actions,
                 Options opt);

    BaseKind base() const { return base_; }
    const std::vector<BasisFunction>& functions() const { return functions_; }
    const std::vector<double>& alphas() const { return alphas_; }
    const std::vector<Action>& actions() const { return actions_; }
    int size() const { return static_cast<int>(functions_.size()); }
    Potential V0() const { return base_potential(base_); }

    /// Chain with functions listed in a different order.
    DarbouxChain permuted(const std::vector<int>& order) const;

private:
    BaseKind base_;
    std::vector<BasisFunction> functions_;
    std::vector<double> alphas_;
    std::vector<Action> actions_;
};

/// Wronskian value and derivatives W, W', ..., W^{(d)}.
struct WronskianJet {
    double x = 0.0;
    std::vector<cplx> derivs;

    cplx value() const { return derivs[0]; }
    int order() const { return static_cast<int>(derivs.size()) - 1; }
};

WronskianJet wronskian(const std::vector<BasisFunction>& fs, double x, int deriv_order = 0);
WronskianJet minor_wronskian(const std::vector<BasisFunction>& fs, int omit, double x, int deriv_order = 0);

double transformed_potential(const DarbouxChain& chain, double x);

/// Supplies a jet of at least the requested order at x.
using JetSupplier = std::function<Jet(double x, int order)>;
JetSupplier supplier(const BasisFunction& f);
JetSupplier plane_wave_supplier(cplx k);   // exp(k x)

/// L f = W(u_0, ..., u_{N-1}, f) / W.
cplx apply_intertwiner(const DarbouxChain& chain, const JetSupplier& f, double x);
/// Jet of L f up to `order`.
Jet intertwiner_jet(const DarbouxChain& chain, const JetSupplier& f, double x, int order);
/// Coefficients c_k with L f = sum_k c_k(x) f^{(k)}, k = 0..N, c_N = 1.
std::vector<cplx> intertwiner_coefficients(const DarbouxChain& chain, double x);

/// v_n = W_n / W.
cplx kernel_solution(const DarbouxChain& chain, int n, double x);
Jet kernel_solution_jet(const DarbouxChain& chain, int n, double x, int order);

/// [prod (E - alpha_i)]^{-1/2}.
double normalization_constant(double E, const std::vector<double>& alphas);

bool check_usl(const std::vector<double>& point_spectrum, const std::vector<double>& alphas);
bool check_nodeless(const std::vector<BasisFunction>& fs, const std::vector<double>& grid);
bool check_nodeless(const DarbouxChain& chain, const std::vector<double>& grid);

struct ComposeReport {
    bool ok = true;
    double sequential_deviation = 0.0;
    double permutation_deviation = 0.0;
    std::string report;
};

/// Compare the N-th order intertwiner against N sequential first-order steps
/// and against a permuted function list.
ComposeReport chain_compose_check(const DarbouxChain& chain, const JetSupplier& f,
                                  const std::vector<double>& xs, double tol = 1e-9);
bool chain_compose_check(const DarbouxChain& chain);

/// Both sides of the Wronskian-fraction representation of the transformed
/// eigenfunctions: lhs = L u~_n, rhs = C_{N,n} W_n / W.  They agree up to
/// `factor` = prod_{j<n} (E_n - E_j): lhs = factor * rhs.
struct AppendixSides {
    cplx lhs;
    cplx rhs;
    double factor;
    double x0;
};
AppendixSides appendix_un(const DarbouxChain& chain, int n, std::optional<double> x0, double x);

} // namespace susy
