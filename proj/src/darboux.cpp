#include "susy/darboux.hpp"
#include "susy/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace susy {

namespace {

constexpr double pi = std::numbers::pi;

using Rows = std::vector<int>;

// Terms of d^d/dx^d det[f_c^{(rows_r)}] expressed as determinants with
// raised row orders (row-differentiation rule).
std::vector<std::pair<Rows, double>> derivative_terms(int n, int d)
{
    std::map<Rows, double> cur;
    Rows base(n);
    std::iota(base.begin(), base.end(), 0);
    cur[base] = 1.0;
    for (int it = 0; it < d; ++it) {
        std::map<Rows, double> next;
        for (const auto& [rows, c] : cur) {
            for (int i = 0; i < n; ++i) {
                Rows r = rows;
                r[i] += 1;
                // sort with parity, dropping repeated rows
                int sign = 1;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b + 1 < n - a; ++b)
                        if (r[b] > r[b + 1]) {
                            std::swap(r[b], r[b + 1]);
                            sign = -sign;
                        }
                bool dup = false;
                for (int b = 0; b + 1 < n; ++b)
                    if (r[b] == r[b + 1]) dup = true;
                if (dup) continue;
                next[r] += sign * c;
            }
        }
        cur.swap(next);
    }
    std::vector<std::pair<Rows, double>> out;
    for (const auto& [r, c] : cur)
        if (c != 0.0) out.emplace_back(r, c);
    return out;
}

cplx det_rows(const std::vector<Jet>& jets, const Rows& rows)
{
    const int n = static_cast<int>(jets.size());
    if (n == 0) return 1.0;
    if (n == 1) return jets[0][rows[0]];
    Eigen::MatrixXcd M(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) M(r, c) = jets[c][rows[r]];
    return M.partialPivLu().determinant();
}

std::vector<cplx> wronskian_from_jets(const std::vector<Jet>& jets, int d)
{
    const int n = static_cast<int>(jets.size());
    std::vector<cplx> out(d + 1, 0.0);
    if (n == 0) {
        out[0] = 1.0;
        return out;
    }
    for (int k = 0; k <= d; ++k)
        for (const auto& [rows, c] : derivative_terms(n, k)) out[k] += c * det_rows(jets, rows);
    return out;
}

std::vector<Jet> jets_of(const std::vector<BasisFunction>& fs, double x, int order)
{
    std::vector<Jet> j;
    j.reserve(fs.size());
    for (const auto& f : fs) j.push_back(eval_jet(f, x, order));
    return j;
}

void require_nonzero(cplx w, double x)
{
    if (w == cplx(0.0) || !std::isfinite(std::abs(w))) {
        std::ostringstream os;
        os << "Wronskian vanishes at x = " << x;
        throw NodelessViolation(os.str());
    }
}

bool on_spectrum(double a, const std::vector<double>& spec)
{
    for (double e : spec)
        if (std::abs(a - e) <= 1e-9 * std::max(1.0, std::abs(e))) return true;
    return false;
}

} // namespace

std::string to_string(BaseKind k)
{
    switch (k) {
    case BaseKind::FreeLine: return "free";
    case BaseKind::Box: return "box";
    case BaseKind::Oscillator: return "oscillator";
    }
    return "?";
}

std::string to_string(Action a)
{
    switch (a) {
    case Action::RemoveLevel: return "remove";
    case Action::CreateLevel: return "create";
    case Action::Isospectral: return "isospectral";
    }
    return "?";
}

Potential base_potential(BaseKind k)
{
    if (k == BaseKind::Oscillator) return [](double x) { return 0.25 * x * x; };
    return [](double) { return 0.0; };
}

std::vector<double> point_spectrum(BaseKind k, int count)
{
    std::vector<double> e;
    if (k == BaseKind::Box)
        for (int n = 1; n <= count; ++n) e.push_back(n * n * pi * pi);
    else if (k == BaseKind::Oscillator)
        for (int n = 0; n < count; ++n) e.push_back(n + 0.5);
    return e;
}

std::optional<double> continuum_threshold(BaseKind k)
{
    if (k == BaseKind::FreeLine) return 0.0;
    return std::nullopt;
}

std::vector<double> working_grid(BaseKind k, int n)
{
    std::vector<double> g(n);
    switch (k) {
    case BaseKind::Box:
        for (int i = 0; i < n; ++i) g[i] = (i + 0.5) / n;
        break;
    case BaseKind::FreeLine:
        for (int i = 0; i < n; ++i) g[i] = -10.0 + 20.0 * i / (n - 1);
        break;
    case BaseKind::Oscillator:
        for (int i = 0; i < n; ++i) g[i] = -8.0 + 16.0 * i / (n - 1);
        break;
    }
    return g;
}

std::pair<double, double> base_interval(BaseKind k)
{
    if (k == BaseKind::Box) return {0.0, 1.0};
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

DarbouxChain::DarbouxChain(BaseKind base, std::vector<BasisFunction> functions, std::vector<Action> actions)
    : DarbouxChain(base, std::move(functions), std::move(actions), Options{})
{
}

DarbouxChain::DarbouxChain(BaseKind base, std::vector<BasisFunction> functions, std::vector<Action> actions,
                           Options opt)
    : base_(base), functions_(std::move(functions)), actions_(std::move(actions))
{
    if (functions_.empty()) throw ArgumentError("chain: at least one transformation function is required");
    if (actions_.size() != functions_.size())
        throw ArgumentError("chain: one action per transformation function is required");
    for (const auto& f : functions_) alphas_.push_back(f.energy());
    for (std::size_t i = 0; i < alphas_.size(); ++i)
        for (std::size_t j = i + 1; j < alphas_.size(); ++j)
            if (alphas_[i] == alphas_[j])
                throw DegenerateError("chain: coinciding factorization constants (confluent chains are unsupported)");

    const auto spec = point_spectrum(base_);
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
        const bool in = on_spectrum(alphas_[i], spec);
        if (actions_[i] == Action::RemoveLevel && !in)
            throw ConfigurationError("chain: level removal at an energy outside the base point spectrum");
        if (actions_[i] == Action::CreateLevel && in)
            throw ConfigurationError("chain: a created level cannot sit on a base eigenvalue");
    }
    if (opt.override_admissibility) return;

    if (!check_usl(spec, alphas_))
        throw ConditionViolation("chain: the product of (E - alpha_i) is negative on the base point spectrum");
    if (auto ec = continuum_threshold(base_))
        for (double a : alphas_)
            if (a > *ec)
                throw ConditionViolation("chain: factorization constant inside the continuous spectrum");
    if (!check_nodeless(functions_, working_grid(base_)))
        throw NodelessViolation("chain: the Wronskian has a node on the working grid");
}

DarbouxChain DarbouxChain::permuted(const std::vector<int>& order) const
{
    std::vector<BasisFunction> fs;
    std::vector<Action> as;
    for (int i : order) {
        fs.push_back(functions_.at(i));
        as.push_back(actions_.at(i));
    }
    return DarbouxChain(base_, std::move(fs), std::move(as), Options{true});
}

WronskianJet wronskian(const std::vector<BasisFunction>& fs, double x, int deriv_order)
{
    const int n = static_cast<int>(fs.size());
    const auto jets = jets_of(fs, x, std::max(0, n - 1 + deriv_order));
    WronskianJet w{x, wronskian_from_jets(jets, deriv_order)};
    if (n > 0) {
        bool all_zero = true;
        for (const auto& j : jets)
            if (j[0] != cplx(0.0)) all_zero = false;
        if (all_zero && n > 1) throw DegenerateError("wronskian: all functions vanish at the evaluation point");
    }
    return w;
}

WronskianJet minor_wronskian(const std::vector<BasisFunction>& fs, int omit, double x, int deriv_order)
{
    if (omit < 0 || omit >= static_cast<int>(fs.size())) throw ArgumentError("minor_wronskian: index out of range");
    std::vector<BasisFunction> sub;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i)
        if (i != omit) sub.push_back(fs[i]);
    return wronskian(sub, x, deriv_order);
}

double transformed_potential(const DarbouxChain& chain, double x)
{
    const auto w = wronskian(chain.functions(), x, 2);
    const double W = w.derivs[0].real(), W1 = w.derivs[1].real(), W2 = w.derivs[2].real();
    require_nonzero(W, x);
    return chain.V0()(x) - 2.0 * (W2 * W - W1 * W1) / (W * W);
}

JetSupplier supplier(const BasisFunction& f)
{
    return [f](double x, int order) { return eval_jet(f, x, order); };
}

JetSupplier plane_wave_supplier(cplx k)
{
    return [k](double x, int order) {
        std::vector<cplx> d(order + 1);
        const cplx e = std::exp(k * x);
        cplx pw = 1.0;
        for (int m = 0; m <= order; ++m) {
            d[m] = pw * e;
            pw *= k;
        }
        return Jet(x, d);
    };
}

cplx apply_intertwiner(const DarbouxChain& chain, const JetSupplier& f, double x)
{
    return intertwiner_jet(chain, f, x, 0)[0];
}

Jet intertwiner_jet(const DarbouxChain& chain, const JetSupplier& f, double x, int order)
{
    const int n = chain.size();
    auto jets = jets_of(chain.functions(), x, n + order);
    const auto w = wronskian_from_jets(jets, order);
    require_nonzero(w[0], x);
    Jet fj = f(x, n + order);
    if (fj.order() < n + order) throw ArgumentError("apply_intertwiner: supplied jet is too short");
    jets.push_back(std::move(fj));
    const auto we = wronskian_from_jets(jets, order);
    if (order == 0) return Jet(x, {we[0] / w[0]});
    const Series q = Series::from_derivatives(we) / Series::from_derivatives(w);
    return Jet(x, q.derivatives());
}

std::vector<cplx> intertwiner_coefficients(const DarbouxChain& chain, double x)
{
    const int n = chain.size();
    const auto jets = jets_of(chain.functions(), x, n);
    Rows all(n);
    std::iota(all.begin(), all.end(), 0);
    const cplx W = det_rows(jets, all);
    require_nonzero(W, x);
    // cofactor expansion of the (N+1)x(N+1) determinant along the f column
    std::vector<cplx> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        Rows rows;
        for (int r = 0; r <= n; ++r)
            if (r != k) rows.push_back(r);
        const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
        c[k] = sign * det_rows(jets, rows) / W;
    }
    return c;
}

cplx kernel_solution(const DarbouxChain& chain, int n, double x)
{
    return kernel_solution_jet(chain, n, x, 0)[0];
}

Jet kernel_solution_jet(const DarbouxChain& chain, int n, double x, int order)
{
    if (n < 0 || n >= chain.size()) throw ArgumentError("kernel_solution: index out of range");
    const auto w = wronskian(chain.functions(), x, order);
    require_nonzero(w.value(), x);
    const auto wn = minor_wronskian(chain.functions(), n, x, order);
    if (order == 0) return Jet(x, {wn.value() / w.value()});
    const Series q = Series::from_derivatives(wn.derivs) / Series::from_derivatives(w.derivs);
    return Jet(x, q.derivatives());
}

double normalization_constant(double E, const std::vector<double>& alphas)
{
    double p = 1.0;
    for (double a : alphas) p *= (E - a);
    if (!(p > 0.0)) throw ConditionViolation("normalization_constant: non-positive product of (E - alpha_i)");
    return 1.0 / std::sqrt(p);
}

bool check_usl(const std::vector<double>& spectrum, const std::vector<double>& alphas)
{
    for (double E : spectrum) {
        double p = 1.0;
        bool zero = false;
        for (double a : alphas) {
            if (std::abs(E - a) <= 1e-12 * std::max(1.0, std::abs(E))) zero = true;
            p *= (E - a);
        }
        if (!zero && p < 0.0) return false;
    }
    return true;
}

bool check_nodeless(const std::vector<BasisFunction>& fs, const std::vector<double>& grid)
{
    if (grid.empty()) return true;
    std::vector<double> w(grid.size());
    double wmax = 0.0;
    try {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            w[i] = wronskian(fs, grid[i], 0).value().real();
            wmax = std::max(wmax, std::abs(w[i]));
        }
    } catch (const Error&) {
        return false;
    }
    const double sign = w[0] > 0 ? 1.0 : -1.0;
    for (double v : w)
        if (v == 0.0 || (v > 0 ? 1.0 : -1.0) != sign) return false;

    // refine where |W| dips close to zero between neighbouring points
    const double thresh = 1e-10 * wmax;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (std::min(std::abs(w[i]), std::abs(w[i + 1])) >= thresh) continue;
        std::vector<std::pair<double, double>> stack{{grid[i], grid[i + 1]}};
        int budget = 2000;
        while (!stack.empty() && budget-- > 0) {
            auto [a, b] = stack.back();
            stack.pop_back();
            const double m = 0.5 * (a + b);
            double wm;
            try {
                wm = wronskian(fs, m, 0).value().real();
            } catch (const Error&) {
                return false;
            }
            if (wm == 0.0 || (wm > 0 ? 1.0 : -1.0) != sign) return false;
            if (std::abs(wm) < thresh && (b - a) > 1e-9) {
                stack.emplace_back(a, m);
                stack.emplace_back(m, b);
            }
        }
    }
    return true;
}

bool check_nodeless(const DarbouxChain& chain, const std::vector<double>& grid)
{
    return check_nodeless(chain.functions(), grid);
}

ComposeReport chain_compose_check(const DarbouxChain& chain, const JetSupplier& f, const std::vector<double>& xs,
                                  double tol)
{
    ComposeReport rep;
    const int n = chain.size();
    if (n < 2) {
        rep.report = "single-step chain: nothing to compose";
        return rep;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    const DarbouxChain rev = chain.permuted(perm);

    std::ostringstream os;
    for (double x : xs) {
        const cplx direct = apply_intertwiner(chain, f, x);
        // sequential first-order steps g -> g' - (v'/v) g on Taylor series
        std::vector<Series> F;
        for (const auto& u : chain.functions()) F.push_back(eval_jet(u, x, n).series());
        F.push_back(f(x, n).series());
        for (int k = 0; k < n; ++k) {
            const Series v = F[k];
            const Series logd = v.derivative() / Series(std::vector<cplx>(v.coeffs().begin(), v.coeffs().end() - 1));
            for (int j = k + 1; j <= n; ++j) F[j] = F[j].derivative() - logd * F[j];
        }
        const cplx seq = F[n][0];
        const cplx permuted = apply_intertwiner(rev, f, x);
        const double scale = std::max(1e-300, std::abs(direct));
        const double ds = std::abs(seq - direct) / scale;
        const double dp = std::abs(permuted - direct) / scale;
        rep.sequential_deviation = std::max(rep.sequential_deviation, ds);
        rep.permutation_deviation = std::max(rep.permutation_deviation, dp);
        if (ds > tol || dp > tol) {
            rep.ok = false;
            os << "x=" << x << " direct=" << direct << " sequential=" << seq << " permuted=" << permuted << "\n";
        }
    }
    rep.report = rep.ok ? "ok" : os.str();
    return rep;
}

bool chain_compose_check(const DarbouxChain& chain)
{
    if (chain.size() < 2) return true;
    const auto grid = working_grid(chain.base(), 12);
    std::vector<double> xs(grid.begin() + 1, grid.end() - 1);
    return chain_compose_check(chain, plane_wave_supplier(1.5), xs).ok;
}

AppendixSides appendix_un(const DarbouxChain& chain, int n, std::optional<double> x0, double x)
{
    const int N = chain.size();
    if (n < 0 || n >= N) throw ArgumentError("appendix_un: index out of range");
    const auto& fs = chain.functions();
    const BasisFunction& u = fs[n];
    const double base = x0 ? *x0 : nodal_midpoint(u, x);
    const BasisFunction partner = BasisFunction::partner(u, base);

    AppendixSides s{};
    s.x0 = base;
    s.lhs = apply_intertwiner(chain, supplier(partner), x);
    double C = 1.0, D = 1.0;
    const auto& E = chain.alphas();
    for (int j = n + 1; j < N; ++j) C *= (E[j] - E[n]);
    for (int j = 0; j < n; ++j) D *= (E[n] - E[j]);
    s.rhs = C * kernel_solution(chain, n, x);
    s.factor = D;
    return s;
}

} // namespace susy
