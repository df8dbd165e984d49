#include "susy/quadrature.hpp"
#include "susy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace susy::quad {

namespace {

constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980083000, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b;
    std::vector<cplx> value;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

double norm_inf(const std::vector<cplx>& v)
{
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

Segment gk21(const VecIntegrand& f, int dim, double a, double b, std::vector<cplx>& buf)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::vector<cplx> k(dim, 0.0), g(dim, 0.0);
    buf.resize(dim);
    f(c, buf.data());
    for (int d = 0; d < dim; ++d) k[d] = wgk[10] * buf[d];
    for (int i = 0; i < 10; ++i) {
        const double dx = h * xgk[i];
        const double wk = wgk[i];
        const bool gauss = (i % 2 == 1);
        const double wgi = gauss ? wg[i / 2] : 0.0;
        for (double s : {-1.0, 1.0}) {
            f(c + s * dx, buf.data());
            for (int d = 0; d < dim; ++d) {
                k[d] += wk * buf[d];
                if (gauss) g[d] += wgi * buf[d];
            }
        }
    }
    double err = 0.0;
    for (int d = 0; d < dim; ++d) {
        k[d] *= h;
        g[d] *= h;
        err = std::max(err, std::abs(k[d] - g[d]));
        if (!std::isfinite(k[d].real()) || !std::isfinite(k[d].imag()))
            throw ConvergenceError("quadrature: non-finite integrand value");
    }
    return {a, b, std::move(k), err};
}

Result adaptive(const VecIntegrand& f, int dim, double a, double b, const Options& opt)
{
    std::vector<cplx> buf;
    std::priority_queue<Segment> heap;
    Result res;
    res.value.assign(dim, 0.0);
    if (a == b) return res;

    heap.push(gk21(f, dim, a, b, buf));
    res.evaluations = 21;
    auto total = [&]() {
        std::vector<cplx> v(dim, 0.0);
        double e = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            const auto& s = copy.top();
            for (int d = 0; d < dim; ++d) v[d] += s.value[d];
            e += s.err;
            copy.pop();
        }
        return std::make_pair(v, e);
    };

    std::vector<cplx> value = heap.top().value;
    double err = heap.top().err;
    int intervals = 1;
    while (err > std::max(opt.abs_tol, opt.rel_tol * norm_inf(value))) {
        if (intervals >= opt.max_intervals)
            throw ConvergenceError("quadrature: interval budget exhausted on [" + std::to_string(a) + ", "
                                   + std::to_string(b) + "], error estimate " + std::to_string(err));
        Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b))
            throw ConvergenceError("quadrature: interval collapsed to machine resolution");
        Segment l = gk21(f, dim, s.a, m, buf);
        Segment r = gk21(f, dim, m, s.b, buf);
        res.evaluations += 42;
        for (int d = 0; d < dim; ++d) value[d] += l.value[d] + r.value[d] - s.value[d];
        err += l.err + r.err - s.err;
        heap.push(std::move(l));
        heap.push(std::move(r));
        ++intervals;
        // the running sums drift; refresh them now and then
        if (intervals % 64 == 0) std::tie(value, err) = total();
    }
    std::tie(res.value, res.error) = total();
    return res;
}

// March outward from a finite end.  dir = +1 for [a, inf), -1 for (-inf, a].
Result march(const VecIntegrand& f, int dim, double a, int dir, const Options& opt)
{
    Result res;
    res.value.assign(dim, 0.0);
    double w = opt.panel;
    double pos = a;
    int quiet = 0;
    Options inner = opt;
    for (int p = 0; p < opt.max_panels; ++p) {
        const double next = pos + dir * w;
        Result r = dir > 0 ? adaptive(f, dim, pos, next, inner) : adaptive(f, dim, next, pos, inner);
        for (int d = 0; d < dim; ++d) res.value[d] += dir > 0 ? r.value[d] : r.value[d];
        res.error += r.error;
        res.evaluations += r.evaluations;
        const double passed = std::abs(next - a);
        const double mag = norm_inf(r.value);
        if (passed >= opt.min_extent && mag < 1e-3 * opt.abs_tol) {
            if (++quiet >= 2) return res;
        } else {
            quiet = 0;
        }
        pos = next;
        if (p >= 4) w *= 1.5;
    }
    throw ConvergenceError("quadrature: tail contribution did not decay below tolerance");
}

} // namespace

Result integrate(const VecIntegrand& f, int dim, double a, double b, const Options& opt)
{
    if (std::isnan(a) || std::isnan(b)) throw ArgumentError("quadrature: NaN limit");
    if (a > b) {
        Result r = integrate(f, dim, b, a, opt);
        for (auto& v : r.value) v = -v;
        return r;
    }
    const bool ainf = std::isinf(a), binf = std::isinf(b);
    if (!ainf && !binf) return adaptive(f, dim, a, b, opt);
    if (ainf && !binf) return march(f, dim, b, -1, opt);
    if (!ainf && binf) return march(f, dim, a, +1, opt);
    // whole line: split at the origin
    Result l = march(f, dim, 0.0, -1, opt);
    Result r = march(f, dim, 0.0, +1, opt);
    for (int d = 0; d < dim; ++d) l.value[d] += r.value[d];
    l.error += r.error;
    l.evaluations += r.evaluations;
    return l;
}

cplx integrate(const std::function<cplx(double)>& f, double a, double b, const Options& opt)
{
    VecIntegrand g = [&](double z, cplx* out) { out[0] = f(z); };
    return integrate(g, 1, a, b, opt).value[0];
}

double integrate_real(const std::function<double(double)>& f, double a, double b, const Options& opt)
{
    VecIntegrand g = [&](double z, cplx* out) { out[0] = f(z); };
    return integrate(g, 1, a, b, opt).value[0].real();
}

} // namespace susy::quad
