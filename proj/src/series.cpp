#include "susy/series.hpp"
#include "susy/errors.hpp"

#include <algorithm>
#include <cmath>

namespace susy {

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

Series Series::from_derivatives(const std::vector<cplx>& d)
{
    std::vector<cplx> c(d.size());
    double f = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (k > 0) f *= double(k);
        c[k] = d[k] / f;
    }
    return Series(std::move(c));
}

Series Series::variable(int order, cplx x0)
{
    Series s(order, x0);
    if (order >= 1) s[1] = 1.0;
    return s;
}

std::vector<cplx> Series::derivatives() const
{
    std::vector<cplx> d(c_.size());
    double f = 1.0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (k > 0) f *= double(k);
        d[k] = c_[k] * f;
    }
    return d;
}

Series& Series::operator+=(const Series& o)
{
    const int n = std::min(order(), o.order());
    c_.resize(n + 1);
    for (int k = 0; k <= n; ++k) c_[k] += o.c_[k];
    return *this;
}

Series& Series::operator-=(const Series& o)
{
    const int n = std::min(order(), o.order());
    c_.resize(n + 1);
    for (int k = 0; k <= n; ++k) c_[k] -= o.c_[k];
    return *this;
}

Series& Series::operator*=(cplx a)
{
    for (auto& c : c_) c *= a;
    return *this;
}

Series operator*(const Series& a, const Series& b)
{
    const int n = std::min(a.order(), b.order());
    Series r(n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
}

Series Series::reciprocal() const
{
    if (c_[0] == cplx(0.0)) throw SingularityError("series reciprocal of a vanishing value");
    const int n = order();
    Series r(n);
    r.c_[0] = 1.0 / c_[0];
    for (int k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += c_[j] * r.c_[k - j];
        r.c_[k] = -s / c_[0];
    }
    return r;
}

Series operator/(const Series& a, const Series& b) { return a * b.reciprocal(); }

Series Series::derivative() const
{
    if (order() == 0) return Series(0);
    std::vector<cplx> d(order());
    for (int k = 1; k <= order(); ++k) d[k - 1] = double(k) * c_[k];
    return Series(std::move(d));
}

Series Series::exp() const
{
    const int n = order();
    Series e(n);
    e.c_[0] = std::exp(c_[0]);
    // e' = f' e  ->  k e_k = sum_{j=1..k} j f_j e_{k-j}
    for (int k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += double(j) * c_[j] * e.c_[k - j];
        e.c_[k] = s / double(k);
    }
    return e;
}

cplx Series2::derivative(int i, int j) const { return (*this)(i, j) * factorial(i) * factorial(j); }

Series2 operator*(const Series2& a, const Series2& b)
{
    const int nx = std::min(a.nx_, b.nx_), ny = std::min(a.ny_, b.ny_);
    Series2 r(nx, ny);
    for (int i1 = 0; i1 <= nx; ++i1)
        for (int j1 = 0; j1 <= ny; ++j1) {
            const cplx av = a(i1, j1);
            if (av == cplx(0.0)) continue;
            for (int i2 = 0; i1 + i2 <= nx; ++i2)
                for (int j2 = 0; j1 + j2 <= ny; ++j2) r(i1 + i2, j1 + j2) += av * b(i2, j2);
        }
    return r;
}

Series2& Series2::operator*=(cplx a)
{
    for (auto& c : c_) c *= a;
    return *this;
}

Series2 Series2::exp() const
{
    Series2 e(nx_, ny_);
    const Series2& q = *this;
    e(0, 0) = std::exp(q(0, 0));
    // first column from the r-direction ODE
    for (int j = 0; j < ny_; ++j) {
        cplx s = 0.0;
        for (int b = 0; b <= j; ++b) s += double(b + 1) * q(0, b + 1) * e(0, j - b);
        e(0, j + 1) = s / double(j + 1);
    }
    // remaining rows from the s-direction ODE
    for (int i = 0; i < nx_; ++i)
        for (int j = 0; j <= ny_; ++j) {
            cplx s = 0.0;
            for (int a = 0; a <= i; ++a)
                for (int b = 0; b <= j; ++b) s += double(a + 1) * q(a + 1, b) * e(i - a, j - b);
            e(i + 1, j) = s / double(i + 1);
        }
    return e;
}

Series2 Series2::compose_linear(const std::vector<cplx>& f, cplx hs, cplx hr, int nx, int ny)
{
    Series2 r(nx, ny);
    std::vector<cplx> ps(nx + 1, 1.0), pr(ny + 1, 1.0);
    for (int i = 1; i <= nx; ++i) ps[i] = ps[i - 1] * hs;
    for (int j = 1; j <= ny; ++j) pr[j] = pr[j - 1] * hr;
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j) {
            const int k = i + j;
            if (k >= static_cast<int>(f.size())) continue;
            r(i, j) = f[k] * binomial(k, i) * ps[i] * pr[j];
        }
    return r;
}

} // namespace susy
