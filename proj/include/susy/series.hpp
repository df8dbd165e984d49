#pragma once

#include <complex>
#include <vector>

namespace susy {

using cplx = std::complex<double>;

/// Truncated Taylor series sum_k c_k s^k, k = 0..order.
class Series {
public:
    Series() = default;
    explicit Series(int order, cplx c0 = 0.0) : c_(order + 1, cplx(0.0)) { c_[0] = c0; }
    explicit Series(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

    /// Build from derivative values f^{(k)}.
    static Series from_derivatives(const std::vector<cplx>& d);
    /// The variable s itself shifted by x0 (x0 + s).
    static Series variable(int order, cplx x0);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    cplx& operator[](int k) { return c_[k]; }
    const cplx& operator[](int k) const { return c_[k]; }
    const std::vector<cplx>& coeffs() const { return c_; }

    /// Derivative values f^{(k)} = k! c_k.
    std::vector<cplx> derivatives() const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(cplx a);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, cplx s) { return a *= s; }
    friend Series operator*(cplx s, Series a) { return a *= s; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator/(const Series& a, const Series& b);

    Series reciprocal() const;
    Series derivative() const;   // d/ds, order reduced by one
    Series exp() const;

private:
    std::vector<cplx> c_;
};

/// Truncated bivariate Taylor series sum c_{ij} s^i r^j, i <= nx, j <= ny.
class Series2 {
public:
    Series2(int nx, int ny) : nx_(nx), ny_(ny), c_((nx + 1) * (ny + 1), cplx(0.0)) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    cplx& operator()(int i, int j) { return c_[i * (ny_ + 1) + j]; }
    const cplx& operator()(int i, int j) const { return c_[i * (ny_ + 1) + j]; }

    /// Mixed derivative d^i/ds^i d^j/dr^j at the origin.
    cplx derivative(int i, int j) const;

    friend Series2 operator*(const Series2& a, const Series2& b);
    Series2& operator*=(cplx a);

    /// exp of a series (typically a quadratic polynomial).
    Series2 exp() const;

    /// F(h0 + hs*s + hr*r) given the univariate Taylor coefficients of F about h0.
    static Series2 compose_linear(const std::vector<cplx>& f, cplx hs, cplx hr, int nx, int ny);

private:
    int nx_, ny_;
    std::vector<cplx> c_;
};

double factorial(int n);
double binomial(int n, int k);

} // namespace susy
