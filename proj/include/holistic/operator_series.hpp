#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "holistic/h_coeff.hpp"
#include "holistic/rational.hpp"
#include "holistic/stencil.hpp"

namespace holistic {

enum class OperatorKind { even, odd };

/// A differential or convolution operator written in the centred difference
/// basis: even kind means sum_m c_m delta^{2m} (m from 0, constant term
/// allowed), odd kind means sum_m c_m mu*delta^{2m-1} (m from 1).
class OperatorSeries {
public:
    OperatorSeries(OperatorKind kind, std::vector<HCoeff> coeffs)
        : kind_(kind), c_(std::move(coeffs)) {}

    OperatorKind kind() const { return kind_; }

    /// Number of stored basis coefficients.
    int size() const { return static_cast<int>(c_.size()); }

    /// Even kind: coefficient of delta^{2m}, m >= 0.
    HCoeff a(int m) const {
        if (kind_ != OperatorKind::even) throw std::logic_error("OperatorSeries: a() on odd kind");
        return (m >= 0 && m < size()) ? c_[m] : HCoeff();
    }

    /// Odd kind: coefficient of mu*delta^{2m-1}, m >= 1.
    HCoeff b(int m) const {
        if (kind_ != OperatorKind::odd) throw std::logic_error("OperatorSeries: b() on even kind");
        return (m >= 1 && m <= size()) ? c_[m - 1] : HCoeff();
    }

    const std::vector<HCoeff>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Grid realisation: the finite sum as one stencil.
    Stencil to_stencil() const {
        Stencil out;
        if (kind_ == OperatorKind::even) {
            for (int m = 0; m < size(); ++m) out += c_[m] * grid_operator(GridOp::delta, 2 * m);
        } else {
            for (int m = 1; m <= size(); ++m)
                out += c_[m - 1] * grid_operator(GridOp::mu_delta, 2 * m - 1);
        }
        return out;
    }

private:
    OperatorKind kind_;
    std::vector<HCoeff> c_;
};

namespace detail {

// Dense truncated power series over Rational, c[i] the coefficient of t^i.
using QSeries = std::vector<Rational>;

inline QSeries qs_mul(const QSeries& a, const QSeries& b, std::size_t n) {
    QSeries out(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// (1 + t)^alpha to n terms, alpha rational.
inline QSeries qs_binomial(const Rational& alpha, std::size_t n) {
    QSeries out(n);
    out[0] = Rational(1);
    for (std::size_t k = 1; k < n; ++k)
        out[k] = out[k - 1] * (alpha - Rational((long long)(k - 1))) / Rational((long long)k);
    return out;
}

// t = h d/dx expressed in the central difference: t = 2 arcsinh(delta/2),
// an odd series in delta.
inline QSeries qs_two_arcsinh_half(std::size_t n) {
    QSeries out(n);
    // arcsinh(x) = sum (-1)^k (2k)! / (4^k (k!)^2 (2k+1)) x^{2k+1}
    // with x = delta/2 and the overall factor 2: coefficient of delta^{2k+1}
    // becomes (-1)^k (2k)! / (16^k (k!)^2 (2k+1)).
    for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
        const BigInt kf = factorial((int)k);
        Rational c(factorial((int)(2 * k)), ipow(BigInt(16), (unsigned)k) * kf * kf * BigInt(2 * k + 1));
        if (k % 2 == 1) c = -c;
        out[2 * k + 1] = c;
    }
    return out;
}

}  // namespace detail

/// The first M coefficients of d^n/dx^n in the canonical centred forms:
/// even n as sum a_m delta^{2m} (starting at m = n/2), odd n as
/// sum b_m mu*delta^{2m-1} (starting at m = (n+1)/2). Computed by exact
/// reversion of delta = 2 sinh(h d/dx / 2), with mu^2 = 1 + delta^2/4
/// eliminating even powers of mu for the odd case. Every coefficient carries
/// the factor h^{-n}.
inline OperatorSeries derivative_to_series(int n, int M = 8) {
    if (n < 1) throw std::invalid_argument("derivative_to_series: order must be >= 1");
    if (M < 1) throw std::invalid_argument("derivative_to_series: need at least one term");

    const bool even = (n % 2 == 0);
    const int first_m = even ? n / 2 : (n + 1) / 2;
    const int last_m = first_m + M - 1;
    // highest delta power needed
    const std::size_t len = even ? (std::size_t)(2 * last_m + 1) : (std::size_t)(2 * last_m);

    const detail::QSeries t = detail::qs_two_arcsinh_half(len + 1);
    detail::QSeries p{Rational(1)};
    for (int i = 0; i < n; ++i) p = detail::qs_mul(p, t, len + 1);

    std::vector<HCoeff> coeffs;
    if (even) {
        // p has only even powers of delta; a_m = p[2m] h^{-n}
        coeffs.resize(last_m + 1);
        for (int m = 0; m <= last_m; ++m)
            if (2 * m < (int)p.size() && !p[2 * m].is_zero())
                coeffs[m] = HCoeff(p[2 * m], -n);
        return OperatorSeries(OperatorKind::even, std::move(coeffs));
    }
    // Odd n: p is an odd series in delta. Factor out sinh(h d/dx) = mu*delta,
    // whose pure-delta form is delta (1 + delta^2/4)^{1/2}: then
    // d^n/dx^n = mu*delta * [p / (delta sqrt(1 + delta^2/4))], the bracket an
    // even series in delta.
    detail::QSeries q(p.size());
    for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] = p[i];  // divide by delta
    const detail::QSeries invsqrt = detail::qs_binomial(Rational(-1, 2), len / 2 + 1);
    detail::QSeries invsqrt_d(len + 1);  // in delta: substitute t -> delta^2/4
    for (std::size_t k = 0; k < invsqrt.size() && 2 * k <= len; ++k)
        invsqrt_d[2 * k] = invsqrt[k] / pow(Rational(4), (int)k);
    const detail::QSeries w = detail::qs_mul(q, invsqrt_d, len + 1);

    // w has only even powers; coefficient of mu*delta^{2m-1} is w[2(m-1)] h^{-n}
    coeffs.resize(last_m);
    for (int m = 1; m <= last_m; ++m)
        if (2 * (m - 1) < (int)w.size() && !w[2 * (m - 1)].is_zero())
            coeffs[m - 1] = HCoeff(w[2 * (m - 1)], -n);
    return OperatorSeries(OperatorKind::odd, std::move(coeffs));
}

}  // namespace holistic
