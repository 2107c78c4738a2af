#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "holistic/h_coeff.hpp"
#include "holistic/rational.hpp"

namespace holistic {

/// Finite-support grid operator: (S u)_j = sum_r taps[r] * u_{j+r}, with each
/// tap an exact coefficient in powers of the grid spacing h. Composition is
/// tap convolution; zero taps are never stored.
class Stencil {
public:
    Stencil() = default;

    static Stencil identity() { return single(0, HCoeff(Rational(1))); }
    static Stencil single(int offset, const HCoeff& c) {
        Stencil s;
        s.set(offset, c);
        return s;
    }

    bool is_zero() const { return taps_.empty(); }

    HCoeff tap(int offset) const {
        auto it = taps_.find(offset);
        return it == taps_.end() ? HCoeff() : it->second;
    }

    void set(int offset, const HCoeff& c) {
        if (c.is_zero()) taps_.erase(offset);
        else taps_[offset] = c;
    }

    void add(int offset, const HCoeff& c) { set(offset, tap(offset) + c); }

    const std::map<int, HCoeff>& taps() const { return taps_; }

    int min_offset() const { return taps_.empty() ? 0 : taps_.begin()->first; }
    int max_offset() const { return taps_.empty() ? 0 : taps_.rbegin()->first; }
    int width() const { return taps_.empty() ? 0 : max_offset() - min_offset() + 1; }

    HCoeff tap_sum() const {
        HCoeff s;
        for (const auto& [r, c] : taps_) s += c;
        return s;
    }

    /// The common h-exponent when every tap is a monomial of the same power.
    std::optional<int> homogeneous_hpower() const {
        std::optional<int> hp;
        for (const auto& [r, c] : taps_) {
            auto p = c.monomial_hpower();
            if (!p) return std::nullopt;
            if (hp && *hp != *p) return std::nullopt;
            hp = p;
        }
        return hp;
    }

    Stencil operator-() const {
        Stencil out;
        for (const auto& [r, c] : taps_) out.taps_[r] = -c;
        return out;
    }

    Stencil& operator+=(const Stencil& o) {
        for (const auto& [r, c] : o.taps_) add(r, c);
        return *this;
    }
    Stencil& operator-=(const Stencil& o) { return *this += -o; }

    friend Stencil operator+(Stencil a, const Stencil& b) { return a += b; }
    friend Stencil operator-(Stencil a, const Stencil& b) { return a -= b; }

    /// Composition a(b(u)) = convolution of tap tables; commutative.
    friend Stencil operator*(const Stencil& a, const Stencil& b) {
        Stencil out;
        for (const auto& [ra, ca] : a.taps_)
            for (const auto& [rb, cb] : b.taps_) out.add(ra + rb, ca * cb);
        return out;
    }

    friend Stencil operator*(const Stencil& a, const HCoeff& c) {
        Stencil out;
        if (c.is_zero()) return out;
        for (const auto& [r, v] : a.taps_) out.add(r, v * c);
        return out;
    }
    friend Stencil operator*(const HCoeff& c, const Stencil& a) { return a * c; }
    friend Stencil operator*(const Stencil& a, const Rational& r) { return a * HCoeff(r); }
    friend Stencil operator*(const Rational& r, const Stencil& a) { return a * HCoeff(r); }

    /// Multiply by h^k.
    Stencil shifted_h(int k) const {
        Stencil out;
        for (const auto& [r, c] : taps_) out.taps_[r] = c.shifted_h(k);
        return out;
    }

    /// Mirror r -> -r (transpose of the operator on the grid).
    Stencil reversed() const {
        Stencil out;
        for (const auto& [r, c] : taps_) out.taps_[-r] = c;
        return out;
    }

    friend bool operator==(const Stencil& a, const Stencil& b) { return a.taps_ == b.taps_; }
    friend bool operator!=(const Stencil& a, const Stencil& b) { return !(a == b); }

    /// Fourier symbol sum_r taps[r] e^{i r theta} with h substituted: the growth
    /// rate lambda(theta) of the grid mode u_j = e^{i j theta}.
    std::complex<double> symbol(double theta, double h) const {
        std::complex<double> s = 0;
        for (const auto& [r, c] : taps_)
            s += c.substitute(h) * std::complex<double>(std::cos(r * theta), std::sin(r * theta));
        return s;
    }

    /// Numeric tap table with h substituted.
    std::map<int, double> numeric_taps(double h) const {
        std::map<int, double> out;
        for (const auto& [r, c] : taps_) out[r] = c.substitute(h);
        return out;
    }

    /// Apply to exact samples u_j = f(j), everything rational (h substituted).
    template <typename F>
    Rational apply_exact(F&& sample, int j, const Rational& h) const {
        Rational s(0);
        for (const auto& [r, c] : taps_) s += c.substitute(h) * sample(j + r);
        return s;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (const auto& [r, c] : taps_) {
            if (!first) os << ", ";
            os << r << ": " << c.to_string();
            first = false;
        }
        os << "}";
        return os.str();
    }

private:
    std::map<int, HCoeff> taps_;
};

enum class GridOp { delta, mu_delta, nabla, identity };

/// Named difference operators on the grid index j (unit step).
///   delta^2   = {-1: 1, 0: -2, +1: 1}        (even powers only)
///   mu*delta  = {-1: -1/2, +1: 1/2}           (mu_delta power 2k-1 = mu*delta^{2k-1})
///   nabla     = {-1: -1, 0: 1}
/// Odd pure-delta powers are rejected: they map between the integer and
/// half-integer grids and never arise in the internal boundary conditions.
inline Stencil grid_operator(GridOp op, int power) {
    if (power < 0) throw std::invalid_argument("grid_operator: negative power");
    if (power == 0) return Stencil::identity();
    switch (op) {
        case GridOp::identity:
            return Stencil::identity();
        case GridOp::delta: {
            if (power % 2 != 0)
                throw std::invalid_argument(
                    "grid_operator: odd pure-delta powers connect integer and half-integer "
                    "grids; use mu_delta for odd operators");
            Stencil d2;
            d2.set(-1, HCoeff(Rational(1)));
            d2.set(0, HCoeff(Rational(-2)));
            d2.set(1, HCoeff(Rational(1)));
            Stencil out = Stencil::identity();
            for (int k = 0; k < power / 2; ++k) out = out * d2;
            return out;
        }
        case GridOp::mu_delta: {
            if (power % 2 != 1)
                throw std::invalid_argument(
                    "grid_operator: mu_delta takes the odd exponent 2k-1 of mu*delta^{2k-1}");
            Stencil md;
            md.set(-1, HCoeff(Rational(-1, 2)));
            md.set(1, HCoeff(Rational(1, 2)));
            return md * grid_operator(GridOp::delta, power - 1);
        }
        case GridOp::nabla: {
            Stencil n;
            n.set(-1, HCoeff(Rational(-1)));
            n.set(0, HCoeff(Rational(1)));
            Stencil out = Stencil::identity();
            for (int k = 0; k < power; ++k) out = out * n;
            return out;
        }
    }
    throw std::logic_error("grid_operator: bad operator");
}

/// Exact decomposition of any finite stencil into the centred basis:
/// symmetric part over delta^{2m} (m >= 0, m = 0 the identity) and
/// antisymmetric part over mu*delta^{2m-1} (m >= 1). Always exact, since both
/// families are triangular in the support width.
struct StencilDecomposition {
    std::map<int, HCoeff> even;  // m -> coefficient of delta^{2m}
    std::map<int, HCoeff> odd;   // m -> coefficient of mu*delta^{2m-1}
};

inline StencilDecomposition decompose_centred(const Stencil& s) {
    StencilDecomposition out;
    const Rational half(1, 2);
    Stencil sym, asym;
    const Stencil rev = s.reversed();
    sym = (s + rev) * half;
    asym = (s - rev) * half;
    while (!sym.is_zero()) {
        const int m = sym.max_offset();  // delta^{2m} has tap 1 at offset m
        const HCoeff c = sym.tap(m);
        out.even[m] = c;
        sym -= c * grid_operator(GridOp::delta, 2 * m);
    }
    while (!asym.is_zero()) {
        const int m = asym.max_offset();  // mu*delta^{2m-1} has tap 1/2 at offset m
        const HCoeff c = asym.tap(m) * Rational(2);
        out.odd[m] = c;
        asym -= c * grid_operator(GridOp::mu_delta, 2 * m - 1);
    }
    return out;
}

}  // namespace holistic
