#pragma once

#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "holistic/rational.hpp"

namespace holistic {

/// Polynomial in the dimensionless element coordinate xi = (x - x_j)/h with
/// exact rational coefficients. Trailing zero coefficients are trimmed, so
/// degree() is exact; the zero polynomial has degree -1.
class XiPoly {
public:
    XiPoly() = default;
    XiPoly(const Rational& c) { c_.push_back(c); trim(); }
    XiPoly(int c) : XiPoly(Rational(c)) {}
    XiPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
    explicit XiPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static XiPoly xi() { return XiPoly({Rational(0), Rational(1)}); }
    static XiPoly monomial(int degree, const Rational& c) {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return XiPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Rational coeff(int d) const {
        if (d < 0 || d > degree()) return Rational(0);
        return c_[d];
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& x) const {
        Rational r(0);
        for (int d = degree(); d >= 0; --d) r = r * x + c_[d];
        return r;
    }

    XiPoly operator-() const {
        XiPoly out = *this;
        for (auto& c : out.c_) c = -c;
        return out;
    }

    XiPoly& operator+=(const XiPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    XiPoly& operator-=(const XiPoly& o) { return *this += -o; }

    friend XiPoly operator+(XiPoly a, const XiPoly& b) { return a += b; }
    friend XiPoly operator-(XiPoly a, const XiPoly& b) { return a -= b; }

    friend XiPoly operator*(const XiPoly& a, const XiPoly& b) {
        if (a.is_zero() || b.is_zero()) return XiPoly();
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return XiPoly(std::move(out));
    }

    friend XiPoly operator*(const XiPoly& a, const Rational& r) {
        if (r.is_zero()) return XiPoly();
        XiPoly out = a;
        for (auto& c : out.c_) c = c * r;
        return out;
    }
    friend XiPoly operator*(const Rational& r, const XiPoly& a) { return a * r; }

    friend bool operator==(const XiPoly& a, const XiPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const XiPoly& a, const XiPoly& b) { return !(a == b); }

    /// d/dxi
    XiPoly derivative() const {
        if (degree() < 1) return XiPoly();
        std::vector<Rational> out(c_.size() - 1);
        for (std::size_t d = 1; d < c_.size(); ++d) out[d - 1] = c_[d] * Rational((long long)d);
        return XiPoly(std::move(out));
    }

    /// Antiderivative vanishing at xi = 0.
    XiPoly antiderivative() const {
        if (is_zero()) return XiPoly();
        std::vector<Rational> out(c_.size() + 1);
        for (std::size_t d = 0; d < c_.size(); ++d)
            out[d + 1] = c_[d] / Rational((long long)(d + 1));
        return XiPoly(std::move(out));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int d = degree(); d >= 0; --d) {
            if (c_[d].is_zero()) continue;
            if (!first) os << (c_[d].sign() >= 0 ? " + " : " - ");
            else if (c_[d].sign() < 0) os << "-";
            const Rational a = abs(c_[d]);
            if (d == 0 || a != Rational(1)) os << a.to_string();
            if (d > 0) {
                if (a != Rational(1)) os << "*";
                os << "xi";
                if (d > 1) os << "^" << d;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;  // c_[d] multiplies xi^d
};

/// p(xi + s), expanded exactly.
inline XiPoly xi_shift(const XiPoly& p, const Rational& s) {
    // Horner in (xi + s): result = (...(c_n (xi+s) + c_{n-1})(xi+s) + ...) + c_0
    XiPoly out;
    const XiPoly lin({s, Rational(1)});
    for (int d = p.degree(); d >= 0; --d) out = out * lin + XiPoly(p.coeff(d));
    return out;
}

enum class XiOp { delta2, mu_delta, delta, mu };

/// Central difference operators acting on xi-polynomials. A unit step in xi
/// corresponds to a step h in x, so these realise delta_x^2, mu_x delta_x and
/// the half-step forms on the subgrid field shapes.
inline XiPoly apply_xi_operator(const XiPoly& p, XiOp op) {
    const Rational half(1, 2);
    switch (op) {
        case XiOp::delta2:
            return xi_shift(p, 1) - Rational(2) * p + xi_shift(p, -1);
        case XiOp::mu_delta:
            return half * (xi_shift(p, 1) - xi_shift(p, -1));
        case XiOp::delta:
            return xi_shift(p, half) - xi_shift(p, -half);
        case XiOp::mu:
            return half * (xi_shift(p, half) + xi_shift(p, -half));
    }
    throw std::logic_error("apply_xi_operator: bad operator");
}

/// Even/odd part about xi = 0.
inline XiPoly even_part(const XiPoly& p) {
    std::vector<Rational> out(p.degree() + 1);
    for (int d = 0; d <= p.degree(); d += 2) out[d] = p.coeff(d);
    return XiPoly(std::move(out));
}
inline XiPoly odd_part(const XiPoly& p) {
    std::vector<Rational> out(p.degree() + 1);
    for (int d = 1; d <= p.degree(); d += 2) out[d] = p.coeff(d);
    return XiPoly(std::move(out));
}

}  // namespace holistic
