#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holistic/h_coeff.hpp"
#include "holistic/rational.hpp"
#include "holistic/stencil.hpp"
#include "holistic/xi_poly.hpp"

namespace holistic {

/// Polynomial in the element coordinate xi whose coefficients are grid
/// stencils: the concrete form of XiPoly (x) Stencil terms. This is the value
/// a centre-manifold field takes at one (gamma, eps) order, v = sum_d xi^d (S_d u)_j.
class StencilPoly {
public:
    StencilPoly() = default;
    explicit StencilPoly(std::vector<Stencil> coeffs) : c_(std::move(coeffs)) { trim(); }

    static StencilPoly outer(const XiPoly& shape, const Stencil& s) {
        std::vector<Stencil> out(shape.degree() + 1);
        for (int d = 0; d <= shape.degree(); ++d) out[d] = HCoeff(shape.coeff(d)) * s;
        return StencilPoly(std::move(out));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Stencil coeff(int d) const {
        if (d < 0 || d > degree()) return Stencil();
        return c_[d];
    }

    StencilPoly operator-() const {
        StencilPoly out = *this;
        for (auto& s : out.c_) s = -s;
        return out;
    }

    StencilPoly& operator+=(const StencilPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    StencilPoly& operator-=(const StencilPoly& o) { return *this += -o; }

    friend StencilPoly operator+(StencilPoly a, const StencilPoly& b) { return a += b; }
    friend StencilPoly operator-(StencilPoly a, const StencilPoly& b) { return a -= b; }

    friend StencilPoly operator*(const StencilPoly& a, const HCoeff& c) {
        StencilPoly out = a;
        for (auto& s : out.c_) s = s * c;
        out.trim();
        return out;
    }
    friend StencilPoly operator*(const HCoeff& c, const StencilPoly& a) { return a * c; }
    friend StencilPoly operator*(const StencilPoly& a, const Rational& r) { return a * HCoeff(r); }

    friend StencilPoly operator*(const StencilPoly& a, const XiPoly& p) {
        StencilPoly out;
        if (a.is_zero() || p.is_zero()) return out;
        out.c_.resize(a.c_.size() + p.degree());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (int j = 0; j <= p.degree(); ++j) out.c_[i + j] += a.c_[i] * HCoeff(p.coeff(j));
        out.trim();
        return out;
    }
    friend StencilPoly operator*(const XiPoly& p, const StencilPoly& a) { return a * p; }

    /// Right-composition with a grid operator: (sum xi^d S_d) applied to (G u).
    StencilPoly composed_grid(const Stencil& g) const {
        StencilPoly out = *this;
        for (auto& s : out.c_) s = s * g;
        out.trim();
        return out;
    }

    /// v(xi + s), shifting the polynomial part only (grid offsets unchanged).
    StencilPoly shifted(const Rational& s) const {
        StencilPoly out;
        const XiPoly lin({s, Rational(1)});
        for (int d = degree(); d >= 0; --d) {
            out = out * lin;
            out += StencilPoly(std::vector<Stencil>{c_[d]});
        }
        return out;
    }

    /// d/dxi and the antiderivative vanishing at xi = 0.
    StencilPoly derivative() const {
        if (degree() < 1) return StencilPoly();
        std::vector<Stencil> out(c_.size() - 1);
        for (std::size_t d = 1; d < c_.size(); ++d)
            out[d - 1] = c_[d] * HCoeff(Rational((long long)d));
        return StencilPoly(std::move(out));
    }
    StencilPoly antiderivative() const {
        if (is_zero()) return StencilPoly();
        std::vector<Stencil> out(c_.size() + 1);
        for (std::size_t d = 0; d < c_.size(); ++d)
            out[d + 1] = c_[d] * HCoeff(Rational(1LL, (long long)(d + 1)));
        return StencilPoly(std::move(out));
    }

    Stencil eval(const Rational& x) const {
        Stencil r;
        for (int d = degree(); d >= 0; --d) r = r * HCoeff(x) + c_[d];
        return r;
    }

    /// Central xi-difference forms used by the internal boundary conditions.
    StencilPoly delta2_xi() const { return shifted(1) - *this * Rational(2) + shifted(-1); }
    StencilPoly mu_delta_xi() const { return (shifted(1) - shifted(-1)) * Rational(1, 2); }

    friend bool operator==(const StencilPoly& a, const StencilPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const StencilPoly& a, const StencilPoly& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int d = 0; d <= degree(); ++d) {
            if (c_[d].is_zero()) continue;
            if (!first) os << " + ";
            os << "xi^" << d << " * " << c_[d].to_string();
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Stencil> c_;
};

/// One separable term of a centre-manifold field:
/// gamma^k eps^e * shape(xi) * (stencil u)_j.
struct FieldTerm {
    int gamma_pow = 0;
    int eps_pow = 0;
    XiPoly shape;
    Stencil stencil;
};

/// The centre-manifold field v(u, x) near one grid point, truncated to
/// O(gamma^gamma_order, eps^eps_order). The (0,0) term is exactly
/// shape = 1 with the identity stencil (v^0 = u_j); every higher term
/// vanishes at xi = 0 (the amplitude condition).
class FieldExpansion {
public:
    FieldExpansion(int gamma_order, int eps_order)
        : gamma_order_(gamma_order), eps_order_(eps_order) {}

    int gamma_order() const { return gamma_order_; }
    int eps_order() const { return eps_order_; }

    const std::vector<FieldTerm>& terms() const { return terms_; }

    void add_term(FieldTerm t) {
        if (t.shape.is_zero() || t.stencil.is_zero()) return;
        if (t.gamma_pow >= gamma_order_ || t.eps_pow >= eps_order_) return;
        terms_.push_back(std::move(t));
    }

    /// Collected normal form: one StencilPoly per (gamma, eps) order.
    std::map<std::pair<int, int>, StencilPoly> normalized() const {
        std::map<std::pair<int, int>, StencilPoly> out;
        for (const auto& t : terms_)
            out[{t.gamma_pow, t.eps_pow}] += StencilPoly::outer(t.shape, t.stencil);
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    /// Rebuild separable terms from per-order normal forms, grouping xi-degrees
    /// whose stencils are rational multiples of each other so the p_k/q_k
    /// structure stays visible in reports.
    static FieldExpansion from_parts(const std::map<std::pair<int, int>, StencilPoly>& parts,
                                     int gamma_order, int eps_order) {
        FieldExpansion out(gamma_order, eps_order);
        for (const auto& [key, poly] : parts) {
            std::vector<std::pair<XiPoly, Stencil>> groups;
            for (int d = 0; d <= poly.degree(); ++d) {
                const Stencil s = poly.coeff(d);
                if (s.is_zero()) continue;
                bool merged = false;
                for (auto& [shape, rep] : groups) {
                    if (auto f = proportionality(rep, s)) {
                        shape += XiPoly::monomial(d, *f);
                        merged = true;
                        break;
                    }
                }
                if (!merged) groups.push_back({XiPoly::monomial(d, Rational(1)), s});
            }
            for (auto& [shape, rep] : groups)
                out.add_term({key.first, key.second, shape, rep});
        }
        return out;
    }

private:
    /// f with s == f * rep, when the two stencils are rationally proportional
    /// (h-powers must match exactly).
    static std::optional<Rational> proportionality(const Stencil& rep, const Stencil& s) {
        if (rep.taps().size() != s.taps().size()) return std::nullopt;
        std::optional<Rational> f;
        for (const auto& [r, c] : s.taps()) {
            const HCoeff rc = rep.tap(r);
            if (rc.terms().size() != c.terms().size()) return std::nullopt;
            for (const auto& [hp, v] : c.terms()) {
                const Rational rv = rc.coeff(hp);
                if (rv.is_zero()) return std::nullopt;
                const Rational g = v / rv;
                if (f && *f != g) return std::nullopt;
                f = g;
            }
        }
        return f;
    }

    int gamma_order_, eps_order_;
    std::vector<FieldTerm> terms_;
};

}  // namespace holistic
