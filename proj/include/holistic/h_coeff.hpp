#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "holistic/rational.hpp"

namespace holistic {

/// Exact coefficient carrying powers of the grid spacing: a sparse Laurent
/// polynomial sum_k r_k h^k over Rational. The grid spacing h stays symbolic
/// through every derivation; it is substituted only for numerical evaluation.
class HCoeff {
public:
    HCoeff() = default;
    HCoeff(const Rational& r) { set(0, r); }
    HCoeff(int n) { set(0, Rational(n)); }
    HCoeff(const Rational& r, int hpower) { set(hpower, r); }

    static HCoeff monomial(const Rational& r, int hpower) { return HCoeff(r, hpower); }

    bool is_zero() const { return terms_.empty(); }

    bool is_monomial() const { return terms_.size() == 1; }

    /// h-exponent when the coefficient is a single monomial (zero counts as none).
    std::optional<int> monomial_hpower() const {
        if (!is_monomial()) return std::nullopt;
        return terms_.begin()->first;
    }

    /// Rational factor of the h^hpower term (zero if absent).
    Rational coeff(int hpower) const {
        auto it = terms_.find(hpower);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& terms() const { return terms_; }

    int min_hpower() const {
        if (is_zero()) throw std::logic_error("HCoeff: min_hpower of zero");
        return terms_.begin()->first;
    }

    void set(int hpower, const Rational& r) {
        if (r.is_zero()) terms_.erase(hpower);
        else terms_[hpower] = r;
    }

    void add(int hpower, const Rational& r) { set(hpower, coeff(hpower) + r); }

    HCoeff operator-() const {
        HCoeff out;
        for (const auto& [p, r] : terms_) out.terms_[p] = -r;
        return out;
    }

    HCoeff& operator+=(const HCoeff& o) {
        for (const auto& [p, r] : o.terms_) add(p, r);
        return *this;
    }
    HCoeff& operator-=(const HCoeff& o) {
        for (const auto& [p, r] : o.terms_) add(p, -r);
        return *this;
    }

    friend HCoeff operator+(HCoeff a, const HCoeff& b) { return a += b; }
    friend HCoeff operator-(HCoeff a, const HCoeff& b) { return a -= b; }

    friend HCoeff operator*(const HCoeff& a, const HCoeff& b) {
        HCoeff out;
        for (const auto& [pa, ra] : a.terms_)
            for (const auto& [pb, rb] : b.terms_) out.add(pa + pb, ra * rb);
        return out;
    }

    friend HCoeff operator*(const HCoeff& a, const Rational& r) {
        HCoeff out;
        if (r.is_zero()) return out;
        for (const auto& [p, v] : a.terms_) out.terms_[p] = v * r;
        return out;
    }
    friend HCoeff operator*(const Rational& r, const HCoeff& a) { return a * r; }

    /// Multiply by h^k.
    HCoeff shifted_h(int k) const {
        HCoeff out;
        for (const auto& [p, r] : terms_) out.terms_[p + k] = r;
        return out;
    }

    /// Division restricted to monomial divisors; that is all the homological
    /// solver ever needs (the leading diffusion coefficient is a monomial).
    HCoeff divided_by_monomial(const HCoeff& d) const {
        if (!d.is_monomial())
            throw std::invalid_argument("HCoeff: divisor must be a single h-power monomial");
        const auto [hp, r] = *d.terms_.begin();
        HCoeff out;
        for (const auto& [p, v] : terms_) out.terms_[p - hp] = v / r;
        return out;
    }

    double substitute(double h) const {
        double s = 0;
        for (const auto& [p, r] : terms_) s += r.to_double() * std::pow(h, p);
        return s;
    }

    Rational substitute(const Rational& h) const {
        Rational s = 0;
        for (const auto& [p, r] : terms_) s += r * pow(h, p);
        return s;
    }

    friend bool operator==(const HCoeff& a, const HCoeff& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const HCoeff& a, const HCoeff& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [p, r] : terms_) {
            if (!first) os << (r.sign() >= 0 ? " + " : " - ");
            else if (r.sign() < 0) os << "-";
            os << abs(r).to_string();
            if (p != 0) os << "*h^" << p;
            first = false;
        }
        return os.str();
    }

private:
    std::map<int, Rational> terms_;  // hpower -> rational factor
};

}  // namespace holistic
