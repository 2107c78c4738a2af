#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "holistic/rational.hpp"

namespace holistic {

/// Truncated bivariate formal series in the coupling parameter gamma and the
/// odd-operator coefficient eps. The payload type T supplies the coefficient
/// ring (Rational, XiPoly, Stencil, ...): it needs a zero default constructor,
/// is_zero(), operator+ and operator*.
///
/// Truncation orders are exclusive: exponents satisfy 0 <= g < gamma_order,
/// 0 <= e < eps_order. Products discard everything at or beyond the combined
/// truncation, never keep it.
template <typename T>
class BiSeries {
public:
    using Key = std::pair<int, int>;  // (gamma exponent, eps exponent)

    BiSeries(int gamma_order, int eps_order)
        : gamma_order_(gamma_order), eps_order_(eps_order) {
        if (gamma_order < 1 || eps_order < 1)
            throw std::invalid_argument("BiSeries: truncation orders must be >= 1");
    }

    int gamma_order() const { return gamma_order_; }
    int eps_order() const { return eps_order_; }

    bool in_range(int g, int e) const {
        return g >= 0 && e >= 0 && g < gamma_order_ && e < eps_order_;
    }

    T at(int g, int e) const {
        auto it = terms_.find({g, e});
        return it == terms_.end() ? T{} : it->second;
    }

    void set(int g, int e, T value) {
        if (g < 0 || e < 0) throw std::invalid_argument("BiSeries: negative exponent");
        if (!in_range(g, e)) return;  // beyond truncation: discard
        if (value.is_zero()) terms_.erase({g, e});
        else terms_[{g, e}] = std::move(value);
    }

    void add(int g, int e, const T& value) { set(g, e, at(g, e) + value); }

    bool is_zero() const { return terms_.empty(); }

    const std::map<Key, T>& terms() const { return terms_; }

    BiSeries operator-() const {
        BiSeries out(gamma_order_, eps_order_);
        for (const auto& [k, v] : terms_) out.terms_[k] = -v;
        return out;
    }

    friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
        BiSeries out(std::min(a.gamma_order_, b.gamma_order_),
                     std::min(a.eps_order_, b.eps_order_));
        for (const auto& [k, v] : a.terms_) out.add(k.first, k.second, v);
        for (const auto& [k, v] : b.terms_) out.add(k.first, k.second, v);
        return out;
    }

    friend BiSeries operator-(const BiSeries& a, const BiSeries& b) { return a + (-b); }

    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        BiSeries out(std::min(a.gamma_order_, b.gamma_order_),
                     std::min(a.eps_order_, b.eps_order_));
        for (const auto& [ka, va] : a.terms_)
            for (const auto& [kb, vb] : b.terms_) {
                const int g = ka.first + kb.first, e = ka.second + kb.second;
                if (out.in_range(g, e)) out.add(g, e, va * vb);
            }
        return out;
    }

    template <typename S>
    BiSeries scaled(const S& s) const {
        BiSeries out(gamma_order_, eps_order_);
        for (const auto& [k, v] : terms_) out.set(k.first, k.second, v * s);
        return out;
    }

    friend bool operator==(const BiSeries& a, const BiSeries& b) {
        return a.gamma_order_ == b.gamma_order_ && a.eps_order_ == b.eps_order_ &&
               a.terms_ == b.terms_;
    }

private:
    int gamma_order_, eps_order_;
    std::map<Key, T> terms_;
};

}  // namespace holistic
