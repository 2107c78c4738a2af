#pragma once

#include <map>
#include <string>

#include "holistic/bi_series.hpp"
#include "holistic/stencil.hpp"

namespace holistic {

/// The holistic finite difference model du_j/dt = g(u): a truncated bivariate
/// series in gamma and eps whose coefficients are grid stencils.
class ModelSeries {
public:
    ModelSeries(int gamma_order, int eps_order) : terms_(gamma_order, eps_order) {}
    explicit ModelSeries(BiSeries<Stencil> terms) : terms_(std::move(terms)) {}

    int gamma_order() const { return terms_.gamma_order(); }
    int eps_order() const { return terms_.eps_order(); }

    Stencil at(int g, int e) const { return terms_.at(g, e); }
    void set(int g, int e, Stencil s) { terms_.set(g, e, std::move(s)); }
    void add(int g, int e, const Stencil& s) { terms_.add(g, e, s); }

    const BiSeries<Stencil>& series() const { return terms_; }
    bool is_zero() const { return terms_.is_zero(); }

    ModelSeries& operator+=(const ModelSeries& o) {
        for (const auto& [k, s] : o.terms_.terms()) terms_.add(k.first, k.second, s);
        return *this;
    }
    friend ModelSeries operator+(ModelSeries a, const ModelSeries& b) { return a += b; }

    friend bool operator==(const ModelSeries& a, const ModelSeries& b) {
        return a.terms_ == b.terms_;
    }

    /// Collapse gamma = 1: one stencil per eps power.
    std::map<int, Stencil> at_gamma_one() const {
        std::map<int, Stencil> out;
        for (const auto& [k, s] : terms_.terms()) {
            out[k.second] += s;
            if (out[k.second].is_zero()) out.erase(k.second);
        }
        return out;
    }

    /// Concrete tap table with gamma, eps and h substituted.
    std::map<int, double> numeric_taps(double gamma, double eps, double h) const {
        std::map<int, double> out;
        for (const auto& [k, s] : terms_.terms()) {
            const double w = std::pow(gamma, k.first) * std::pow(eps, k.second);
            if (w == 0.0) continue;
            for (const auto& [r, c] : s.taps()) out[r] += w * c.substitute(h);
        }
        return out;
    }

private:
    BiSeries<Stencil> terms_;
};

}  // namespace holistic
