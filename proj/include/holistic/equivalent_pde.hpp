#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "holistic/h_coeff.hpp"
#include "holistic/model.hpp"
#include "holistic/pde_spec.hpp"

namespace holistic {

/// A differential operator series collected by (derivative order, eps power),
/// each coefficient an exact Laurent polynomial in h, truncated at a total
/// h-order. This is the equivalent-PDE (modified equation) view of a model.
struct DiffOpSeries {
    std::map<std::pair<int, int>, HCoeff> terms;
    int max_h_order = 0;

    HCoeff at(int deriv_order, int eps_pow) const {
        auto it = terms.find({deriv_order, eps_pow});
        return it == terms.end() ? HCoeff() : it->second;
    }

    void add(int deriv_order, int eps_pow, const HCoeff& c) {
        auto& slot = terms[{deriv_order, eps_pow}];
        slot += c;
        if (slot.is_zero()) terms.erase({deriv_order, eps_pow});
    }

    bool is_zero() const { return terms.empty(); }

    friend DiffOpSeries operator-(const DiffOpSeries& a, const DiffOpSeries& b) {
        DiffOpSeries out = a;
        out.max_h_order = std::min(a.max_h_order, b.max_h_order);
        for (const auto& [k, c] : b.terms) out.add(k.first, k.second, -c);
        // clip anything beyond the shared resolution
        for (auto it = out.terms.begin(); it != out.terms.end();) {
            HCoeff kept;
            for (const auto& [hp, r] : it->second.terms())
                if (hp <= out.max_h_order) kept.add(hp, r);
            if (kept.is_zero()) it = out.terms.erase(it);
            else (it++)->second = kept;
        }
        return out;
    }

    /// Smallest h-exponent appearing anywhere (the leading error order).
    std::optional<int> min_h_exponent() const {
        std::optional<int> m;
        for (const auto& [k, c] : terms) {
            if (c.is_zero()) continue;
            const int p = c.min_hpower();
            if (!m || p < *m) m = p;
        }
        return m;
    }
};

namespace detail {

/// Exact Taylor expansion of one stencil: every tap u_{j+r} becomes
/// e^{r h d/dx} u, so tap value * r^p / p! lands on (d^p, eps^e) with h-power
/// raised by p. Terms beyond max_h_order are dropped.
inline void expand_stencil(DiffOpSeries& out, const Stencil& s, int eps_pow, int max_h_order) {
    for (const auto& [r, c] : s.taps()) {
        for (const auto& [hp, val] : c.terms()) {
            BigInt rp = 1;  // r^p
            BigInt pf = 1;  // p!
            for (int p = 0; hp + p <= max_h_order; ++p) {
                if (p > 0) {
                    rp *= r;
                    pf *= p;
                }
                if (rp == 0 && p > 0) break;
                out.add(p, eps_pow, HCoeff(val * Rational(rp, pf), hp + p));
            }
        }
    }
}

}  // namespace detail

/// Equivalent differential equation of a model evaluated at gamma = 1:
/// exact rational Taylor expansion of every shift, grouped by
/// (derivative order, eps power), to the requested total h-order.
inline DiffOpSeries equivalent_pde(const ModelSeries& model, int max_h_order) {
    DiffOpSeries out;
    out.max_h_order = max_h_order;
    for (const auto& [e, stencil] : model.at_gamma_one())
        detail::expand_stencil(out, stencil, e, max_h_order);
    return out;
}

/// The target operator A + eps B as a flat differential series.
inline DiffOpSeries pde_target(const PdeSpec& spec, int max_h_order) {
    DiffOpSeries out;
    out.max_h_order = max_h_order;
    if (spec.has_derivative_form()) {
        for (const auto& [n, c] : spec.even_derivatives()) out.add(n, 0, HCoeff(c));
        for (const auto& [n, c] : spec.eps_derivatives()) out.add(n, 1, HCoeff(c));
    } else {
        detail::expand_stencil(out, spec.even_part().to_stencil(), 0, max_h_order);
        detail::expand_stencil(out, spec.odd_part().to_stencil(), 1, max_h_order);
    }
    return out;
}

/// Largest p with equivalent_pde(model) - (A + eps B) = O(h^p), term by term
/// in the flat (derivative order, eps power) basis. Scanning stops at
/// scan_limit: a model matching beyond that reports scan_limit. A value <= 0
/// means the model is not consistent with the PDE as h -> 0.
inline int consistency_order(const ModelSeries& model, const PdeSpec& spec,
                             int scan_limit = 16) {
    const DiffOpSeries diff = equivalent_pde(model, scan_limit) - pde_target(spec, scan_limit);
    const auto m = diff.min_h_exponent();
    return m ? *m : scan_limit;
}

/// Same, restricted to one eps power (e.g. the eps-linear block of Theorem 2).
inline int consistency_order_eps_block(const ModelSeries& model, const PdeSpec& spec,
                                       int eps_pow, int scan_limit = 16) {
    DiffOpSeries diff = equivalent_pde(model, scan_limit) - pde_target(spec, scan_limit);
    for (auto it = diff.terms.begin(); it != diff.terms.end();)
        it = (it->first.second != eps_pow) ? diff.terms.erase(it) : std::next(it);
    const auto m = diff.min_h_exponent();
    return m ? *m : scan_limit;
}

}  // namespace holistic
