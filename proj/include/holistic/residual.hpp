#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "holistic/field.hpp"
#include "holistic/model.hpp"
#include "holistic/pde_spec.hpp"
#include "holistic/stencil.hpp"

namespace holistic {

/// Residuals of one (gamma, eps) order of the governing equations: the PDE
/// residual keeps its xi-structure, the internal boundary condition and
/// amplitude residuals are evaluated at the element centre.
struct ResidualEntry {
    int gamma_pow = 0;
    int eps_pow = 0;
    StencilPoly pde;        // A v + eps B v - dv/dt at this order
    Stencil ibc_mu_delta;   // mu_x delta_x v |_0 - gamma mu delta u_j
    Stencil ibc_delta2;     // delta_x^2 v |_0 - gamma delta^2 u_j
    Stencil amplitude;      // v(0) - u_j at (0,0)

    bool is_zero() const {
        return pde.is_zero() && ibc_mu_delta.is_zero() && ibc_delta2.is_zero() &&
               amplitude.is_zero();
    }
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;

    bool all_zero() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const ResidualEntry& r) { return r.is_zero(); });
    }

    std::optional<std::pair<int, int>> first_nonzero() const {
        for (const auto& r : entries)
            if (!r.is_zero()) return std::make_pair(r.gamma_pow, r.eps_pow);
        return std::nullopt;
    }

    const ResidualEntry* at(int k, int e) const {
        for (const auto& r : entries)
            if (r.gamma_pow == k && r.eps_pow == e) return &r;
        return nullptr;
    }
};

namespace detail {

using FieldParts = std::map<std::pair<int, int>, StencilPoly>;

inline StencilPoly part_at(const FieldParts& v, int k, int e) {
    auto it = v.find({k, e});
    return it == v.end() ? StencilPoly() : it->second;
}

/// Residuals of the governing equations at one (gamma^k, eps^e) order for the
/// current field/model approximation.
inline ResidualEntry order_residual(const FieldParts& v, const ModelSeries& g,
                                    const PdeSpec& spec, int k, int e) {
    ResidualEntry out;
    out.gamma_pow = k;
    out.eps_pow = e;

    const StencilPoly vke = part_at(v, k, e);

    // PDE: A v + eps B v - v o g, the time derivative acting through the model.
    StencilPoly pde = spec.apply_even(vke);
    if (e >= 1) pde += spec.apply_eps(part_at(v, k, e - 1));
    for (const auto& [key, vpart] : v) {
        if (key.first > k || key.second > e) continue;
        const Stencil gs = g.at(k - key.first, e - key.second);
        if (!gs.is_zero()) pde -= vpart.composed_grid(gs);
    }
    out.pde = pde;

    const Stencil at0 = vke.eval(0);
    const Stencil atp = vke.eval(1);
    const Stencil atm = vke.eval(-1);

    out.amplitude = at0;
    if (k == 0 && e == 0) out.amplitude -= Stencil::identity();

    out.ibc_mu_delta = (atp - atm) * Rational(1, 2);
    out.ibc_delta2 = atp - at0 * Rational(2) + atm;
    if (k == 1 && e == 0) {
        out.ibc_mu_delta -= grid_operator(GridOp::mu_delta, 1);
        out.ibc_delta2 -= grid_operator(GridOp::delta, 2);
    }
    return out;
}

}  // namespace detail

/// Evaluate all residuals of a field/model pair against the PDE spec, over the
/// shared truncation range. All three residual families vanish identically for
/// a correct construction; a nonzero entry is a report, not an error.
inline ResidualReport residual_check(const FieldExpansion& field, const ModelSeries& model,
                                     const PdeSpec& spec) {
    const int kmax = std::min(field.gamma_order(), model.gamma_order());
    const int emax = std::min(field.eps_order(), model.eps_order());
    const detail::FieldParts v = field.normalized();
    ResidualReport report;
    for (int k = 0; k < kmax; ++k)
        for (int e = 0; e < emax; ++e)
            report.entries.push_back(detail::order_residual(v, model, spec, k, e));
    return report;
}

}  // namespace holistic
