#pragma once

#include <stdexcept>
#include <utility>

#include "holistic/basis_polynomials.hpp"
#include "holistic/field.hpp"
#include "holistic/model.hpp"
#include "holistic/operator_series.hpp"
#include "holistic/residual.hpp"

namespace holistic {

struct ClosedFormModel {
    FieldExpansion field;
    ModelSeries model;
};

/// Closed-form construction for an even operator A = sum a_m delta_x^{2m}:
/// the model is g^k = a_k delta^{2k} for k < gamma_order, with subgrid fields
/// v^k = p_k(xi) mu*delta^{2k-1} u_j + q_k(xi) delta^{2k} u_j. The returned
/// pair satisfies the order hierarchy, amplitude condition and internal
/// boundary conditions exactly (verified internally).
inline ClosedFormModel even_model(const OperatorSeries& a, int gamma_order) {
    if (a.kind() != OperatorKind::even)
        throw std::invalid_argument("even_model: operator series must be even kind");
    if (gamma_order < 1) throw std::invalid_argument("even_model: gamma order must be >= 1");
    if (a.size() < gamma_order)
        throw std::invalid_argument(
            "even_model: gamma order exceeds the available series coefficients");

    ModelSeries model(gamma_order, 2);
    FieldExpansion field(gamma_order, 2);
    field.add_term({0, 0, XiPoly(Rational(1)), Stencil::identity()});
    for (int k = 0; k < gamma_order; ++k) {
        model.set(k, 0, a.a(k) * grid_operator(GridOp::delta, 2 * k));
        if (k >= 1) {
            const auto [p, q] = basis_polynomials(k);
            field.add_term({k, 0, p, grid_operator(GridOp::mu_delta, 2 * k - 1)});
            field.add_term({k, 0, q, grid_operator(GridOp::delta, 2 * k)});
        }
    }

    const ResidualReport check = residual_check(field, model, PdeSpec::from_series(a));
    if (!check.all_zero())
        throw std::logic_error("even_model: internal residual check failed");
    return {std::move(field), std::move(model)};
}

/// Theorem-2 correction for an odd operator B = sum b_m mu_x delta_x^{2m-1}:
/// adds eps gamma^k f^k with f^k = b_k mu*delta^{2k-1} for 1 <= k < gamma_order,
/// consistent with eps B to an O(eps^2) error.
inline ModelSeries odd_correction(const OperatorSeries& b, int gamma_order) {
    if (b.kind() != OperatorKind::odd)
        throw std::invalid_argument("odd_correction: operator series must be odd kind");
    if (gamma_order >= 2 && b.size() < gamma_order - 1)
        throw std::invalid_argument(
            "odd_correction: gamma order exceeds the available series coefficients");
    ModelSeries inc(gamma_order, 2);
    for (int k = 1; k < gamma_order; ++k)
        inc.set(k, 1, b.b(k) * grid_operator(GridOp::mu_delta, 2 * k - 1));
    return inc;
}

}  // namespace holistic
