#pragma once

#include <sstream>
#include <stdexcept>
#include <utility>

#include "holistic/field.hpp"
#include "holistic/model.hpp"
#include "holistic/pde_spec.hpp"
#include "holistic/residual.hpp"

namespace holistic {

/// Raised when the residual iteration fails to terminate within its budget;
/// carries the lowest (gamma, eps) order whose residual did not vanish.
struct ConstructionError : std::runtime_error {
    ConstructionError(const std::string& msg, int k, int e)
        : std::runtime_error(msg), gamma_pow(k), eps_pow(e) {}
    int gamma_pow, eps_pow;
};

struct HolisticModel {
    FieldExpansion field;
    ModelSeries model;
    int sweeps = 0;
};

struct IterativeOptions {
    int max_sweeps = 0;  // 0: the default budget 2 (gamma_order + eps_order)
};

namespace detail {

/// Exact inverse, on polynomial fields, of M = sum_{m>=1} A_{2m} h^{-2m} d^{2m-2}/dxi^{2m-2}
/// (the even operator with the constant removed and one d^2/dxi^2 factored out).
class HomologicalSolver {
public:
    explicit HomologicalSolver(const PdeSpec& spec)
        : spec_(spec), lead_inverse_(Rational(1) / spec.diffusion_coeff(), 2) {}

    StencilPoly m_inverse(StencilPoly w) const {
        StencilPoly u;
        while (!w.is_zero()) {
            const StencilPoly t = w * lead_inverse_;
            u += t;
            // residual after the leading term: minus the tail of M applied to t
            StencilPoly tail;
            StencilPoly d = t;
            int done = 0;
            for (const auto& [n, c] : spec_.even_derivatives()) {
                if (n < 4) continue;
                while (done < n - 2 && !d.is_zero()) {
                    d = d.derivative();
                    ++done;
                }
                if (d.is_zero()) break;
                tail += d * HCoeff(c, -n);
            }
            w = -tail;
        }
        return u;
    }

    /// Particular solution of L v = w with L = d^2/dxi^2 o M, vanishing with
    /// its first derivative at xi = 0.
    StencilPoly particular(const StencilPoly& w) const {
        return m_inverse(w).antiderivative().antiderivative();
    }

    /// Inverse of the leading coefficient A_2 h^{-2}.
    const HCoeff& lead_inverse() const { return lead_inverse_; }

private:
    const PdeSpec& spec_;
    HCoeff lead_inverse_;
};

}  // namespace detail

/// Residual-driven construction of the holistic model for a PDE with a
/// diffusive leading operator: starting from v = u_j, each pass evaluates the
/// residuals of the PDE, the two internal boundary conditions and the
/// amplitude condition, and corrects field and model by solving the
/// homological equation (double xi-antidifferentiation against the leading
/// diffusion; the integration constants are fixed by the amplitude condition
/// and the first boundary condition, and the model update absorbs the
/// solvability obstruction of the second). Passes repeat until every residual
/// vanishes identically to O(gamma^gamma_order, eps^eps_order).
inline HolisticModel construct_iterative(const PdeSpec& spec, int gamma_order, int eps_order,
                                         IterativeOptions options = {}) {
    if (gamma_order < 2)
        throw std::invalid_argument("construct_iterative: gamma order must be >= 2");
    if (eps_order < 1)
        throw std::invalid_argument("construct_iterative: eps order must be >= 1");
    if (!spec.has_derivative_form())
        throw UnsupportedPdeError(
            "construct_iterative: needs the PDE in derivative form (the closed-form "
            "constructors accept difference series directly)");
    if (spec.diffusion_coeff().is_zero())
        throw UnsupportedPdeError(
            "construct_iterative: the leading even operator must be second-order diffusion; "
            "fourth- and higher-order leading operators are not in the supported class");

    const detail::HomologicalSolver solver(spec);
    const int budget =
        options.max_sweeps > 0 ? options.max_sweeps : 2 * (gamma_order + eps_order);

    detail::FieldParts v;
    v[{0, 0}] = StencilPoly::outer(XiPoly(Rational(1)), Stencil::identity());
    ModelSeries model(gamma_order, eps_order);

    int sweeps = 0;
    bool converged = false;
    while (sweeps < budget && !converged) {
        ++sweeps;
        bool updated = false;
        for (int k = 0; k < gamma_order; ++k) {
            for (int e = 0; e < eps_order; ++e) {
                const ResidualEntry res = detail::order_residual(v, model, spec, k, e);
                if (res.is_zero()) continue;
                updated = true;

                // L vhat = -pde_residual + ghat, with the three point conditions
                // fixing the affine freedom and ghat.
                const StencilPoly part = solver.particular(-res.pde);
                const Stencil part0 = part.eval(0);
                const Stencil partp = part.eval(1);
                const Stencil partm = part.eval(-1);

                const Stencil c0 = -res.amplitude;
                const Stencil c1 = -res.ibc_mu_delta - (partp - partm) * Rational(1, 2);
                const Stencil ghat =
                    (-res.ibc_delta2 - (partp - part0 * Rational(2) + partm)) *
                    HCoeff(spec.diffusion_coeff(), -2);

                StencilPoly vhat = part;
                // ghat enters the equation through v0 o ghat; its field share is
                // the quadratic (h^2 ghat / A_2) xi^2 / 2.
                vhat += StencilPoly::outer(XiPoly::monomial(2, Rational(1, 2)),
                                           ghat * solver.lead_inverse());
                vhat += StencilPoly::outer(XiPoly::xi(), c1);
                vhat += StencilPoly::outer(XiPoly(Rational(1)), c0);

                v[{k, e}] += vhat;
                if (v[{k, e}].is_zero()) v.erase({k, e});
                model.add(k, e, ghat);
            }
        }
        if (!updated) converged = true;
    }

    if (!converged) {
        // budget exhausted: report the lowest order still in play
        for (int k = 0; k < gamma_order; ++k)
            for (int e = 0; e < eps_order; ++e) {
                const ResidualEntry res = detail::order_residual(v, model, spec, k, e);
                if (!res.is_zero()) {
                    std::ostringstream msg;
                    msg << "construct_iterative: residuals did not vanish within " << budget
                        << " passes; lowest non-vanishing order gamma^" << k << " eps^" << e
                        << " (PDE outside the supported class?)";
                    throw ConstructionError(msg.str(), k, e);
                }
            }
    }

    FieldExpansion field = FieldExpansion::from_parts(v, gamma_order, eps_order);
    return {std::move(field), std::move(model), sweeps};
}

}  // namespace holistic
