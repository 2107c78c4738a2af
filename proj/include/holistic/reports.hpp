#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holistic/coefficients.hpp"
#include "holistic/equivalent_pde.hpp"
#include "holistic/model.hpp"
#include "holistic/shanks.hpp"
#include "holistic/simulate.hpp"
#include "holistic/stencil.hpp"

namespace holistic {

/// Fixed float formatting for every CSV cell, so identical runs produce
/// byte-identical files.
inline std::string format_e12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return std::string(buf);
}

/// Operator-name form of a stencil, e.g. "(1/6)*h^-1 mu*delta^3 + (1)*delta^2".
inline std::string stencil_report(const Stencil& s) {
    if (s.is_zero()) return "0";
    const StencilDecomposition dec = decompose_centred(s);
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const HCoeff& c, const std::string& name) {
        if (c.is_zero()) return;
        if (!first) os << " + ";
        os << "(" << c.to_string() << ")";
        if (!name.empty()) os << "*" << name;
        first = false;
    };
    for (const auto& [m, c] : dec.even)
        emit(c, m == 0 ? "" : "delta^" + std::to_string(2 * m));
    for (const auto& [m, c] : dec.odd)
        emit(c, m == 1 ? "mu*delta" : "mu*delta^" + std::to_string(2 * m - 1));
    return os.str();
}

/// Human-readable model report: one line per (gamma, eps) order.
inline void model_report(std::ostream& os, const ModelSeries& m) {
    os << "du_j/dt, truncated to O(gamma^" << m.gamma_order() << ", eps^" << m.eps_order()
       << "):\n";
    if (m.is_zero()) {
        os << "  0\n";
        return;
    }
    for (const auto& [key, s] : m.series().terms()) {
        os << "  gamma^" << key.first << " eps^" << key.second << " : " << stencil_report(s)
           << "\n";
    }
}

/// Equivalent-PDE report: text form and the CSV interface, one row per
/// (derivative order, eps power, h power, coefficient).
inline void equivalent_pde_csv(std::ostream& os, const DiffOpSeries& d) {
    os << "deriv_order,eps_power,h_power,coefficient\n";
    for (const auto& [key, c] : d.terms)
        for (const auto& [hp, val] : c.terms())
            os << key.first << "," << key.second << "," << hp << "," << val.to_string() << "\n";
}

inline void equivalent_pde_text(std::ostream& os, const DiffOpSeries& d) {
    os << "equivalent differential equation, exact to O(h^" << d.max_h_order + 1 << "):\n";
    for (const auto& [key, c] : d.terms) {
        os << "  eps^" << key.second << " d^" << key.first << "u/dx^" << key.first << " : "
           << c.to_string() << "\n";
    }
}

/// Coefficient-function sweep (the Figure-2 curves as numbers): series value,
/// Shanks-accelerated value, closed form where one exists, and the conjectured
/// large-z asymptote.
inline void coefficients_csv(std::ostream& os, const CoeffSeries& cs,
                             const std::vector<double>& zs, int shanks_iterations) {
    os << "z,series_value,shanks_value,closed_form,asymptote\n";
    for (double z : zs) {
        const std::vector<double> sums = cs.partial_sums(z);
        double acc = sums.empty() ? 0.0 : sums.back();
        // each iteration consumes two terms; run as many as the series allows
        const int iters = std::min(shanks_iterations, ((int)sums.size() - 1) / 2);
        if (iters >= 1) acc = shanks(sums, iters).value;
        std::string closed, asym;
        if (cs.name == "nu1") {
            closed = format_e12(nu1_closed_form(z));
            asym = format_e12(z / 2);
        } else if (cs.name == "nu2") {
            asym = format_e12(z / 4 - 0.5);
        } else if (cs.name == "kappa2") {
            asym = format_e12(z == 0 ? 0.0 : 0.5 - 1.0 / z);
        }
        os << format_e12(z) << "," << format_e12(cs.eval(z)) << "," << format_e12(acc) << ","
           << closed << "," << asym << "\n";
    }
}

inline void trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,j,u_j\n";
    for (const auto& g : traj.samples)
        for (std::size_t j = 0; j < g.u.size(); ++j)
            os << format_e12(g.t) << "," << j << "," << format_e12(g.u[j]) << "\n";
}

inline void moments_csv(std::ostream& os, const MomentReport& r) {
    os << "t,mass,mean_x,var_x\n";
    for (const auto& row : r.rows)
        os << format_e12(row.t) << "," << format_e12(row.mass) << "," << format_e12(row.mean_x)
           << "," << format_e12(row.var_x) << "\n";
}

inline void stability_csv(std::ostream& os, const std::vector<std::pair<double, double>>& rows) {
    os << "parameter,max_growth\n";
    for (const auto& [p, g] : rows) os << format_e12(p) << "," << format_e12(g) << "\n";
}

}  // namespace holistic
