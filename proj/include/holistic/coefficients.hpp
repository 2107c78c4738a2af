#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "holistic/model.hpp"
#include "holistic/rational.hpp"
#include "holistic/stencil.hpp"

namespace holistic {

/// One scalar coefficient function of the advection-diffusion models, as an
/// exact even series in z = eps h: nu1 multiplies delta^2/h^2, nu2 multiplies
/// -delta^4/h^2, kappa2 multiplies +(eps/h) mu*delta^3.
struct CoeffSeries {
    std::string name;                 // "nu1", "nu2" or "kappa2"
    std::vector<Rational> coeffs;     // coeffs[m] multiplies z^{2m}
    std::string source;               // which model it was extracted from

    Rational coeff(int m) const {
        return (m >= 0 && m < (int)coeffs.size()) ? coeffs[m] : Rational(0);
    }

    double eval(double z) const {
        const double z2 = z * z;
        double s = 0;
        for (int m = (int)coeffs.size() - 1; m >= 0; --m) s = s * z2 + coeffs[m].to_double();
        return s;
    }

    /// Partial sums of the series at z, one entry per added term.
    std::vector<double> partial_sums(double z) const {
        std::vector<double> out;
        double s = 0, zp = 1;
        const double z2 = z * z;
        for (const auto& c : coeffs) {
            s += c.to_double() * zp;
            zp *= z2;
            out.push_back(s);
        }
        return out;
    }
};

struct ExtractedCoefficients {
    CoeffSeries nu1;
    CoeffSeries nu2;     // empty for the width-3 model
    CoeffSeries kappa2;  // empty for the width-3 model
    bool has_second_order = false;
};

/// Raised when a model does not factor into the canonical advection-diffusion
/// operator set {mu*delta, mu*delta^3, delta^2, delta^4}.
struct ExtractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Factor an advection-diffusion model (at gamma = 1) into
///   -(eps/h)(mu*delta - kappa2 mu*delta^3) + (1/h^2)(nu1 delta^2 - nu2 delta^4)
/// and return the series present. Fails loudly on any residue outside the
/// canonical operator set or any coefficient with the wrong h-scaling.
inline ExtractedCoefficients extract_coefficients(const ModelSeries& model,
                                                  const std::string& source = "") {
    ExtractedCoefficients out;
    out.nu1.name = "nu1";
    out.nu2.name = "nu2";
    out.kappa2.name = "kappa2";
    out.nu1.source = out.nu2.source = out.kappa2.source = source;

    auto fail = [&](int e, const std::string& what) {
        std::ostringstream msg;
        msg << "extract_coefficients: non-canonical residue at eps^" << e << ": " << what;
        throw ExtractionError(msg.str());
    };

    // series slot m (power z^{2m}) for a coefficient found at eps^e; the
    // h-scaling of a z-series term at eps^e is h^{e-2} throughout.
    auto put = [&](CoeffSeries& cs, int m, const Rational& val) {
        if ((int)cs.coeffs.size() <= m) cs.coeffs.resize(m + 1);
        cs.coeffs[m] = val;
    };
    auto monomial_value = [&](const HCoeff& c, int e, const char* opname) -> Rational {
        if (c.is_zero()) return Rational(0);
        if (!c.is_monomial() || *c.monomial_hpower() != e - 2)
            fail(e, std::string(opname) + " coefficient " + c.to_string() +
                        " is not a single h^" + std::to_string(e - 2) + " term");
        return c.coeff(e - 2);
    };

    for (const auto& [e, stencil] : model.at_gamma_one()) {
        if (stencil.min_offset() < -2 || stencil.max_offset() > 2)
            fail(e, "support wider than the delta^4 / mu*delta^3 window: " + stencil.to_string());
        const StencilDecomposition dec = decompose_centred(stencil);
        for (const auto& [m, c] : dec.even) {
            if (c.is_zero()) continue;
            if (m == 0) fail(e, "identity component " + c.to_string());
            if (m > 2) fail(e, "delta^" + std::to_string(2 * m) + " component");
            const Rational val = monomial_value(c, e, m == 1 ? "delta^2" : "delta^4");
            if (val.is_zero()) continue;
            if (e % 2 != 0) fail(e, "even operator at odd eps power");
            if (m == 1) put(out.nu1, e / 2, val);
            else {
                put(out.nu2, e / 2, -val);  // model carries -nu2 delta^4 / h^2
                out.has_second_order = true;
            }
        }
        for (const auto& [m, c] : dec.odd) {
            if (c.is_zero()) continue;
            if (m > 2) fail(e, "mu*delta^" + std::to_string(2 * m - 1) + " component");
            const Rational val = monomial_value(c, e, m == 1 ? "mu*delta" : "mu*delta^3");
            if (val.is_zero()) continue;
            if (e % 2 != 1) fail(e, "odd operator at even eps power");
            if (m == 1) {
                // the advection itself: must be exactly -(eps/h) mu*delta
                if (e != 1 || val != Rational(-1))
                    fail(e, "mu*delta coefficient " + val.to_string() +
                                " (expected the bare advection -eps/h)");
            } else {
                put(out.kappa2, (e - 1) / 2, val);  // +(eps/h) kappa2 mu*delta^3
                out.has_second_order = true;
            }
        }
    }
    return out;
}

/// (z/2) coth(z/2), the closed form of nu1; the removable singularity at
/// z = 0 takes its limit value 1.
inline double nu1_closed_form(double z) {
    if (z == 0.0) return 1.0;
    const double x = z / 2;
    return x * std::cosh(x) / std::sinh(x);
}

}  // namespace holistic
