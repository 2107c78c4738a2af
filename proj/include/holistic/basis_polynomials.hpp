#pragma once

#include <stdexcept>
#include <utility>

#include "holistic/rational.hpp"
#include "holistic/xi_poly.hpp"

namespace holistic {

/// The unique subgrid basis polynomials
///   p_k(xi) = (1/(2k-1)!) prod_{m=-k+1}^{k-1} (xi - m),   degree 2k-1,
///   q_k(xi) = (xi / 2k) p_k(xi),                          degree 2k,
/// satisfying delta^2 p_k = p_{k-1}, delta^2 q_k = q_{k-1} (with p_0 = 0,
/// q_0 = 1), zeros at the integers in [-k+1, k-1], and the boundary values
/// p_k(+-k) = +-1, q_k(+-k) = 1/2.
inline std::pair<XiPoly, XiPoly> basis_polynomials(int k) {
    if (k < 1) throw std::invalid_argument("basis_polynomials: k must be >= 1");
    XiPoly p(Rational(1));
    for (int m = -k + 1; m <= k - 1; ++m) p = p * XiPoly({Rational(-m), Rational(1)});
    p = p * Rational(BigInt(1), factorial(2 * k - 1));
    const XiPoly q = p * XiPoly::xi() * Rational(1, 2 * k);
    return {p, q};
}

}  // namespace holistic
